#include "williamson/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "williamson/candidates.hpp"
#include "williamson/cnf.hpp"
#include "williamson/diophantine.hpp"
#include "williamson/encoding.hpp"
#include "williamson/equivalence.hpp"
#include "williamson/text_format.hpp"
#include "williamson/williamson_callback.hpp"

namespace williamson {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string config_signature(const RunConfig& c) {
  std::ostringstream out;
  out << "n=" << c.order << " eps=" << c.epsilon << " prune=" << c.prune_automorphisms
      << " product=" << c.product_clauses << " callback=" << c.callback << " mod4=" << c.mod4_filter
      << " dedupe=" << c.instance_dedupe;
  return out.str();
}

std::string encode_solutions(const std::vector<Quadruple>& solutions) {
  std::string out;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (i > 0) out += ',';
    for (std::size_t r = 0; r < 4; ++r) {
      if (r > 0) out += ':';
      out += to_text(solutions[i][r]);
    }
  }
  return out;
}

std::vector<Quadruple> decode_solutions(const std::string& text) {
  std::vector<Quadruple> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::array<SymmetricSequence, 4> members;
    std::istringstream parts(item);
    std::string part;
    std::size_t r = 0;
    while (std::getline(parts, part, ':')) {
      if (r >= 4) throw std::invalid_argument("too many members");
      members[r++] = parse_sequence(part);
    }
    if (r != 4) throw std::invalid_argument("too few members");
    out.emplace_back(members);
  }
  return out;
}

std::string journal_line(const InstanceResult& r) {
  std::ostringstream out;
  out << "done\t" << r.index << '\t' << r.decomposition << '\t' << r.stats.decisions << '\t' << r.stats.conflicts
      << '\t' << r.stats.propagations << '\t' << r.stats.callback_clauses << '\t' << r.stats.solutions << '\t'
      << r.seconds << '\t' << encode_solutions(r.solutions) << '\n';
  return out.str();
}

std::optional<InstanceResult> parse_journal_line(const std::string& line) {
  std::istringstream in(line);
  std::string tag;
  InstanceResult r;
  if (!(in >> tag) || tag != "done") return std::nullopt;
  if (!(in >> r.index >> r.decomposition >> r.stats.decisions >> r.stats.conflicts >> r.stats.propagations >>
        r.stats.callback_clauses >> r.stats.solutions >> r.seconds)) {
    return std::nullopt;
  }
  std::string rest;
  in >> rest;
  try {
    r.solutions = decode_solutions(rest);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (r.solutions.size() != r.stats.solutions && r.stats.solutions != 0) return std::nullopt;
  return r;
}

// Completed instances from a journal written under the same configuration.
std::map<std::size_t, InstanceResult> load_journal(const fs::path& path, const std::string& signature) {
  std::map<std::size_t, InstanceResult> done;
  std::ifstream in(path);
  std::string line;
  if (!in || !std::getline(in, line) || line != "# " + signature) return done;
  while (std::getline(in, line)) {
    if (auto r = parse_journal_line(line)) done[r->index] = std::move(*r);
  }
  return done;
}

void accumulate(SolverStats& total, const SolverStats& s) {
  total.decisions += s.decisions;
  total.propagations += s.propagations;
  total.conflicts += s.conflicts;
  total.restarts += s.restarts;
  total.callback_calls += s.callback_calls;
  total.callback_clauses += s.callback_clauses;
  total.solutions += s.solutions;
}

void write_outputs(const fs::path& dir, const RunReport& report) {
  {
    std::ofstream out(dir / "solutions.txt");
    for (const auto& q : report.solutions) write_tuple(out, q);
  }
  {
    std::ofstream out(dir / "canonical.txt");
    for (const auto& q : report.canonical) write_tuple(out, q);
  }
  {
    std::ofstream out(dir / "summary.tsv");
    out << "n\ttime_s\tinstances\tsolutions\tinequivalent\n";
    out << report.order << '\t' << report.seconds << '\t' << report.instances << '\t' << report.solutions.size()
        << '\t' << report.canonical.size() << '\n';
  }
  {
    std::ofstream out(dir / "duplicates.tsv");
    out << "matched\trepresentative_instance\n";
    for (const auto& [matched, rep] : report.discarded) out << matched << '\t' << rep << '\n';
  }
  {
    std::ofstream out(dir / "instance_stats.tsv");
    out << "instance\tdecomposition\tdecisions\tconflicts\tcallback_clauses\tsolutions\ttime_s\n";
    for (const auto& r : report.per_instance) {
      out << r.index << '\t' << r.decomposition << '\t' << r.stats.decisions << '\t' << r.stats.conflicts << '\t'
          << r.stats.callback_clauses << '\t' << r.stats.solutions << '\t' << r.seconds << '\n';
    }
  }
}

}  // namespace

InstanceResult solve_instance(const InstanceSpec& inst, const RunConfig& config, const fs::path& cnf_dir,
                              std::vector<Quadruple>* raw_models) {
  const auto start = Clock::now();
  const int n = config.order;
  SatInstance sat = encode_uncompression(inst.compression, n);
  if (n % 2 != 0 && config.product_clauses) {
    for (auto& clause : encode_product_theorem(n)) sat.formula.clauses.push_back(std::move(clause));
  }
  if (!cnf_dir.empty()) {
    std::ofstream(cnf_dir / ("instance-" + std::to_string(inst.index) + ".cnf")) << export_dimacs(sat.formula);
  }
  InstanceResult result{inst.index, inst.decomposition, {}, {}, 0.0};
  std::optional<WilliamsonCallback> callback;
  if (config.callback) callback.emplace(n, config.epsilon);
  const auto models = solve_all(sat.formula, callback ? &*callback : nullptr, &result.stats);
  for (const auto& model : models) {
    Quadruple q = decode_model(model, n);
    if (raw_models != nullptr) raw_models->push_back(q);
    if (verify_williamson(q)) result.solutions.push_back(std::move(q));
  }
  std::sort(result.solutions.begin(), result.solutions.end());
  result.stats.solutions = result.solutions.size();
  result.seconds = seconds_since(start);
  return result;
}

int compression_factor(int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (n % 2 == 0) return 2;
  if (n % 3 == 0) return 3;
  throw std::invalid_argument("order " + std::to_string(n) + " is not divisible by 2 or 3");
}

Quadruple decode_model(const Model& model, int order) {
  const VariableMap map(order);
  if (model.size() < static_cast<std::size_t>(map.variable_count())) {
    throw std::invalid_argument("model too short for order " + std::to_string(order));
  }
  std::array<SymmetricSequence, 4> members;
  for (std::size_t r = 0; r < 4; ++r) {
    std::vector<Sign> free(static_cast<std::size_t>(map.free_count()));
    for (int i = 0; i < map.free_count(); ++i) {
      free[static_cast<std::size_t>(i)] = model[static_cast<std::size_t>(map.variable(static_cast<Role>(r), i))] ? 1 : -1;
    }
    members[r] = SymmetricSequence(order, std::move(free));
  }
  return Quadruple(members);
}

int worker_count_from_env(int fallback) {
  if (const char* value = std::getenv("WILLIAMSON_WORKERS")) {
    try {
      const int w = std::stoi(value);
      if (w > 0) return w;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

InstanceSet build_instances(const RunConfig& config, const fs::path& spill_dir) {
  const int n = config.order;
  const int m = compression_factor(n);
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int workers = std::max(config.workers, 1);
  InstanceSet out;
  const auto decompositions = decompose_four_squares(n);
  CandidateOptions cand_opts{config.epsilon, config.prune_automorphisms, workers};
  const CandidatePool pool = generate_candidates(n, decompositions, cand_opts);
  out.candidates_examined = pool.examined;
  std::map<std::array<CompressedSequence, 4>, std::size_t> seen_keys;
  for (std::size_t di = 0; di < decompositions.size(); ++di) {
    const CompressionLists lists = build_compression_lists(pool, decompositions[di], m);
    MatchOptions match_opts{config.epsilon, config.mod4_filter, config.memory_budget_records, spill_dir, workers};
    for (auto& mc : match_compressions(lists, n, match_opts)) {
      const std::uint64_t ordinal = out.matched++;
      if (config.instance_dedupe) {
        const auto [it, inserted] = seen_keys.try_emplace(canonical_compression(mc), out.instances.size());
        if (!inserted) {
          ++out.duplicates;
          out.discarded.emplace_back(ordinal, it->second);
          continue;
        }
      }
      out.instances.push_back({out.instances.size(), di, std::move(mc)});
    }
  }
  return out;
}

RunReport cmd_enumerate(const RunConfig& config) {
  const auto start = Clock::now();
  const int n = config.order;
  compression_factor(n);
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int workers = std::max(config.workers, 1);
  auto log = [&](const std::string& msg) {
    if (config.log != nullptr) *config.log << "[n=" << n << "] " << msg << std::endl;
  };

  RunReport report;
  report.order = n;

  fs::path cnf_dir;
  fs::path spill_dir;
  if (!config.output_dir.empty()) {
    fs::create_directories(config.output_dir);
    if (config.dump_cnf) {
      cnf_dir = config.output_dir / "instances";
      fs::create_directories(cnf_dir);
    }
    spill_dir = config.output_dir / "spill";
    fs::create_directories(spill_dir);
  }

  const InstanceSet built = build_instances(config, spill_dir);
  const std::vector<InstanceSpec>& instances = built.instances;
  report.candidates_examined = built.candidates_examined;
  report.matched = built.matched;
  report.duplicate_instances = built.duplicates;
  report.discarded = built.discarded;
  log(std::to_string(report.matched) + " matched compressions, " + std::to_string(instances.size()) +
      " instances, " + std::to_string(report.duplicate_instances) + " equivalent duplicates skipped");

  const std::string signature = config_signature(config);
  std::map<std::size_t, InstanceResult> done;
  std::ofstream journal;
  std::mutex sink_mutex;
  if (!config.output_dir.empty()) {
    const fs::path journal_path = config.output_dir / "journal.tsv";
    done = load_journal(journal_path, signature);
    report.resumed_instances = done.size();
    if (!done.empty()) log("resuming with " + std::to_string(done.size()) + " finished instances");
    // Rewrite so a torn trailing line from an interrupted run is dropped.
    journal.open(journal_path, std::ios::trunc);
    journal << "# " << signature << '\n';
    for (const auto& [index, r] : done) journal << journal_line(r);
    journal.flush();
  }

  std::vector<const InstanceSpec*> pending;
  for (const auto& inst : instances) {
    if (!done.contains(inst.index)) pending.push_back(&inst);
  }
  const std::size_t budget = config.instance_budget == 0 ? pending.size() : config.instance_budget;
  const std::size_t to_run = std::min(budget, pending.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= to_run) return;
      try {
        InstanceResult r = solve_instance(*pending[i], config, cnf_dir);
        std::lock_guard lock(sink_mutex);
        if (journal.is_open()) {
          journal << journal_line(r);
          journal.flush();
        }
        done[r.index] = std::move(r);
      } catch (...) {
        std::lock_guard lock(sink_mutex);
        if (!failure) failure = std::current_exception();
        next.store(to_run);
      }
    }
  };
  {
    std::vector<std::jthread> pool_threads;
    for (int w = 1; w < workers; ++w) pool_threads.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  if (to_run < pending.size()) {
    throw BudgetExhausted("instance budget exhausted after " + std::to_string(to_run) + " instances; " +
                          std::to_string(pending.size() - to_run) + " remain (re-run to resume)");
  }

  std::set<Quadruple> all;
  for (auto& [index, r] : done) {
    accumulate(report.totals, r.stats);
    all.insert(r.solutions.begin(), r.solutions.end());
    report.per_instance.push_back(r);
  }
  report.instances = instances.size();
  report.solutions.assign(all.begin(), all.end());
  std::set<Quadruple> classes;
  for (const auto& q : report.solutions) classes.insert(canonical_form(q));
  report.canonical.assign(classes.begin(), classes.end());
  report.seconds = seconds_since(start);
  log(std::to_string(report.solutions.size()) + " solutions, " + std::to_string(report.canonical.size()) +
      " inequivalent");
  if (!config.output_dir.empty()) {
    write_outputs(config.output_dir, report);
    fs::remove_all(spill_dir);
  }
  return report;
}

}  // namespace williamson
