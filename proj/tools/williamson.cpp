#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "williamson/cnf.hpp"
#include "williamson/constructions.hpp"
#include "williamson/diophantine.hpp"
#include "williamson/driver.hpp"
#include "williamson/equivalence.hpp"
#include "williamson/oracle.hpp"
#include "williamson/seqcore.hpp"
#include "williamson/solver.hpp"
#include "williamson/text_format.hpp"

using namespace williamson;

namespace {

std::vector<TextBlock> load_blocks(const std::string& path) {
  if (path == "-") return read_blocks(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_blocks(in);
}

std::vector<Quadruple> load_quadruples(const std::string& path) {
  std::vector<Quadruple> out;
  for (const auto& block : load_blocks(path)) out.push_back(to_tuple<4>(block));
  return out;
}

std::string read_all(const std::string& path) {
  std::ostringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    text << in.rdbuf();
  }
  return text.str();
}

int default_workers() {
  return worker_count_from_env(static_cast<int>(std::max(1U, std::thread::hardware_concurrency())));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate and check Williamson sequences"};
  app.require_subcommand(1);

  RunConfig config;
  config.workers = default_workers();
  std::string output_dir;
  bool no_prune = false, no_product = false, no_callback = false, no_mod4 = false, no_dedupe = false, quiet = false;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate Williamson sequences of one order");
  enumerate->add_option("-n,--order", config.order, "Order n (divisible by 2 or 3)")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--epsilon", config.epsilon, "Slack on the 4n spectral bound")->check(CLI::PositiveNumber);
  enumerate->add_option("-j,--workers", config.workers, "Worker threads (default: WILLIAMSON_WORKERS or cores)")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("-o,--output", output_dir, "Run directory for results and the resume journal");
  enumerate->add_option("--memory-budget", config.memory_budget_records, "Matcher key records held in memory");
  enumerate->add_option("--instance-budget", config.instance_budget, "Stop after this many instances (resumable)");
  enumerate->add_flag("--dump-cnf", config.dump_cnf, "Write instances/*.cnf under the run directory");
  enumerate->add_flag("--no-prune", no_prune, "Keep every A candidate instead of one per automorphism orbit");
  enumerate->add_flag("--no-product", no_product, "Omit product clauses for odd orders");
  enumerate->add_flag("--no-callback", no_callback, "Solve without the spectral callback, then filter");
  enumerate->add_flag("--no-mod4", no_mod4, "Skip the mod-4 filter on matched compressions");
  enumerate->add_flag("--no-dedupe", no_dedupe, "Solve equivalent instances separately");
  enumerate->add_flag("-q,--quiet", quiet, "No progress output");

  std::string file;
  auto* verify = app.add_subcommand("verify", "Check each quadruple block of a file");
  verify->add_option("file", file, "Quadruple text file ('-' for stdin)")->required();

  auto* stats = app.add_subcommand("stats", "Rowsums and spectral data of each quadruple block");
  stats->add_option("file", file)->required();

  int order = 0;
  auto* decompose = app.add_subcommand("decompose", "Rowsum decompositions of 4n");
  decompose->add_option("n", order)->required()->check(CLI::PositiveNumber);

  auto* canonicalize = app.add_subcommand("canonicalize", "Canonical representatives of each class, deduplicated");
  canonicalize->add_option("file", file)->required();

  bool classes_only = false;
  int oracle_workers = default_workers();
  auto* oracle = app.add_subcommand("oracle", "Brute-force enumeration for n <= 12");
  oracle->add_option("-n,--order", order)->required()->check(CLI::PositiveNumber);
  oracle->add_option("-j,--workers", oracle_workers)->check(CLI::PositiveNumber);
  oracle->add_flag("--classes", classes_only, "Print canonical forms instead of every quadruple");

  auto* doubling = app.add_subcommand("double", "Williamson sequences of order 2n from odd order n");
  doubling->add_option("file", file)->required();

  auto* extract8 = app.add_subcommand("extract8", "8-Williamson octuples from quadruples of order 2 mod 4");
  extract8->add_option("file", file)->required();

  auto* hadamard = app.add_subcommand("hadamard", "Hadamard matrix of order 4n from the first block");
  hadamard->add_option("file", file)->required();

  auto* solve = app.add_subcommand("solve", "All models of a DIMACS CNF file");
  solve->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) {
      config.output_dir = output_dir;
      config.prune_automorphisms = !no_prune;
      config.product_clauses = !no_product;
      config.callback = !no_callback;
      config.mod4_filter = !no_mod4;
      config.instance_dedupe = !no_dedupe;
      if (!quiet) config.log = &std::cerr;
      const RunReport r = cmd_enumerate(config);
      std::cout << "n\ttime_s\tinstances\tsolutions\tinequivalent\n"
                << r.order << '\t' << r.seconds << '\t' << r.instances << '\t' << r.solutions.size() << '\t'
                << r.canonical.size() << '\n';
      return 0;
    }
    if (*verify) {
      bool all = true;
      for (const auto& block : load_blocks(file)) {
        const bool ok = verify_williamson(to_tuple<4>(block));
        all = all && ok;
        std::cout << "line " << block.first_line << ": order " << block.sequences[0].order() << ' '
                  << (ok ? "williamson" : "not williamson") << '\n';
      }
      return all ? 0 : 1;
    }
    if (*stats) {
      for (const auto& block : load_blocks(file)) {
        const Quadruple q = to_tuple<4>(block);
        Eigen::VectorXi total = Eigen::VectorXi::Zero(q.order());
        Eigen::VectorXd spectrum = Eigen::VectorXd::Zero(q.order());
        std::cout << "line " << block.first_line << ": order " << q.order() << " rowsums";
        for (const auto& m : q.members()) {
          std::cout << ' ' << rowsum(m);
          total += paf(m);
          spectrum += psd(m);
        }
        std::cout << " paf_sum";
        for (Eigen::Index s = 0; s < total.size(); ++s) std::cout << ' ' << total(s);
        std::cout << " psd_max " << spectrum.maxCoeff() << '\n';
      }
      return 0;
    }
    if (*decompose) {
      for (const auto& d : decompose_four_squares(order)) {
        std::cout << d[0] << ' ' << d[1] << ' ' << d[2] << ' ' << d[3] << '\n';
      }
      return 0;
    }
    if (*canonicalize) {
      for (const auto& q : dedupe(load_quadruples(file))) write_tuple(std::cout, q);
      return 0;
    }
    if (*oracle) {
      const auto all = brute_force_enumerate(order, oracle_workers);
      if (classes_only) {
        const auto classes = dedupe(all);
        std::cerr << classes.size() << " classes\n";
        for (const auto& q : classes) write_tuple(std::cout, q);
      } else {
        std::cerr << all.size() << " quadruples\n";
        for (const auto& q : all) write_tuple(std::cout, q);
      }
      return 0;
    }
    if (*doubling) {
      for (const auto& q : load_quadruples(file)) write_tuple(std::cout, double_order(q));
      return 0;
    }
    if (*extract8) {
      for (const auto& q : load_quadruples(file)) {
        const Octuple o = extract_eight_williamson(q);
        if (!verify_eight_williamson(o)) throw std::invalid_argument("extracted octuple fails the PAF identity");
        write_tuple(std::cout, o);
      }
      return 0;
    }
    if (*hadamard) {
      const auto quadruples = load_quadruples(file);
      if (quadruples.empty()) throw std::invalid_argument("no quadruple in input");
      const Eigen::MatrixXi h = assemble_hadamard(quadruples.front());
      if (!is_hadamard(h)) throw std::logic_error("assembled matrix is not Hadamard");
      for (Eigen::Index i = 0; i < h.rows(); ++i) std::cout << to_text(Eigen::VectorXi(h.row(i).transpose())) << '\n';
      return 0;
    }
    if (*solve) {
      const CnfFormula formula = parse_dimacs(read_all(file));
      SolverStats s;
      const auto models = solve_all(formula, nullptr, &s);
      std::cout << "s " << models.size() << " solutions\n";
      for (const auto& model : models) {
        std::cout << 'v';
        for (std::size_t v = 0; v < model.size(); ++v) std::cout << ' ' << (model[v] ? "" : "-") << v + 1;
        std::cout << " 0\n";
      }
      std::cerr << "decisions " << s.decisions << " conflicts " << s.conflicts << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
