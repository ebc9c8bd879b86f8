#include "williamson/matching.hpp"

#include <algorithm>
#include <thread>

#include "williamson/key_runs.hpp"

namespace williamson {
namespace {

struct Prepared {
  std::vector<Eigen::VectorXi> paf;
  std::vector<Eigen::VectorXd> psd;
};

Prepared prepare(const std::vector<CompressionEntry>& list, const SymmetricSpectrum& spectrum) {
  Prepared out;
  for (const auto& entry : list) {
    out.paf.push_back(paf(entry.sequence));
    // Compressions of symmetric sequences are symmetric; bins 0..d/2 suffice.
    const auto& e = entry.sequence.entries;
    out.psd.push_back(spectrum(e.head(spectrum.free_count())));
  }
  return out;
}

// Fills `runs` with the pair keys of left x right. `complement` selects the
// CD form [4n, 0, ..., 0] - (PAF_C' + PAF_D').
void build_pair_keys(const Prepared& left, const Prepared& right, int n, double bound, bool complement,
                     int workers, KeyRuns& runs, const MatchOptions& options) {
  const int d = runs.key_length();
  const std::size_t rows = left.paf.size();
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(rows, 1))));
  std::vector<std::unique_ptr<KeyRuns>> parts;
  for (int w = 0; w < workers; ++w) {
    parts.push_back(std::make_unique<KeyRuns>(d, std::max<std::size_t>(options.memory_budget_records / workers, 1),
                                              options.spill_dir));
  }
  {
    std::vector<std::jthread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        KeyRuns& out = *parts[static_cast<std::size_t>(w)];
        std::vector<std::int32_t> key(static_cast<std::size_t>(d));
        for (std::size_t i = static_cast<std::size_t>(w); i < rows; i += static_cast<std::size_t>(workers)) {
          for (std::size_t j = 0; j < right.paf.size(); ++j) {
            if (((left.psd[i] + right.psd[j]).array() > bound).any()) continue;
            for (int s = 0; s < d; ++s) {
              const int sum = left.paf[i](s) + right.paf[j](s);
              key[static_cast<std::size_t>(s)] = complement ? (s == 0 ? 4 * n : 0) - sum : sum;
            }
            out.add(key, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
          }
        }
        out.seal();
      });
    }
  }
  for (auto& part : parts) runs.absorb(*part);
}

}  // namespace

bool sum_is_zero_mod4(const MatchedCompression& mc) {
  Eigen::VectorXi total = mc.members[0].entries;
  for (std::size_t i = 1; i < 4; ++i) total += mc.members[i].entries;
  return total.unaryExpr([](int v) { return v % 4; }).isZero();
}

std::vector<MatchedCompression> match_compressions(const CompressionLists& lists, int n, const MatchOptions& options,
                                                   MatchStats* stats) {
  std::vector<MatchedCompression> out;
  for (const auto& list : lists.lists) {
    if (list.empty()) return out;
  }
  const int d = lists.lists[0].front().sequence.length();
  const SymmetricSpectrum spectrum(d);
  std::array<Prepared, 4> prepared;
  for (std::size_t r = 0; r < 4; ++r) prepared[r] = prepare(lists.lists[r], spectrum);

  // The pairwise bound is inclusive: equality is reachable when the other
  // pair's spectrum vanishes at that bin.
  const double bound = 4.0 * n + options.epsilon;
  KeyRuns ab(d, options.memory_budget_records, options.spill_dir);
  KeyRuns cd(d, options.memory_budget_records, options.spill_dir);
  build_pair_keys(prepared[0], prepared[1], n, bound, false, options.workers, ab, options);
  build_pair_keys(prepared[2], prepared[3], n, bound, true, options.workers, cd, options);

  MatchStats local;
  local.ab_keys = ab.record_count();
  local.cd_keys = cd.record_count();
  local.spilled_runs = ab.spilled_runs() + cd.spilled_runs();

  const bool check_mod4 = options.mod4_filter && n % 2 == 0;
  KeyStream left(ab);
  KeyStream right(cd);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> left_group;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> right_group;
  std::vector<std::int32_t> group_key(static_cast<std::size_t>(d));
  while (!left.done() && !right.done()) {
    const int cmp = compare_keys(left.current(), right.current(), d);
    if (cmp < 0) {
      left.advance();
      continue;
    }
    if (cmp > 0) {
      right.advance();
      continue;
    }
    auto key = left.current().first(static_cast<std::size_t>(d));
    std::copy(key.begin(), key.end(), group_key.begin());
    left_group.clear();
    right_group.clear();
    while (!left.done() && compare_keys(left.current(), group_key, d) == 0) {
      auto rec = left.current();
      left_group.emplace_back(static_cast<std::uint32_t>(rec[d]), static_cast<std::uint32_t>(rec[d + 1]));
      left.advance();
    }
    while (!right.done() && compare_keys(right.current(), group_key, d) == 0) {
      auto rec = right.current();
      right_group.emplace_back(static_cast<std::uint32_t>(rec[d]), static_cast<std::uint32_t>(rec[d + 1]));
      right.advance();
    }
    for (const auto& [ia, ib] : left_group) {
      for (const auto& [ic, id] : right_group) {
        ++local.joined;
        MatchedCompression mc;
        mc.order = n;
        mc.entries = {ia, ib, ic, id};
        for (std::size_t r = 0; r < 4; ++r) mc.members[r] = lists.lists[r][mc.entries[r]].sequence;
        if (check_mod4 && !sum_is_zero_mod4(mc)) {
          ++local.mod4_rejected;
          continue;
        }
        out.push_back(std::move(mc));
      }
    }
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace williamson
