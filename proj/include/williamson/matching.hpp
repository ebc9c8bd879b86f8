#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "williamson/candidates.hpp"

namespace williamson {

/// A candidate m-compression (A', B', C', D') of a Williamson quadruple.
struct MatchedCompression {
  int order = 0;
  std::array<CompressedSequence, 4> members;
  /// Position of each member in its CompressionLists list.
  std::array<std::uint32_t, 4> entries{};

  int factor() const noexcept { return members[0].factor; }
};

struct MatchOptions {
  double epsilon = kDefaultEpsilon;
  /// Even orders: drop matches whose member sum is not 0 mod 4.
  bool mod4_filter = true;
  /// In-memory records per key list before a run is sorted (and spilled).
  std::size_t memory_budget_records = std::size_t{1} << 22;
  /// Empty keeps every run in memory.
  std::filesystem::path spill_dir;
  int workers = 1;
};

struct MatchStats {
  std::uint64_t ab_keys = 0;
  std::uint64_t cd_keys = 0;
  std::uint64_t spilled_runs = 0;
  std::uint64_t joined = 0;
  std::uint64_t mod4_rejected = 0;
};

/// Pairs (A', B') with (C', D') whose PAF sums complement to [4n, 0, ..., 0],
/// via sorted key lists and a linear merge scan.
std::vector<MatchedCompression> match_compressions(const CompressionLists& lists, int n,
                                                   const MatchOptions& options = {}, MatchStats* stats = nullptr);

/// (A' + B' + C' + D')[j] ≡ 0 (mod 4) for every j.
bool sum_is_zero_mod4(const MatchedCompression& mc);

}  // namespace williamson
