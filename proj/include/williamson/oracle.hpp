#pragma once

#include <vector>

#include "williamson/matching.hpp"
#include "williamson/sequence.hpp"

namespace williamson {

inline constexpr int kOracleMaxOrder = 12;

/// Every symmetric ±1 quadruple of order n satisfying the Williamson PAF
/// condition, sorted; no equivalence reduction. Throws for n > 12.
std::vector<Quadruple> brute_force_enumerate(int n, int workers = 1);

/// Every Williamson quadruple of order n whose members compress to the
/// members of mc, sorted. Throws for n > 12.
std::vector<Quadruple> brute_force_uncompress(const MatchedCompression& mc, int n);

}  // namespace williamson
