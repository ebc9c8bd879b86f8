#pragma once

#include <array>
#include <vector>

#include "williamson/cnf.hpp"
#include "williamson/matching.hpp"

namespace williamson {

struct SatInstance {
  int order = 0;
  CnfFormula formula;
  VariableMap map;
};

/// Clauses whose models are exactly the symmetric ±1 quadruples that
/// compress to `mc` (m = 2 for even n, m = 3 for odd n).
SatInstance encode_uncompression(const MatchedCompression& mc, int n);

/// For odd n with x_0 = +1 in every member: a_k b_k c_k d_k = -1 for
/// k = 1..(n-1)/2, as eight width-4 clauses per k.
std::vector<Clause> encode_product_theorem(int n);

/// Representative of mc under the operations that act on compressed
/// quadruples and map uncompression solution sets onto each other: member
/// reordering, index automorphisms (k mod d), and, for even n, negation of
/// individual members. Instances with equal keys have equivalent solutions.
std::array<CompressedSequence, 4> canonical_compression(const MatchedCompression& mc);

}  // namespace williamson
