#pragma once

#include <Eigen/Dense>

#include "williamson/sequence.hpp"

namespace williamson {

/// [a0, b0, a1, b1, ...]; a and b must have equal length.
Eigen::VectorXi interleave(const Eigen::VectorXi& a, const Eigen::VectorXi& b);
/// Even-index and odd-index entries.
std::pair<Eigen::VectorXi, Eigen::VectorXi> deinterleave(const Eigen::VectorXi& x);

/// Odd-order cyclic shift out[j] = a[(j + (n+1)/2) mod n]; keeps symmetric
/// sequences symmetric.
Eigen::VectorXi shift_half(const Eigen::VectorXi& a);
/// Inverse of shift_half.
Eigen::VectorXi unshift_half(const Eigen::VectorXi& a);

/// (A ⋈ B', -A ⋈ B', C ⋈ D', -C ⋈ D') with B' = shift_half(B),
/// D' = shift_half(D): a Williamson quadruple of order 2n from one of odd order n.
Quadruple double_order(const Quadruple& q);

/// Splits each member X of an order-2n quadruple (n odd) as X = X1 ⋈ X2'
/// and returns (A1, A2, B1, B2, C1, C2, D1, D2) with X2 = unshift_half(X2').
Octuple extract_eight_williamson(const Quadruple& q);

/// PAF sum of all eight members vanishes at every nonzero shift.
bool verify_eight_williamson(const Octuple& o);

/// entry(i, j) = first_row[(j - i) mod n].
Eigen::MatrixXi circulant(const Eigen::VectorXi& first_row);

/// The 4n x 4n block matrix
///   [ A  B  C  D]
///   [-B  A -D  C]
///   [-C  D  A -B]
///   [-D -C  B  A]
/// of circulants; throws unless q is Williamson.
Eigen::MatrixXi assemble_hadamard(const Quadruple& q);

/// ±1 entries and H * H^T = dim * I, in exact integers.
bool is_hadamard(const Eigen::MatrixXi& h);

}  // namespace williamson
