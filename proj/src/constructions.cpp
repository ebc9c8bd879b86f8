#include "williamson/constructions.hpp"

#include <stdexcept>

#include "williamson/seqcore.hpp"

namespace williamson {

Eigen::VectorXi interleave(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  if (a.size() != b.size()) throw std::invalid_argument("interleaved sequences must have equal length");
  Eigen::VectorXi out(2 * a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out(2 * i) = a(i);
    out(2 * i + 1) = b(i);
  }
  return out;
}

std::pair<Eigen::VectorXi, Eigen::VectorXi> deinterleave(const Eigen::VectorXi& x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("de-interleaving needs even length");
  const Eigen::Index half = x.size() / 2;
  Eigen::VectorXi even(half);
  Eigen::VectorXi odd(half);
  for (Eigen::Index i = 0; i < half; ++i) {
    even(i) = x(2 * i);
    odd(i) = x(2 * i + 1);
  }
  return {even, odd};
}

Eigen::VectorXi shift_half(const Eigen::VectorXi& a) {
  const Eigen::Index n = a.size();
  if (n % 2 == 0) throw std::invalid_argument("shift_half requires odd order");
  Eigen::VectorXi out(n);
  for (Eigen::Index j = 0; j < n; ++j) out(j) = a((j + (n + 1) / 2) % n);
  return out;
}

Eigen::VectorXi unshift_half(const Eigen::VectorXi& a) {
  const Eigen::Index n = a.size();
  if (n % 2 == 0) throw std::invalid_argument("shift_half requires odd order");
  Eigen::VectorXi out(n);
  for (Eigen::Index j = 0; j < n; ++j) out((j + (n + 1) / 2) % n) = a(j);
  return out;
}

Quadruple double_order(const Quadruple& q) {
  if (q.order() % 2 == 0) throw std::invalid_argument("doubling requires odd order");
  if (!verify_williamson(q)) throw std::invalid_argument("doubling requires a Williamson quadruple");
  const Eigen::VectorXi a = q.a().expand();
  const Eigen::VectorXi c = q.c().expand();
  const Eigen::VectorXi b = shift_half(q.b().expand());
  const Eigen::VectorXi d = shift_half(q.d().expand());
  return Quadruple(SymmetricSequence::from_entries(interleave(a, b)),
                   SymmetricSequence::from_entries(interleave(-a, b)),
                   SymmetricSequence::from_entries(interleave(c, d)),
                   SymmetricSequence::from_entries(interleave(-c, d)));
}

Octuple extract_eight_williamson(const Quadruple& q) {
  if (q.order() % 4 != 2) throw std::invalid_argument("extraction requires order 2 mod 4");
  std::array<SymmetricSequence, 8> out;
  for (std::size_t r = 0; r < 4; ++r) {
    auto [first, second] = deinterleave(q[r].expand());
    out[2 * r] = SymmetricSequence::from_entries(first);
    out[2 * r + 1] = SymmetricSequence::from_entries(unshift_half(second));
  }
  return Octuple(out);
}

bool verify_eight_williamson(const Octuple& o) { return paf_sum_vanishes(o, o.order() - 1); }

Eigen::MatrixXi circulant(const Eigen::VectorXi& first_row) {
  const Eigen::Index n = first_row.size();
  Eigen::MatrixXi out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = first_row(((j - i) % n + n) % n);
  }
  return out;
}

Eigen::MatrixXi assemble_hadamard(const Quadruple& q) {
  if (!verify_williamson(q)) throw std::invalid_argument("Hadamard assembly requires a Williamson quadruple");
  const Eigen::Index n = q.order();
  const Eigen::MatrixXi a = circulant(q.a().expand());
  const Eigen::MatrixXi b = circulant(q.b().expand());
  const Eigen::MatrixXi c = circulant(q.c().expand());
  const Eigen::MatrixXi d = circulant(q.d().expand());
  Eigen::MatrixXi h(4 * n, 4 * n);
  h << a, b, c, d,
      -b, a, -d, c,
      -c, d, a, -b,
      -d, -c, b, a;
  return h;
}

bool is_hadamard(const Eigen::MatrixXi& h) {
  if (h.rows() != h.cols()) return false;
  if (!(h.array().abs() == 1).all()) return false;
  const Eigen::MatrixXi gram = h * h.transpose();
  return gram == static_cast<int>(h.rows()) * Eigen::MatrixXi::Identity(h.rows(), h.cols());
}

}  // namespace williamson
