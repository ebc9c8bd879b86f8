#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

#include "williamson/sequence.hpp"

namespace williamson {

/// Default slack on the `> 4n` spectral bound, above DFT rounding error.
inline constexpr double kDefaultEpsilon = 1e-2;

template <typename Derived>
using IntegerVector = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;

/// Periodic autocorrelation: out[s] = sum_k x[k] * x[(k + s) mod n].
template <typename Derived>
IntegerVector<Derived> paf(const Eigen::MatrixBase<Derived>& x) {
  const Eigen::Index n = x.size();
  if (n == 0) throw std::invalid_argument("paf of an empty sequence");
  IntegerVector<Derived> out(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    typename Derived::Scalar acc = 0;
    for (Eigen::Index k = 0; k < n; ++k) acc += x(k) * x((k + s) % n);
    out(s) = acc;
  }
  return out;
}

/// Power spectral density |sum_k x[k] e^{2 pi i k s / n}|^2, by direct DFT.
template <typename Derived>
Eigen::VectorXd psd(const Eigen::MatrixBase<Derived>& x) {
  const Eigen::Index n = x.size();
  if (n == 0) throw std::invalid_argument("psd of an empty sequence");
  Eigen::VectorXd out(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      // Reduce k*s first so the angle stays in [0, 2 pi).
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * s) % n) / static_cast<double>(n);
      acc += static_cast<double>(x(k)) * std::polar(1.0, angle);
    }
    out(s) = std::norm(acc);
  }
  return out;
}

/// Sums entries whose indices agree mod d; the result has factor m = n / d.
template <typename Derived>
CompressedSequence compress(const Eigen::MatrixBase<Derived>& x, int d) {
  const int n = static_cast<int>(x.size());
  if (d < 1 || n % d != 0) throw std::invalid_argument("compression length must divide the order");
  CompressedSequence out{Eigen::VectorXi::Zero(d), n / d};
  for (int i = 0; i < n; ++i) out.entries(i % d) += static_cast<int>(x(i));
  return out;
}

Eigen::VectorXi paf(const SymmetricSequence& seq);
Eigen::VectorXi paf(const CompressedSequence& seq);
Eigen::VectorXd psd(const SymmetricSequence& seq);
Eigen::VectorXd psd(const CompressedSequence& seq);
CompressedSequence compress(const SymmetricSequence& seq, int d);

int rowsum(const SymmetricSequence& seq);
int rowsum(const CompressedSequence& seq);

/// Exact check that the PAFs of all members sum to zero at shifts 1..last_shift.
template <std::size_t N>
bool paf_sum_vanishes(const SequenceTuple<N>& tuple, int last_shift) {
  Eigen::VectorXi total = Eigen::VectorXi::Zero(tuple.order());
  for (const auto& m : tuple.members()) total += paf(m);
  for (int s = 1; s <= last_shift; ++s) {
    if (total(s) != 0) return false;
  }
  return true;
}

/// PAF_A + PAF_B + PAF_C + PAF_D vanishes at s = 1..n/2, in integers.
bool verify_williamson(const Quadruple& q);

/// True (reject) iff the summed spectra exceed 4n + epsilon at some bin.
bool psd_filter(std::span<const Eigen::VectorXd> spectra, int n, double epsilon = kDefaultEpsilon);

/// Real DFT of symmetric integer sequences, evaluated at bins 0..n/2 only.
///
/// A symmetric sequence has a real spectrum, so the transform reduces to a
/// cosine basis over the free entries, weighted by how many times each free
/// entry occurs in the full sequence.
class SymmetricSpectrum {
 public:
  explicit SymmetricSpectrum(int order);

  int order() const noexcept { return order_; }
  int bins() const noexcept { return static_cast<int>(basis_.rows()); }
  int free_count() const noexcept { return static_cast<int>(basis_.cols()); }
  /// bins() x free_count(); the DFT at bin s is row s dotted with the free entries.
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }

  /// `free_entries` has free_count() values; returns bins() PSD values.
  template <typename Derived>
  Eigen::VectorXd operator()(const Eigen::MatrixBase<Derived>& free_entries) const {
    return (basis_ * free_entries.template cast<double>()).array().square().matrix();
  }
  Eigen::VectorXd operator()(const SymmetricSequence& seq) const;
  Eigen::VectorXd operator()(std::span<const Sign> free_entries) const;

 private:
  int order_;
  Eigen::MatrixXd basis_;
};

}  // namespace williamson
