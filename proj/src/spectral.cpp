#include <cmath>

#include "williamson/seqcore.hpp"

namespace williamson {

Eigen::VectorXi paf(const SymmetricSequence& seq) { return paf(seq.expand()); }
Eigen::VectorXi paf(const CompressedSequence& seq) { return paf(seq.entries); }
Eigen::VectorXd psd(const SymmetricSequence& seq) { return psd(seq.expand()); }
Eigen::VectorXd psd(const CompressedSequence& seq) { return psd(seq.entries); }

CompressedSequence compress(const SymmetricSequence& seq, int d) { return compress(seq.expand(), d); }

int rowsum(const SymmetricSequence& seq) { return seq.rowsum(); }
int rowsum(const CompressedSequence& seq) { return seq.entries.sum(); }

bool verify_williamson(const Quadruple& q) { return paf_sum_vanishes(q, q.order() / 2); }

bool psd_filter(std::span<const Eigen::VectorXd> spectra, int n, double epsilon) {
  if (spectra.empty() || spectra.size() > 4) throw std::invalid_argument("psd_filter takes one to four spectra");
  Eigen::VectorXd total = spectra[0];
  for (std::size_t i = 1; i < spectra.size(); ++i) {
    if (spectra[i].size() != total.size()) throw std::invalid_argument("spectra lengths differ");
    total += spectra[i];
  }
  return (total.array() > 4.0 * n + epsilon).any();
}

SymmetricSpectrum::SymmetricSpectrum(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("spectrum order must be positive");
  const int bins = order / 2 + 1;
  basis_.resize(bins, bins);
  for (int s = 0; s < bins; ++s) {
    for (int k = 0; k < bins; ++k) {
      // x_k appears at k and n-k unless those coincide.
      const double weight = (k == 0 || 2 * k == order) ? 1.0 : 2.0;
      const long long phase = (static_cast<long long>(k) * s) % order;
      basis_(s, k) = weight * std::cos(2.0 * std::numbers::pi * static_cast<double>(phase) / order);
    }
  }
}

Eigen::VectorXd SymmetricSpectrum::operator()(std::span<const Sign> free_entries) const {
  Eigen::VectorXd x(free_count());
  for (int k = 0; k < free_count(); ++k) x(k) = free_entries[static_cast<std::size_t>(k)];
  return (basis_ * x).array().square().matrix();
}

Eigen::VectorXd SymmetricSpectrum::operator()(const SymmetricSequence& seq) const {
  if (seq.order() != order_) throw std::invalid_argument("sequence order does not match spectrum");
  return (*this)(seq.free_entries());
}

}  // namespace williamson
