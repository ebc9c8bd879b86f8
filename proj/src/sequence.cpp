#include "williamson/sequence.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace williamson {

SymmetricSequence::SymmetricSequence(int order, std::vector<Sign> free_entries)
    : order_(order), free_(std::move(free_entries)) {
  if (order < 1) throw std::invalid_argument("sequence order must be positive");
  if (free_.size() != static_cast<std::size_t>(order / 2 + 1)) {
    throw std::invalid_argument("expected " + std::to_string(order / 2 + 1) + " free entries for order " +
                                std::to_string(order));
  }
  for (Sign v : free_) {
    if (v != 1 && v != -1) throw std::invalid_argument("sequence entries must be +1 or -1");
  }
}

SymmetricSequence SymmetricSequence::from_entries(std::span<const int> entries) {
  const int n = static_cast<int>(entries.size());
  if (n == 0) throw std::invalid_argument("empty sequence");
  for (int i = 1; i < n; ++i) {
    if (entries[static_cast<std::size_t>(i)] != entries[static_cast<std::size_t>(n - i)]) {
      throw std::invalid_argument("sequence is not symmetric at index " + std::to_string(i));
    }
  }
  std::vector<Sign> free(static_cast<std::size_t>(n / 2 + 1));
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = static_cast<Sign>(entries[i]);
  return SymmetricSequence(n, std::move(free));
}

SymmetricSequence SymmetricSequence::from_mask(int order, std::uint64_t negative_mask) {
  std::vector<Sign> free(static_cast<std::size_t>(order / 2 + 1));
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = ((negative_mask >> i) & 1U) ? -1 : 1;
  return SymmetricSequence(order, std::move(free));
}

SymmetricSequence SymmetricSequence::constant(int order, Sign value) {
  return SymmetricSequence(order, std::vector<Sign>(static_cast<std::size_t>(order / 2 + 1), value));
}

Eigen::VectorXi SymmetricSequence::expand() const {
  Eigen::VectorXi out(order_);
  for (int i = 0; i < order_; ++i) out[i] = (*this)[i];
  return out;
}

int SymmetricSequence::rowsum() const noexcept {
  int total = 0;
  for (int i = 0; i < order_; ++i) total += (*this)[i];
  return total;
}

std::uint64_t SymmetricSequence::negative_mask() const {
  if (free_.size() > 64) throw std::invalid_argument("sequence too long for a 64-bit mask");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < free_.size(); ++i) {
    if (free_[i] < 0) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

SymmetricSequence SymmetricSequence::negated() const {
  SymmetricSequence out = *this;
  for (auto& v : out.free_) v = static_cast<Sign>(-v);
  return out;
}

SymmetricSequence SymmetricSequence::shifted_half() const {
  if (order_ % 2 != 0) throw std::invalid_argument("half shift requires even order");
  SymmetricSequence out = *this;
  for (int i = 0; i < free_count(); ++i) out.free_[static_cast<std::size_t>(i)] = (*this)[i + order_ / 2];
  return out;
}

SymmetricSequence SymmetricSequence::permuted(int multiplier) const {
  if (std::gcd(multiplier, order_) != 1) throw std::invalid_argument("multiplier must be coprime to the order");
  SymmetricSequence out = *this;
  const long long k = multiplier;
  for (int i = 0; i < free_count(); ++i) {
    out.free_[static_cast<std::size_t>(i)] = (*this)[static_cast<int>((k * i) % order_)];
  }
  return out;
}

SymmetricSequence SymmetricSequence::alternated() const {
  if (order_ % 2 != 0) throw std::invalid_argument("alternating negation requires even order");
  SymmetricSequence out = *this;
  for (std::size_t i = 1; i < free_.size(); i += 2) out.free_[i] = static_cast<Sign>(-out.free_[i]);
  return out;
}

bool operator<(const SymmetricSequence& lhs, const SymmetricSequence& rhs) noexcept {
  if (lhs.order_ != rhs.order_) return lhs.order_ < rhs.order_;
  // +1 ranks before -1.
  return std::lexicographical_compare(lhs.free_.begin(), lhs.free_.end(), rhs.free_.begin(), rhs.free_.end(),
                                      [](Sign x, Sign y) { return x > y; });
}

bool operator<(const CompressedSequence& lhs, const CompressedSequence& rhs) noexcept {
  if (lhs.factor != rhs.factor) return lhs.factor < rhs.factor;
  return std::lexicographical_compare(lhs.entries.data(), lhs.entries.data() + lhs.entries.size(),
                                      rhs.entries.data(), rhs.entries.data() + rhs.entries.size());
}

std::size_t hash_value(const SymmetricSequence& seq) noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ static_cast<std::size_t>(seq.order());
  for (Sign v : seq.free_entries()) h = (h ^ static_cast<std::size_t>(v < 0)) * 0x100000001b3ULL;
  return h;
}

}  // namespace williamson
