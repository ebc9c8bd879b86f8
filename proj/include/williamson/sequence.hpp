#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace williamson {

using Sign = std::int8_t;

/// Maps any index of a length-n symmetric sequence to its free index 0..n/2.
constexpr int fold_index(int i, int n) noexcept {
  i %= n;
  if (i < 0) i += n;
  return i <= n - i ? i : n - i;
}

/// A ±1 sequence of length n with x_i = x_{n-i}.
///
/// Only the free entries x_0..x_{n/2} are stored; the full sequence is
/// produced on demand by expand(). Ordering is lexicographic over the full
/// sequence with +1 ranked before -1, which coincides with lexicographic
/// order over the free entries.
class SymmetricSequence {
 public:
  SymmetricSequence() = default;
  SymmetricSequence(int order, std::vector<Sign> free_entries);

  /// Builds from all n entries; throws if they are not ±1 or not symmetric.
  template <typename Derived>
  static SymmetricSequence from_entries(const Eigen::MatrixBase<Derived>& entries);
  static SymmetricSequence from_entries(std::span<const int> entries);

  /// Bit i of `negative_mask` set means free entry i is -1.
  static SymmetricSequence from_mask(int order, std::uint64_t negative_mask);
  static SymmetricSequence constant(int order, Sign value = 1);

  int order() const noexcept { return order_; }
  int free_count() const noexcept { return static_cast<int>(free_.size()); }
  std::span<const Sign> free_entries() const noexcept { return free_; }

  Sign operator[](int i) const noexcept { return free_[fold_index(i, order_)]; }
  Eigen::VectorXi expand() const;
  int rowsum() const noexcept;

  /// Requires free_count() <= 64.
  std::uint64_t negative_mask() const;

  SymmetricSequence negated() const;
  /// Cyclic shift by n/2 (even order only).
  SymmetricSequence shifted_half() const;
  /// i-th entry becomes x_{k*i mod n}; k must be a unit mod n.
  SymmetricSequence permuted(int multiplier) const;
  /// Negates every odd-index entry (even order only).
  SymmetricSequence alternated() const;

  friend bool operator==(const SymmetricSequence&, const SymmetricSequence&) = default;
  friend bool operator<(const SymmetricSequence& lhs, const SymmetricSequence& rhs) noexcept;
  friend bool operator>(const SymmetricSequence& lhs, const SymmetricSequence& rhs) noexcept {
    return rhs < lhs;
  }

 private:
  int order_ = 0;
  std::vector<Sign> free_;
};

template <typename Derived>
SymmetricSequence SymmetricSequence::from_entries(const Eigen::MatrixBase<Derived>& entries) {
  std::vector<int> values(static_cast<std::size_t>(entries.size()));
  for (Eigen::Index i = 0; i < entries.size(); ++i) values[static_cast<std::size_t>(i)] = static_cast<int>(entries(i));
  return from_entries(std::span<const int>(values));
}

/// N symmetric sequences of one common order: a quadruple (A, B, C, D) or an
/// 8-Williamson octuple.
template <std::size_t N>
class SequenceTuple {
 public:
  static constexpr std::size_t size = N;

  SequenceTuple() = default;
  explicit SequenceTuple(std::array<SymmetricSequence, N> members) : members_(std::move(members)) {
    for (const auto& m : members_) {
      if (m.order() != members_[0].order()) {
        throw std::invalid_argument("sequence tuple members must share one order");
      }
    }
  }
  template <typename... Seq>
    requires(sizeof...(Seq) == N && N > 1)
  SequenceTuple(Seq... seqs) : SequenceTuple(std::array<SymmetricSequence, N>{std::move(seqs)...}) {}

  int order() const noexcept { return members_[0].order(); }
  const SymmetricSequence& operator[](std::size_t i) const noexcept { return members_[i]; }
  SymmetricSequence& operator[](std::size_t i) noexcept { return members_[i]; }
  const std::array<SymmetricSequence, N>& members() const noexcept { return members_; }

  const SymmetricSequence& a() const noexcept requires(N == 4) { return members_[0]; }
  const SymmetricSequence& b() const noexcept requires(N == 4) { return members_[1]; }
  const SymmetricSequence& c() const noexcept requires(N == 4) { return members_[2]; }
  const SymmetricSequence& d() const noexcept requires(N == 4) { return members_[3]; }

  friend bool operator==(const SequenceTuple&, const SequenceTuple&) = default;
  friend bool operator<(const SequenceTuple& lhs, const SequenceTuple& rhs) noexcept {
    for (std::size_t i = 0; i < N; ++i) {
      if (lhs.members_[i] < rhs.members_[i]) return true;
      if (rhs.members_[i] < lhs.members_[i]) return false;
    }
    return false;
  }

 private:
  std::array<SymmetricSequence, N> members_;
};

using Quadruple = SequenceTuple<4>;
using Octuple = SequenceTuple<8>;

/// Integer sequence of length d obtained by summing entries whose indices are
/// congruent mod d; `factor` is m = n / d.
struct CompressedSequence {
  Eigen::VectorXi entries;
  int factor = 1;

  int length() const noexcept { return static_cast<int>(entries.size()); }
  int order() const noexcept { return length() * factor; }

  friend bool operator==(const CompressedSequence& lhs, const CompressedSequence& rhs) {
    return lhs.factor == rhs.factor && lhs.entries.size() == rhs.entries.size() && lhs.entries == rhs.entries;
  }
  friend bool operator<(const CompressedSequence& lhs, const CompressedSequence& rhs) noexcept;
};

std::size_t hash_value(const SymmetricSequence& seq) noexcept;

}  // namespace williamson

template <>
struct std::hash<williamson::SymmetricSequence> {
  std::size_t operator()(const williamson::SymmetricSequence& s) const noexcept { return williamson::hash_value(s); }
};

template <std::size_t N>
struct std::hash<williamson::SequenceTuple<N>> {
  std::size_t operator()(const williamson::SequenceTuple<N>& t) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& m : t.members()) h = (h ^ williamson::hash_value(m)) * 0x100000001b3ULL;
    return h;
  }
};
