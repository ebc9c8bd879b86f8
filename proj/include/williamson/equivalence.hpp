#pragma once

#include <array>
#include <cstddef>
#include <unordered_set>
#include <variant>
#include <vector>

#include "williamson/sequence.hpp"

namespace williamson {

/// i -> k*i mod n for a unit k.
class Automorphism {
 public:
  Automorphism(int multiplier, int order);

  int multiplier() const noexcept { return multiplier_; }
  int order() const noexcept { return order_; }
  int operator()(int index) const noexcept;

 private:
  int multiplier_;
  int order_;
};

/// All phi(n) automorphisms of C_n, by increasing multiplier.
std::vector<Automorphism> automorphisms(int n);

/// E1: member i of the result is member permutation[i] of the input.
template <std::size_t N>
struct Reorder {
  std::array<std::size_t, N> permutation;
};
/// E2 on one member.
struct Negate {
  std::size_t member;
};
/// E3 on one member (even order).
struct ShiftHalf {
  std::size_t member;
};
/// E4 on every member.
struct Permute {
  int multiplier;
};
/// E5 on every member (even order).
struct Alternate {};

template <std::size_t N>
using EquivalenceOp = std::variant<Reorder<N>, Negate, ShiftHalf, Permute, Alternate>;

template <std::size_t N>
SequenceTuple<N> apply_equivalence(const SequenceTuple<N>& tuple, const EquivalenceOp<N>& op);

/// Lexicographic minimum of the class: per member the minimum over negation
/// (and half shift for even n), members sorted, minimized over Aut(C_n) and,
/// for even n, over alternating negation.
template <std::size_t N>
SequenceTuple<N> canonical_form(const SequenceTuple<N>& tuple);

/// Distinct canonical forms in first-seen order.
template <std::size_t N>
std::vector<SequenceTuple<N>> dedupe(const std::vector<SequenceTuple<N>>& tuples);

/// Every tuple reachable from `tuple` under the equivalence operations.
template <std::size_t N>
std::unordered_set<SequenceTuple<N>> expand_class(const SequenceTuple<N>& tuple);

/// Inequivalent 8-Williamson octuples of odd order n extracted from the
/// Williamson quadruples of order 2n, given one representative per class.
std::vector<Octuple> eight_williamson_classes(const std::vector<Quadruple>& class_representatives);

extern template SequenceTuple<4> apply_equivalence(const SequenceTuple<4>&, const EquivalenceOp<4>&);
extern template SequenceTuple<8> apply_equivalence(const SequenceTuple<8>&, const EquivalenceOp<8>&);
extern template SequenceTuple<4> canonical_form(const SequenceTuple<4>&);
extern template SequenceTuple<8> canonical_form(const SequenceTuple<8>&);
extern template std::vector<SequenceTuple<4>> dedupe(const std::vector<SequenceTuple<4>>&);
extern template std::vector<SequenceTuple<8>> dedupe(const std::vector<SequenceTuple<8>>&);
extern template std::unordered_set<SequenceTuple<4>> expand_class(const SequenceTuple<4>&);
extern template std::unordered_set<SequenceTuple<8>> expand_class(const SequenceTuple<8>&);

}  // namespace williamson
