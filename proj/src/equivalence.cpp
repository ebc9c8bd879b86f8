#include "williamson/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "williamson/candidates.hpp"
#include "williamson/constructions.hpp"

namespace williamson {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_member(std::size_t member, std::size_t size) {
  if (member >= size) throw std::out_of_range("member index out of range");
}

SymmetricSequence member_minimum(const SymmetricSequence& x, bool even) {
  SymmetricSequence best = std::min(x, x.negated());
  if (even) {
    const SymmetricSequence shifted = x.shifted_half();
    best = std::min({best, shifted, shifted.negated()});
  }
  return best;
}

}  // namespace

Automorphism::Automorphism(int multiplier, int order) : multiplier_(multiplier), order_(order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  multiplier_ = ((multiplier % order) + order) % order;
  if (order == 1) multiplier_ = 1;
  if (std::gcd(multiplier_, order) != 1) throw std::invalid_argument("automorphism multiplier must be a unit");
}

int Automorphism::operator()(int index) const noexcept {
  const long long r = (static_cast<long long>(multiplier_) * index) % order_;
  return static_cast<int>(r < 0 ? r + order_ : r);
}

std::vector<Automorphism> automorphisms(int n) {
  std::vector<Automorphism> out;
  for (int k : unit_multipliers(n)) out.emplace_back(k, n);
  return out;
}

template <std::size_t N>
SequenceTuple<N> apply_equivalence(const SequenceTuple<N>& tuple, const EquivalenceOp<N>& op) {
  const int n = tuple.order();
  auto members = tuple.members();
  std::visit(Overloaded{
                 [&](const Reorder<N>& r) {
                   std::array<bool, N> used{};
                   for (std::size_t i = 0; i < N; ++i) {
                     check_member(r.permutation[i], N);
                     if (used[r.permutation[i]]) throw std::invalid_argument("reorder is not a permutation");
                     used[r.permutation[i]] = true;
                     members[i] = tuple[r.permutation[i]];
                   }
                 },
                 [&](const Negate& g) {
                   check_member(g.member, N);
                   members[g.member] = members[g.member].negated();
                 },
                 [&](const ShiftHalf& s) {
                   check_member(s.member, N);
                   if (n % 2 != 0) throw std::invalid_argument("half shift requires even order");
                   members[s.member] = members[s.member].shifted_half();
                 },
                 [&](const Permute& p) {
                   const Automorphism sigma(p.multiplier, n);
                   for (auto& m : members) m = m.permuted(sigma.multiplier());
                 },
                 [&](const Alternate&) {
                   if (n % 2 != 0) throw std::invalid_argument("alternating negation requires even order");
                   for (auto& m : members) m = m.alternated();
                 },
             },
             op);
  return SequenceTuple<N>(members);
}

template <std::size_t N>
SequenceTuple<N> canonical_form(const SequenceTuple<N>& tuple) {
  const int n = tuple.order();
  const bool even = n % 2 == 0;
  std::vector<SequenceTuple<N>> images{tuple};
  if (even) images.push_back(apply_equivalence<N>(tuple, Alternate{}));
  std::optional<SequenceTuple<N>> best;
  for (const auto& image : images) {
    for (int k : unit_multipliers(n)) {
      std::array<SymmetricSequence, N> members;
      for (std::size_t i = 0; i < N; ++i) members[i] = member_minimum(image[i].permuted(k), even);
      std::sort(members.begin(), members.end());
      SequenceTuple<N> candidate(members);
      if (!best || candidate < *best) best = std::move(candidate);
    }
  }
  return *best;
}

template <std::size_t N>
std::vector<SequenceTuple<N>> dedupe(const std::vector<SequenceTuple<N>>& tuples) {
  std::vector<SequenceTuple<N>> out;
  std::unordered_set<SequenceTuple<N>> seen;
  for (const auto& t : tuples) {
    auto c = canonical_form(t);
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

template <std::size_t N>
std::unordered_set<SequenceTuple<N>> expand_class(const SequenceTuple<N>& tuple) {
  const int n = tuple.order();
  std::vector<EquivalenceOp<N>> generators;
  // Adjacent transpositions generate every reordering.
  for (std::size_t i = 0; i + 1 < N; ++i) {
    Reorder<N> r;
    std::iota(r.permutation.begin(), r.permutation.end(), std::size_t{0});
    std::swap(r.permutation[i], r.permutation[i + 1]);
    generators.emplace_back(r);
  }
  for (std::size_t i = 0; i < N; ++i) {
    generators.emplace_back(Negate{i});
    if (n % 2 == 0) generators.emplace_back(ShiftHalf{i});
  }
  for (int k : unit_multipliers(n)) {
    if (k != 1) generators.emplace_back(Permute{k});
  }
  if (n % 2 == 0) generators.emplace_back(Alternate{});

  std::unordered_set<SequenceTuple<N>> seen{tuple};
  std::deque<SequenceTuple<N>> frontier{tuple};
  while (!frontier.empty()) {
    const SequenceTuple<N> current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      auto next = apply_equivalence<N>(current, g);
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return seen;
}

std::vector<Octuple> eight_williamson_classes(const std::vector<Quadruple>& class_representatives) {
  std::vector<Octuple> out;
  std::set<Octuple> seen;
  for (const auto& rep : class_representatives) {
    const int order = rep.order();
    if (order % 4 != 2) throw std::invalid_argument("8-Williamson extraction needs order 2 mod 4");
    // Reorderings and negations of the quadruple act on the extracted
    // octuple as octuple reorderings and negations, so only half shifts,
    // automorphisms and alternating negation need to be enumerated.
    std::vector<Quadruple> images{rep, apply_equivalence<4>(rep, Alternate{})};
    for (const auto& image : images) {
      for (int k : unit_multipliers(order)) {
        const Quadruple permuted = apply_equivalence<4>(image, Permute{k});
        for (unsigned shifts = 0; shifts < 16; ++shifts) {
          Quadruple q = permuted;
          for (std::size_t i = 0; i < 4; ++i) {
            if ((shifts >> i) & 1U) q = apply_equivalence<4>(q, ShiftHalf{i});
          }
          auto c = canonical_form(extract_eight_williamson(q));
          if (seen.insert(c).second) out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

template SequenceTuple<4> apply_equivalence(const SequenceTuple<4>&, const EquivalenceOp<4>&);
template SequenceTuple<8> apply_equivalence(const SequenceTuple<8>&, const EquivalenceOp<8>&);
template SequenceTuple<4> canonical_form(const SequenceTuple<4>&);
template SequenceTuple<8> canonical_form(const SequenceTuple<8>&);
template std::vector<SequenceTuple<4>> dedupe(const std::vector<SequenceTuple<4>>&);
template std::vector<SequenceTuple<8>> dedupe(const std::vector<SequenceTuple<8>>&);
template std::unordered_set<SequenceTuple<4>> expand_class(const SequenceTuple<4>&);
template std::unordered_set<SequenceTuple<8>> expand_class(const SequenceTuple<8>&);

}  // namespace williamson
