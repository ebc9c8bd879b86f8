#include "williamson/encoding.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace williamson {
namespace {

// Clauses forcing sum(+-1 values of vars) == value, for the m positions of
// one compressed entry.
std::vector<Clause> uncompression_case(const std::vector<int>& vars, int value) {
  const int m = static_cast<int>(vars.size());
  auto lit = [&](int t, bool positive) { return Literal{vars[static_cast<std::size_t>(t)], positive}; };
  std::vector<Clause> out;
  if (value == m || value == -m) {
    // All entries +1 (or all -1): unit clauses.
    for (int t = 0; t < m; ++t) out.push_back({lit(t, value > 0)});
  } else if (m == 2 && value == 0) {
    // Exactly one of the two is +1.
    out.push_back({lit(0, true), lit(1, true)});
    out.push_back({lit(0, false), lit(1, false)});
  } else if (m == 3 && (value == 1 || value == -1)) {
    // value 1: exactly one entry is -1; value -1: exactly one entry is +1.
    const bool minority = value < 0;
    out.push_back({lit(0, minority), lit(1, minority), lit(2, minority)});
    for (int s = 0; s < 3; ++s) {
      for (int t = s + 1; t < 3; ++t) out.push_back({lit(s, !minority), lit(t, !minority)});
    }
  } else {
    throw std::invalid_argument("compressed entry " + std::to_string(value) + " is not legal for factor " +
                                std::to_string(m));
  }
  return out;
}

CompressedSequence permute_compressed(const CompressedSequence& seq, int k) {
  const int d = seq.length();
  CompressedSequence out = seq;
  for (int j = 0; j < d; ++j) out.entries(j) = seq.entries(static_cast<int>((static_cast<long long>(k) * j) % d));
  return out;
}

CompressedSequence negate_compressed(const CompressedSequence& seq) {
  CompressedSequence out = seq;
  out.entries = -seq.entries;
  return out;
}

}  // namespace

SatInstance encode_uncompression(const MatchedCompression& mc, int n) {
  const int m = n % 2 == 0 ? 2 : 3;
  if (n % m != 0) throw std::invalid_argument("odd orders must be divisible by 3");
  const int d = n / m;
  SatInstance inst{n, {}, VariableMap(n)};
  inst.formula.variable_count = inst.map.variable_count();
  std::set<Clause> seen;
  for (std::size_t r = 0; r < 4; ++r) {
    const CompressedSequence& member = mc.members[r];
    if (member.factor != m || member.length() != d) {
      throw std::invalid_argument("compressed member does not match order " + std::to_string(n));
    }
    for (int j = 0; j < d; ++j) {
      std::vector<int> vars;
      for (int t = 0; t < m; ++t) vars.push_back(inst.map.variable(static_cast<Role>(r), j + t * d));
      for (auto& clause : uncompression_case(vars, member.entries(j))) {
        auto normalized = normalize_clause(std::move(clause));
        if (normalized && seen.insert(*normalized).second) inst.formula.clauses.push_back(std::move(*normalized));
      }
    }
  }
  return inst;
}

std::vector<Clause> encode_product_theorem(int n) {
  if (n % 2 == 0) throw std::invalid_argument("product theorem clauses apply to odd orders");
  const VariableMap map(n);
  std::vector<Clause> out;
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    // A clause is falsified only by the assignment opposite to its literals.
    // Clauses with an even number of negative literals are falsified exactly
    // by assignments whose product is +1, so together they force -1.
    for (unsigned pattern = 0; pattern < 16; ++pattern) {
      if (std::popcount(pattern) % 2 != 0) continue;
      Clause clause;
      for (std::size_t r = 0; r < 4; ++r) {
        clause.push_back({map.variable(static_cast<Role>(r), k), ((pattern >> r) & 1U) == 0});
      }
      out.push_back(std::move(clause));
    }
  }
  return out;
}

std::array<CompressedSequence, 4> canonical_compression(const MatchedCompression& mc) {
  const int d = mc.members[0].length();
  const bool allow_negation = mc.order % 2 == 0;
  std::vector<int> units;
  for (int k = 1; k <= std::max(d - 1, 1); ++k) {
    if (std::gcd(k, d) == 1) units.push_back(k);
  }
  std::optional<std::array<CompressedSequence, 4>> best;
  for (int k : units) {
    std::array<CompressedSequence, 4> base;
    for (std::size_t r = 0; r < 4; ++r) {
      base[r] = permute_compressed(mc.members[r], k);
      if (allow_negation) base[r] = std::min(base[r], negate_compressed(base[r]));
    }
    // Member reordering: the sorted arrangement is the minimum.
    std::sort(base.begin(), base.end());
    if (!best || base < *best) best = base;
  }
  return *best;
}

}  // namespace williamson
