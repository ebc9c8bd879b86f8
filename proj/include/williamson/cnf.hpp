#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace williamson {

/// 0-based variable with a polarity; `positive` true means the variable
/// itself, which encodes the entry +1.
struct Literal {
  int var = 0;
  bool positive = true;

  Literal operator~() const noexcept { return {var, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  int variable_count = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Sorts, merges repeated literals, and returns nullopt for tautologies.
std::optional<Clause> normalize_clause(Clause clause);

enum class Role : std::size_t { A = 0, B = 1, C = 2, D = 3 };

/// Role-major numbering of the free entries: A's x_0..x_{n/2}, then B, C, D.
class VariableMap {
 public:
  explicit VariableMap(int order = 1);

  int order() const noexcept { return order_; }
  int free_count() const noexcept { return free_count_; }
  int variable_count() const noexcept { return 4 * free_count_; }

  /// Any index 0..n-1; indices above n/2 resolve to the variable of n - i.
  int variable(Role role, int index) const;
  std::pair<Role, int> entry(int variable) const;

 private:
  int order_;
  int free_count_;
};

/// DIMACS CNF text: "p cnf V C" header, 1-based literals, 0-terminated lines.
std::string export_dimacs(const CnfFormula& formula);
CnfFormula parse_dimacs(std::string_view text);

}  // namespace williamson
