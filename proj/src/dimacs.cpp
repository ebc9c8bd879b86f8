#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "williamson/cnf.hpp"
#include "williamson/text_format.hpp"

namespace williamson {

std::optional<Clause> normalize_clause(Clause clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 1; i < clause.size(); ++i) {
    if (clause[i].var == clause[i - 1].var) return std::nullopt;
  }
  return clause;
}

VariableMap::VariableMap(int order) : order_(order), free_count_(order / 2 + 1) {
  if (order < 1) throw std::invalid_argument("order must be positive");
}

int VariableMap::variable(Role role, int index) const {
  if (index < 0 || index >= order_) throw std::out_of_range("sequence index out of range");
  return static_cast<int>(role) * free_count_ + std::min(index, order_ - index);
}

std::pair<Role, int> VariableMap::entry(int variable) const {
  if (variable < 0 || variable >= variable_count()) throw std::out_of_range("variable out of range");
  return {static_cast<Role>(variable / free_count_), variable % free_count_};
}

std::string export_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variable_count << ' ' << formula.clauses.size() << '\n';
  for (const auto& clause : formula.clauses) {
    for (const auto& lit : clause) out << (lit.positive ? "" : "-") << lit.var + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula formula;
  bool header_seen = false;
  std::size_t declared_clauses = 0;
  Clause pending;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == 'c' || line[first] == '%') continue;
    if (line[first] == 'p') {
      std::istringstream header{std::string(line.substr(first))};
      std::string p, cnf;
      long long vars = -1;
      long long clauses = -1;
      if (!(header >> p >> cnf >> vars >> clauses) || cnf != "cnf" || vars < 0 || clauses < 0) {
        throw ParseError(line_no, "malformed DIMACS header");
      }
      if (header_seen) throw ParseError(line_no, "duplicate DIMACS header");
      header_seen = true;
      formula.variable_count = static_cast<int>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header_seen) throw ParseError(line_no, "clause before DIMACS header");
    std::size_t i = first;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      long long value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
      if (ec != std::errc{} || ptr != line.data() + j) throw ParseError(line_no, "invalid literal");
      if (value == 0) {
        formula.clauses.push_back(std::move(pending));
        pending.clear();
      } else {
        const long long var = value < 0 ? -value : value;
        if (var > formula.variable_count) throw ParseError(line_no, "literal exceeds declared variable count");
        pending.push_back({static_cast<int>(var - 1), value > 0});
      }
      i = j;
    }
  }
  if (!pending.empty()) throw ParseError(line_no, "unterminated clause");
  if (!header_seen) throw ParseError(line_no, "missing DIMACS header");
  if (formula.clauses.size() != declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                  std::to_string(formula.clauses.size()));
  }
  return formula;
}

}  // namespace williamson
