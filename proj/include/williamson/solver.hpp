#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "williamson/cnf.hpp"
#include "williamson/sequence.hpp"

namespace williamson {

enum class Value : std::int8_t { False = 0, True = 1, Undef = 2 };

/// The solver's partial assignment as seen by a callback.
class Assignment {
 public:
  int variable_count() const noexcept { return static_cast<int>(values_.size()); }
  Value value(int var) const noexcept { return values_[static_cast<std::size_t>(var)]; }
  int level(int var) const noexcept { return levels_[static_cast<std::size_t>(var)]; }
  int decision_level() const noexcept { return static_cast<int>(trail_limits_.size()); }
  /// Literals in assignment order.
  std::span<const Literal> trail() const noexcept { return trail_; }
  bool complete() const noexcept { return trail_.size() == values_.size(); }

 private:
  friend class Solver;
  std::vector<Value> values_;
  std::vector<int> levels_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> trail_limits_;
};

struct NoAction {};
/// A clause falsified by the current assignment.
struct LearnedClause {
  Clause clause;
};
struct SolutionFound {
  Quadruple quadruple;
};
using CallbackOutcome = std::variant<NoAction, LearnedClause, SolutionFound>;

/// Invoked whenever unit propagation reaches a fixpoint without conflict.
class SolverCallback {
 public:
  virtual ~SolverCallback() = default;
  virtual CallbackOutcome on_fixpoint(const Assignment& assignment) = 0;
};

struct SolverOptions {
  bool restarts = true;
  int luby_unit = 64;
  double variable_decay = 0.95;
  /// 0 enumerates everything.
  std::size_t max_solutions = 0;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t callback_calls = 0;
  std::uint64_t callback_clauses = 0;
  std::uint64_t solutions = 0;
};

/// A total assignment; entry v is true iff variable v is true.
using Model = std::vector<bool>;

/// Conflict-driven clause learning with two watched literals, activity-based
/// branching, phase saving and Luby restarts.
///
/// solve_all() enumerates every total assignment satisfying the clause set
/// (including clauses supplied by the callback): each model is recorded and
/// then excluded by a blocking clause over all variables. Callback clauses and
/// blocking clauses are never deleted.
class Solver {
 public:
  explicit Solver(int variable_count, SolverOptions options = {});

  /// False once the clause set is known to be unsatisfiable.
  bool add_clause(const Clause& clause);
  bool add_formula(const CnfFormula& formula);
  void set_callback(SolverCallback* callback) noexcept { callback_ = callback; }

  std::vector<Model> solve_all();

  const SolverStats& stats() const noexcept { return stats_; }
  const Assignment& assignment() const noexcept { return assignment_; }
  int variable_count() const noexcept { return assignment_.variable_count(); }

 private:
  using Lit = int;  // 2 * var + (negative ? 1 : 0)
  static constexpr int kNoReason = -1;

  struct StoredClause {
    std::vector<Lit> lits;
    double activity = 0.0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    int cref;
    Lit blocker;
  };

  static Lit to_lit(Literal l) noexcept { return 2 * l.var + (l.positive ? 0 : 1); }
  static Literal from_lit(Lit l) noexcept { return {l >> 1, (l & 1) == 0}; }
  Value lit_value(Lit l) const noexcept;

  int attach(std::vector<Lit> lits, bool learnt);
  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level);
  bool literal_redundant(Lit l) const;
  void cancel_until(int level);
  void backjump_and_learn(int conflict);
  bool handle_external_clause(Clause clause);
  int pick_branch_literal();
  void bump_variable(int var);
  void bump_clause(StoredClause& c);
  void reduce_learnts();
  bool locked(int cref) const;

  void heap_insert(int var);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  bool heap_less(int a, int b) const noexcept { return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)]; }

  SolverOptions options_;
  Assignment assignment_;
  std::vector<int> reasons_;
  std::vector<StoredClause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<double> activity_;
  std::vector<bool> saved_phase_;
  std::vector<int> heap_;
  std::vector<int> heap_index_;
  std::vector<char> seen_;
  std::size_t queue_head_ = 0;
  double variable_increment_ = 1.0;
  double clause_increment_ = 1.0;
  std::size_t learnt_count_ = 0;
  double max_learnts_ = 0.0;
  bool unsatisfiable_ = false;
  SolverCallback* callback_ = nullptr;
  SolverStats stats_;
};

/// Convenience: all models of `formula` (optionally under a callback).
std::vector<Model> solve_all(const CnfFormula& formula, SolverCallback* callback = nullptr,
                             SolverStats* stats = nullptr, SolverOptions options = {});

/// True iff every clause has a literal satisfied by `model`.
bool satisfies(const CnfFormula& formula, const Model& model);

}  // namespace williamson
