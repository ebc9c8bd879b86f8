#include "williamson/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace williamson {
namespace {

// Luby sequence 1,1,2,1,1,2,4,... at 0-based index x.
double luby(std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x %= size;
  }
  return static_cast<double>(1ULL << seq);
}

}  // namespace

Solver::Solver(int variable_count, SolverOptions options) : options_(options) {
  if (variable_count < 0) throw std::invalid_argument("variable count must be non-negative");
  const auto v = static_cast<std::size_t>(variable_count);
  assignment_.values_.assign(v, Value::Undef);
  assignment_.levels_.assign(v, 0);
  reasons_.assign(v, kNoReason);
  watches_.resize(2 * v);
  activity_.assign(v, 0.0);
  saved_phase_.assign(v, true);
  heap_index_.assign(v, -1);
  seen_.assign(v, 0);
  for (int var = 0; var < variable_count; ++var) heap_insert(var);
}

Value Solver::lit_value(Lit l) const noexcept {
  const Value v = assignment_.values_[static_cast<std::size_t>(l >> 1)];
  if (v == Value::Undef) return v;
  const bool is_true = (v == Value::True) == ((l & 1) == 0);
  return is_true ? Value::True : Value::False;
}

bool Solver::add_clause(const Clause& clause) {
  for (const auto& l : clause) {
    if (l.var < 0 || l.var >= variable_count()) {
      throw std::out_of_range("literal variable " + std::to_string(l.var) + " out of range");
    }
  }
  if (unsatisfiable_) return false;
  cancel_until(0);
  auto normalized = normalize_clause(clause);
  if (!normalized) return true;
  std::vector<Lit> lits;
  for (const auto& l : *normalized) {
    const Lit lit = to_lit(l);
    const Value v = lit_value(lit);
    if (v == Value::True) return true;
    if (v == Value::Undef) lits.push_back(lit);
  }
  if (lits.empty()) {
    unsatisfiable_ = true;
    return false;
  }
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) unsatisfiable_ = true;
    return !unsatisfiable_;
  }
  attach(std::move(lits), false);
  return true;
}

bool Solver::add_formula(const CnfFormula& formula) {
  if (formula.variable_count > variable_count()) throw std::invalid_argument("formula has more variables than solver");
  for (const auto& clause : formula.clauses) {
    if (!add_clause(clause)) return false;
  }
  return true;
}

int Solver::attach(std::vector<Lit> lits, bool learnt) {
  const int cref = static_cast<int>(clauses_.size());
  watches_[static_cast<std::size_t>(lits[0] ^ 1)].push_back({cref, lits[1]});
  watches_[static_cast<std::size_t>(lits[1] ^ 1)].push_back({cref, lits[0]});
  clauses_.push_back({std::move(lits), 0.0, learnt, false});
  if (learnt) ++learnt_count_;
  return cref;
}

void Solver::enqueue(Lit l, int reason) {
  const auto v = static_cast<std::size_t>(l >> 1);
  assignment_.values_[v] = (l & 1) == 0 ? Value::True : Value::False;
  assignment_.levels_[v] = assignment_.decision_level();
  reasons_[v] = reason;
  assignment_.trail_.push_back(from_lit(l));
}

int Solver::propagate() {
  auto& trail = assignment_.trail_;
  int conflict = kNoReason;
  while (queue_head_ < trail.size()) {
    const Lit p = to_lit(trail[queue_head_++]);
    const Lit false_lit = p ^ 1;
    auto& ws = watches_[static_cast<std::size_t>(p)];
    ++stats_.propagations;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (lit_value(w.blocker) == Value::True) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& lits = clauses_[static_cast<std::size_t>(w.cref)].lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      if (first != w.blocker && lit_value(first) == Value::True) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (lit_value(lits[k]) != Value::False) {
          std::swap(lits[1], lits[k]);
          watches_[static_cast<std::size_t>(lits[1] ^ 1)].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (lit_value(first) == Value::False) {
        conflict = w.cref;
        queue_head_ = trail.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

bool Solver::literal_redundant(Lit l) const {
  const int var = l >> 1;
  const int reason = reasons_[static_cast<std::size_t>(var)];
  if (reason == kNoReason) return false;
  for (Lit q : clauses_[static_cast<std::size_t>(reason)].lits) {
    const auto qv = static_cast<std::size_t>(q >> 1);
    if (static_cast<int>(qv) == var) continue;
    if (!seen_[qv] && assignment_.levels_[qv] > 0) return false;
  }
  return true;
}

void Solver::analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  const auto& trail = assignment_.trail_;
  const int current = assignment_.decision_level();
  learnt.assign(1, -1);
  int path_count = 0;
  int p_var = -1;
  Lit p = -1;
  std::size_t index = trail.size();
  int cref = conflict;
  do {
    auto& c = clauses_[static_cast<std::size_t>(cref)];
    if (c.learnt) bump_clause(c);
    for (Lit q : c.lits) {
      const auto v = static_cast<std::size_t>(q >> 1);
      if (static_cast<int>(v) == p_var) continue;
      if (!seen_[v] && assignment_.levels_[v] > 0) {
        bump_variable(static_cast<int>(v));
        seen_[v] = 1;
        if (assignment_.levels_[v] >= current) {
          ++path_count;
        } else {
          learnt.push_back(q);
        }
      }
    }
    do {
      --index;
    } while (!seen_[static_cast<std::size_t>(trail[index].var)]);
    p = to_lit(trail[index]);
    p_var = p >> 1;
    cref = reasons_[static_cast<std::size_t>(p_var)];
    seen_[static_cast<std::size_t>(p_var)] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = p ^ 1;

  std::vector<Lit> kept{learnt[0]};
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (!literal_redundant(learnt[i])) kept.push_back(learnt[i]);
  }
  for (std::size_t i = 1; i < learnt.size(); ++i) seen_[static_cast<std::size_t>(learnt[i] >> 1)] = 0;
  learnt = std::move(kept);

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i) {
      if (assignment_.levels_[static_cast<std::size_t>(learnt[i] >> 1)] >
          assignment_.levels_[static_cast<std::size_t>(learnt[max_i] >> 1)]) {
        max_i = i;
      }
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = assignment_.levels_[static_cast<std::size_t>(learnt[1] >> 1)];
  }
}

void Solver::cancel_until(int level) {
  if (assignment_.decision_level() <= level) return;
  auto& trail = assignment_.trail_;
  const std::size_t keep = assignment_.trail_limits_[static_cast<std::size_t>(level)];
  for (std::size_t i = trail.size(); i-- > keep;) {
    const auto v = static_cast<std::size_t>(trail[i].var);
    saved_phase_[v] = assignment_.values_[v] == Value::True;
    assignment_.values_[v] = Value::Undef;
    reasons_[v] = kNoReason;
    if (heap_index_[v] < 0) heap_insert(static_cast<int>(v));
  }
  trail.resize(keep);
  assignment_.trail_limits_.resize(static_cast<std::size_t>(level));
  queue_head_ = trail.size();
}

void Solver::backjump_and_learn(int conflict) {
  std::vector<Lit> learnt;
  int level = 0;
  analyze(conflict, learnt, level);
  cancel_until(level);
  if (learnt.size() == 1) {
    enqueue(learnt[0], kNoReason);
  } else {
    const Lit asserting = learnt[0];
    const int cref = attach(std::move(learnt), true);
    bump_clause(clauses_[static_cast<std::size_t>(cref)]);
    enqueue(asserting, cref);
  }
  variable_increment_ /= options_.variable_decay;
  clause_increment_ /= 0.999;
}

bool Solver::handle_external_clause(Clause clause) {
  auto normalized = normalize_clause(std::move(clause));
  if (!normalized) throw std::logic_error("external clause is a tautology");
  std::vector<Lit> lits;
  for (const auto& l : *normalized) {
    if (l.var < 0 || l.var >= variable_count()) throw std::out_of_range("external clause variable out of range");
    const Lit lit = to_lit(l);
    if (lit_value(lit) != Value::False) throw std::logic_error("external clause is not falsified by the assignment");
    if (assignment_.levels_[static_cast<std::size_t>(l.var)] > 0) lits.push_back(lit);
  }
  if (lits.empty()) {
    unsatisfiable_ = true;
    return false;
  }
  auto level_of = [&](Lit l) { return assignment_.levels_[static_cast<std::size_t>(l >> 1)]; };
  std::stable_sort(lits.begin(), lits.end(), [&](Lit a, Lit b) { return level_of(a) > level_of(b); });
  if (lits.size() == 1) {
    cancel_until(0);
    enqueue(lits[0], kNoReason);
    return true;
  }
  const int top = level_of(lits[0]);
  const int second = level_of(lits[1]);
  cancel_until(top);
  const Lit asserting = lits[0];
  const int cref = attach(std::move(lits), false);
  if (second < top) {
    cancel_until(second);
    enqueue(asserting, cref);
  } else {
    backjump_and_learn(cref);
  }
  return true;
}

int Solver::pick_branch_literal() {
  while (!heap_.empty()) {
    const int var = heap_.front();
    const int last = heap_.back();
    heap_.pop_back();
    heap_index_[static_cast<std::size_t>(var)] = -1;
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_index_[static_cast<std::size_t>(last)] = 0;
      heap_down(0);
    }
    if (assignment_.values_[static_cast<std::size_t>(var)] == Value::Undef) {
      return 2 * var + (saved_phase_[static_cast<std::size_t>(var)] ? 0 : 1);
    }
  }
  return -1;
}

void Solver::bump_variable(int var) {
  auto& a = activity_[static_cast<std::size_t>(var)];
  a += variable_increment_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    variable_increment_ *= 1e-100;
  }
  const int pos = heap_index_[static_cast<std::size_t>(var)];
  if (pos >= 0) heap_up(static_cast<std::size_t>(pos));
}

void Solver::bump_clause(StoredClause& c) {
  c.activity += clause_increment_;
  if (c.activity > 1e20) {
    for (auto& other : clauses_) {
      if (other.learnt) other.activity *= 1e-20;
    }
    clause_increment_ *= 1e-20;
  }
}

bool Solver::locked(int cref) const {
  const auto& lits = clauses_[static_cast<std::size_t>(cref)].lits;
  return lit_value(lits[0]) == Value::True && reasons_[static_cast<std::size_t>(lits[0] >> 1)] == cref;
}

void Solver::reduce_learnts() {
  std::vector<int> candidates;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const auto& c = clauses_[i];
    if (c.learnt && !c.deleted && c.lits.size() > 2) candidates.push_back(static_cast<int>(i));
  }
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return clauses_[static_cast<std::size_t>(a)].activity < clauses_[static_cast<std::size_t>(b)].activity;
  });
  bool any = false;
  for (std::size_t i = 0; i < candidates.size() / 2; ++i) {
    const int cref = candidates[i];
    if (locked(cref)) continue;
    auto& c = clauses_[static_cast<std::size_t>(cref)];
    c.deleted = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    --learnt_count_;
    any = true;
  }
  if (any) {
    for (auto& ws : watches_) {
      std::erase_if(ws, [&](const Watcher& w) { return clauses_[static_cast<std::size_t>(w.cref)].deleted; });
    }
  }
  max_learnts_ *= 1.1;
}

void Solver::heap_insert(int var) {
  heap_index_[static_cast<std::size_t>(var)] = static_cast<int>(heap_.size());
  heap_.push_back(var);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t pos) {
  const int var = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_less(var, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_index_[static_cast<std::size_t>(heap_[pos])] = static_cast<int>(pos);
    pos = parent;
  }
  heap_[pos] = var;
  heap_index_[static_cast<std::size_t>(var)] = static_cast<int>(pos);
}

void Solver::heap_down(std::size_t pos) {
  const int var = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], var)) break;
    heap_[pos] = heap_[child];
    heap_index_[static_cast<std::size_t>(heap_[pos])] = static_cast<int>(pos);
    pos = child;
  }
  heap_[pos] = var;
  heap_index_[static_cast<std::size_t>(var)] = static_cast<int>(pos);
}

std::vector<Model> Solver::solve_all() {
  std::vector<Model> models;
  if (unsatisfiable_) return models;
  max_learnts_ = std::max(1000.0, static_cast<double>(clauses_.size()) / 3.0);
  std::uint64_t restart_index = 0;
  std::uint64_t conflicts_since_restart = 0;
  double restart_limit = luby(restart_index) * options_.luby_unit;

  for (;;) {
    const int conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      ++conflicts_since_restart;
      if (assignment_.decision_level() == 0) {
        unsatisfiable_ = true;
        break;
      }
      backjump_and_learn(conflict);
      continue;
    }

    if (callback_ != nullptr) {
      ++stats_.callback_calls;
      CallbackOutcome outcome = callback_->on_fixpoint(assignment_);
      if (auto* learned = std::get_if<LearnedClause>(&outcome)) {
        ++stats_.callback_clauses;
        ++stats_.conflicts;
        ++conflicts_since_restart;
        if (!handle_external_clause(std::move(learned->clause))) break;
        continue;
      }
    }

    // Restarts stop once a solution exists so the enumeration stays systematic.
    if (options_.restarts && stats_.solutions == 0 && conflicts_since_restart >= restart_limit) {
      cancel_until(0);
      ++stats_.restarts;
      conflicts_since_restart = 0;
      restart_limit = luby(++restart_index) * options_.luby_unit;
      continue;
    }
    if (static_cast<double>(learnt_count_) >= max_learnts_ + static_cast<double>(assignment_.trail_.size())) {
      reduce_learnts();
    }

    const int next = pick_branch_literal();
    if (next < 0) {
      Model model(assignment_.values_.size());
      Clause blocking;
      for (std::size_t v = 0; v < model.size(); ++v) {
        model[v] = assignment_.values_[v] == Value::True;
        blocking.push_back({static_cast<int>(v), !model[v]});
      }
      models.push_back(std::move(model));
      ++stats_.solutions;
      if (options_.max_solutions != 0 && models.size() >= options_.max_solutions) break;
      ++stats_.conflicts;
      if (!handle_external_clause(std::move(blocking))) break;
      continue;
    }
    ++stats_.decisions;
    assignment_.trail_limits_.push_back(assignment_.trail_.size());
    enqueue(next, kNoReason);
  }
  cancel_until(0);
  return models;
}

std::vector<Model> solve_all(const CnfFormula& formula, SolverCallback* callback, SolverStats* stats,
                             SolverOptions options) {
  Solver solver(formula.variable_count, options);
  solver.set_callback(callback);
  std::vector<Model> models;
  if (solver.add_formula(formula)) models = solver.solve_all();
  if (stats != nullptr) *stats = solver.stats();
  return models;
}

bool satisfies(const CnfFormula& formula, const Model& model) {
  for (const auto& clause : formula.clauses) {
    const bool ok = std::any_of(clause.begin(), clause.end(), [&](const Literal& l) {
      return model[static_cast<std::size_t>(l.var)] == l.positive;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace williamson
