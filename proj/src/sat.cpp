#include "modelforge/sat.hpp"

#include <cassert>
#include <cstdlib>
#include <istream>
#include <string>

namespace modelforge::sat {

Cnf parse_integer_stream(std::istream& in) {
  Cnf cnf;
  std::vector<int> clause;
  std::string token;
  bool open = false;
  while (in >> token) {
    char* end = nullptr;
    long value = std::strtol(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0')
      throw InputError("expected an integer, got '" + token + "'");
    if (value == 0) {
      cnf.clauses.push_back(clause);
      clause.clear();
      open = false;
      continue;
    }
    open = true;
    int lit = static_cast<int>(value);
    clause.push_back(lit);
    cnf.num_vars = std::max(cnf.num_vars, std::abs(lit));
  }
  if (open) throw InputError("clause not terminated by 0");
  return cnf;
}

Solver::Solver(Cnf cnf, MemoryMeter* meter, const std::atomic<bool>* interrupt)
    : num_vars_(cnf.num_vars), interrupt_(interrupt), meter_(meter) {
  value_.assign(num_vars_ + 1, 0);
  occurs_.assign(num_vars_ + 1, false);
  occ_pos_.resize(num_vars_ + 1);
  occ_neg_.resize(num_vars_ + 1);
  clauses_.reserve(cnf.clauses.size());
  long long literal_count = 0;
  for (std::vector<int>& lits : cnf.clauses) {
    int idx = static_cast<int>(clauses_.size());
    ClauseState cs;
    cs.lits = std::move(lits);
    cs.unassigned = static_cast<int>(cs.lits.size());
    literal_count += cs.unassigned;
    for (int lit : cs.lits) {
      int v = std::abs(lit);
      assert(v >= 1 && v <= num_vars_);
      occurs_[v] = true;
      (lit > 0 ? occ_pos_ : occ_neg_)[v].push_back(idx);
    }
    clauses_.push_back(std::move(cs));
  }
  for (int v = 1; v <= num_vars_; ++v)
    if (occurs_[v]) ++unassigned_occurring_;
  if (meter_ != nullptr) {
    // Clause storage plus two occurrence entries per literal.
    charged_bytes_ = 12 * literal_count +
                     48 * static_cast<long long>(clauses_.size()) +
                     8 * static_cast<long long>(num_vars_ + 1);
    meter_->charge(charged_bytes_);
  }
}

Solver::~Solver() {
  if (meter_ != nullptr) meter_->release(charged_bytes_);
}

bool Solver::clause_satisfied(const ClauseState& c) const {
  if (use_subsumption_) return c.subsumed_by != 0;
  for (int lit : c.lits) {
    int v = value_[std::abs(lit)];
    if (v != 0 && (v > 0) == (lit > 0)) return true;
  }
  return false;
}

// Assigns var := value and updates counters; queues implied units.  Returns
// false on conflict.
bool Solver::assign(int var, int value, bool /*unused*/) {
  assert(value_[var] == 0);
  value_[var] = static_cast<signed char>(value);
  trail_.push_back(var);
  if (occurs_[var]) --unassigned_occurring_;
  if (use_subsumption_) {
    for (int ci : (value > 0 ? occ_pos_ : occ_neg_)[var]) {
      ClauseState& c = clauses_[ci];
      if (c.subsumed_by == 0) c.subsumed_by = var;
    }
  }
  bool ok = true;
  for (int ci : (value > 0 ? occ_neg_ : occ_pos_)[var]) {
    ClauseState& c = clauses_[ci];
    --c.unassigned;
    if (!ok) continue;
    if (use_subsumption_ && c.subsumed_by != 0) continue;
    if (c.unassigned == 0) {
      if (!clause_satisfied(c)) ok = false;
    } else if (c.unassigned == 1) {
      if (clause_satisfied(c)) continue;
      for (int lit : c.lits) {
        if (value_[std::abs(lit)] == 0) {
          queue_.push_back(lit);
          break;
        }
      }
    }
  }
  return ok;
}

bool Solver::propagate() {
  while (!queue_.empty()) {
    int lit = queue_.back();
    queue_.pop_back();
    int var = std::abs(lit);
    if (value_[var] != 0) {
      if ((value_[var] > 0) != (lit > 0)) {
        queue_.clear();
        return false;
      }
      continue;
    }
    ++stats_.propagations;
    if (!assign(var, lit > 0 ? 1 : -1, true)) {
      queue_.clear();
      return false;
    }
  }
  return true;
}

void Solver::undo_to(std::size_t mark) {
  while (trail_.size() > mark) {
    int var = trail_.back();
    trail_.pop_back();
    int value = value_[var];
    value_[var] = 0;
    if (occurs_[var]) ++unassigned_occurring_;
    for (int ci : (value > 0 ? occ_neg_ : occ_pos_)[var])
      ++clauses_[ci].unassigned;
    if (use_subsumption_) {
      for (int ci : (value > 0 ? occ_pos_ : occ_neg_)[var]) {
        ClauseState& c = clauses_[ci];
        if (c.subsumed_by != var) continue;
        c.subsumed_by = 0;
        for (int lit : c.lits) {
          int v = value_[std::abs(lit)];
          if (v != 0 && (v > 0) == (lit > 0)) {
            c.subsumed_by = std::abs(lit);
            break;
          }
        }
      }
    }
  }
  queue_.clear();
}

// The splitting rule: first variable of the first shortest positive clause;
// if no positive clause remains, first variable of the first shortest
// unsatisfied clause.  Returns {0, 0} when every clause is satisfied.
std::pair<int, int> Solver::choose_split() const {
  int best_positive = -1, best_positive_len = 0;
  int best_any = -1, best_any_len = 0;
  for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
    const ClauseState& c = clauses_[ci];
    if (c.unassigned == 0 || clause_satisfied(c)) continue;
    bool positive = true;
    for (int lit : c.lits)
      if (lit < 0 && value_[-lit] == 0) {
        positive = false;
        break;
      }
    if (positive && (best_positive < 0 || c.unassigned < best_positive_len)) {
      best_positive = static_cast<int>(ci);
      best_positive_len = c.unassigned;
    }
    if (best_any < 0 || c.unassigned < best_any_len) {
      best_any = static_cast<int>(ci);
      best_any_len = c.unassigned;
    }
  }
  int chosen = best_positive >= 0 ? best_positive : best_any;
  if (chosen < 0) return {0, 0};
  for (int lit : clauses_[chosen].lits)
    if (value_[std::abs(lit)] == 0)
      return {std::abs(lit), best_positive >= 0 ? 1 : (lit > 0 ? 1 : -1)};
  assert(false && "unsatisfied clause with no unassigned literal");
  return {0, 0};
}

void Solver::report_model(const ModelCallback& on_model) {
  ++models_found_;
  if (on_model) {
    Assignment model(num_vars_ + 1, false);
    for (int v = 1; v <= num_vars_; ++v) model[v] = value_[v] > 0;
    on_model(model);
  }
  if (models_found_ >= max_models_) {
    stopped_ = true;
    stop_status_ = SatStatus::ModelsFound;
  }
}

void Solver::search() {
  if (stopped_) return;
  deadline_.check();
  if (interrupt_ != nullptr && interrupt_->load(std::memory_order_relaxed))
    throw Interrupted{};

  auto [var, first_value] = choose_split();
  if (var == 0) {
    if (unassigned_occurring_ > 0) {
      // All clauses satisfied but some clause variables are free; enumerate
      // both values so the model count matches total assignments.
      for (int v = 1; v <= num_vars_; ++v)
        if (occurs_[v] && value_[v] == 0) {
          var = v;
          break;
        }
      first_value = 1;
    } else {
      report_model(*on_model_);
      return;
    }
  } else {
    ++stats_.splits;
    if (stats_.first_split_var == 0) stats_.first_split_var = var;
  }

  for (int attempt = 0; attempt < 2; ++attempt) {
    if (stopped_) {
      abandoned_ = true;  // the sibling branch is never explored
      break;
    }
    int value = attempt == 0 ? first_value : -first_value;
    std::size_t mark = trail_.size();
    if (assign(var, value, true) && propagate()) search();
    undo_to(mark);
  }
}

SatOutcome Solver::solve(const SatLimits& limits, const ModelCallback& on_model) {
  return solve(limits, Deadline::after_seconds(limits.max_seconds), on_model);
}

SatOutcome Solver::solve(const SatLimits& limits, const Deadline& deadline,
                         const ModelCallback& on_model) {
  use_subsumption_ = limits.unit_subsumption;
  max_models_ = limits.max_models;
  deadline_ = deadline;
  models_found_ = 0;
  stopped_ = false;
  abandoned_ = false;
  on_model_ = &on_model;

  if (use_subsumption_) {
    // Unit subsumption marks from literals assigned before this call (none
    // at construction) plus fresh state.
    for (ClauseState& c : clauses_) c.subsumed_by = 0;
  }

  SatOutcome outcome;
  try {
    bool root_ok = true;
    // Unit clauses of the input propagate before any split.
    for (const ClauseState& c : clauses_)
      if (c.lits.empty()) root_ok = false;
    if (root_ok) {
      for (const ClauseState& c : clauses_)
        if (c.lits.size() == 1) queue_.push_back(c.lits[0]);
      root_ok = propagate();
    }
    if (root_ok) search();
    undo_to(0);
  } catch (const TimeLimitReached&) {
    undo_to(0);
    outcome.status = SatStatus::TimeLimit;
    outcome.models = models_found_;
    return outcome;
  } catch (const MemoryLimitReached&) {
    undo_to(0);
    outcome.status = SatStatus::MemoryLimit;
    outcome.models = models_found_;
    return outcome;
  }

  outcome.models = models_found_;
  if (models_found_ == 0) {
    outcome.status = SatStatus::Unsatisfiable;
  } else {
    outcome.status = SatStatus::ModelsFound;
    outcome.exhausted = !abandoned_;
  }
  return outcome;
}

}  // namespace modelforge::sat
