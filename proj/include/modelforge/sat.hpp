#pragma once

#include <atomic>
#include <functional>
#include <iosfwd>
#include <vector>

#include "modelforge/common.hpp"

namespace modelforge::sat {

// Propositional CNF over variables 1..num_vars; literals are nonzero signed
// integers.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// Reads the integer-stream format: whitespace-separated integers, 0 ends a
// clause.  A trailing unterminated clause is an error.
Cnf parse_integer_stream(std::istream& in);

struct SatLimits {
  long long max_models = 1;
  double max_seconds = -1;  // unlimited when negative
  long long max_kbytes = 48000;
  bool unit_subsumption = false;
};

enum class SatStatus { Unsatisfiable, ModelsFound, TimeLimit, MemoryLimit };

struct SatOutcome {
  SatStatus status = SatStatus::Unsatisfiable;
  long long models = 0;
  bool exhausted = false;  // search space completed after finding >= 1 model
};

// Assignment over variables 1..num_vars (index 0 unused).
using Assignment = std::vector<bool>;
using ModelCallback = std::function<void(const Assignment&)>;

struct SolverStats {
  long long splits = 0;
  long long propagations = 0;
  int first_split_var = 0;
};

// Backtracking decision procedure: unit propagation to a fixpoint after each
// split; the split variable is the first variable of the first shortest
// all-positive clause, tried true first.  Models are enumerated by
// backtracking from each satisfying assignment as if it were refuted.
// Variables that occur in no clause are reported false and counted once.
class Solver {
 public:
  explicit Solver(Cnf cnf, MemoryMeter* meter = nullptr,
                  const std::atomic<bool>* interrupt = nullptr);
  ~Solver();

  SatOutcome solve(const SatLimits& limits, const ModelCallback& on_model);
  // Variant with an externally managed deadline (shared across domain sizes).
  SatOutcome solve(const SatLimits& limits, const Deadline& deadline,
                   const ModelCallback& on_model);

  const SolverStats& stats() const { return stats_; }

 private:
  struct ClauseState {
    std::vector<int> lits;
    int unassigned = 0;
    int subsumed_by = 0;  // variable that satisfied the clause (with -s)
  };

  bool assign(int var, int value, bool propagate_queue);
  bool propagate();
  void undo_to(std::size_t mark);
  bool clause_satisfied(const ClauseState& c) const;
  // Returns {var, first_value}; var 0 means every clause is satisfied.
  std::pair<int, int> choose_split() const;
  void search();
  void report_model(const ModelCallback& on_model);

  std::vector<ClauseState> clauses_;
  std::vector<std::vector<int>> occ_pos_, occ_neg_;  // clause indices
  std::vector<signed char> value_;                   // 0, +1, -1
  std::vector<bool> occurs_;
  std::vector<int> trail_;
  std::vector<int> queue_;
  int num_vars_ = 0;
  int unassigned_occurring_ = 0;

  bool use_subsumption_ = false;
  long long max_models_ = 1;
  Deadline deadline_;
  const std::atomic<bool>* interrupt_ = nullptr;
  MemoryMeter* meter_ = nullptr;
  long long charged_bytes_ = 0;

  long long models_found_ = 0;
  bool stopped_ = false;
  bool abandoned_ = false;  // a branch was skipped after reaching max_models
  SatStatus stop_status_ = SatStatus::Unsatisfiable;
  const ModelCallback* on_model_ = nullptr;
  SolverStats stats_;
};

}  // namespace modelforge::sat
