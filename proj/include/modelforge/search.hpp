#pragma once

#include <atomic>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "modelforge/model.hpp"

namespace modelforge::search {

// Process exit codes shared by modelforge and anldp.
enum class ExitCode : int {
  Abend = 11,
  Unsatisfiable = 12,
  MaxSeconds = 13,
  MaxMem = 14,
  MaxModels = 15,
  AllModels = 16,
  Interrupt = 17,
  Segv = 18,
  InputError = 19,
};

struct SearchConfig {
  int start_n = 2;
  int end_n = -1;  // defaults to start_n
  bool distinct_constants = false;  // -c
  bool qg_symmetry = false;         // -x
  bool print_tabular = false;       // -p
  bool print_parsable = false;      // -P
  bool print_ivy = false;           // -I
  long long max_models = 1;         // -m
  double max_seconds = -1;          // -t, unlimited when negative
  long long max_kbytes = 48000;     // -k

  int last_n() const { return end_n < 0 ? start_n : end_n; }
};

struct SearchReport {
  ExitCode code = ExitCode::Unsatisfiable;
  long long models = 0;
};

// The model's symbol pointers refer to the parse owned by run_search and are
// valid only for the duration of the callback.
using FoundModelCallback =
    std::function<void(const model::FirstOrderModel&, int domain_size)>;

// Parses the input text once, then iterates domain sizes start_n..end_n,
// grounding and solving each.  Trace lines, warnings, and any requested
// model printouts go to `out`.  -m/-t/-k are global budgets across sizes.
SearchReport run_search(std::string_view input_text, const SearchConfig& config,
                        std::ostream& out,
                        const FoundModelCallback& on_model = nullptr);

// Batch equation filter: one equation over binary f per line; an equation is
// printed iff the theory {equation, f(0,1) != f(1,0)} has no model of size
// 2..max_n.  Returns the surviving lines.
std::vector<std::string> filter_identities(std::istream& equations, int max_n,
                                           std::ostream& diagnostics);

// Cooperative interrupt flag set by the SIGINT handler.
std::atomic<bool>& interrupt_flag();

// Entry points used by the executables (kept here so tests can drive them).
int modelforge_main(int argc, char** argv);
int anldp_main(int argc, char** argv);

}  // namespace modelforge::search
