#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "modelforge/flatten.hpp"
#include "modelforge/ground.hpp"
#include "modelforge/search.hpp"

namespace py = pybind11;
using namespace modelforge;

namespace {

// Tables keyed by "name/arity"; function tables are value lists in row-major
// tuple order, relation tables are 0/1 lists.
py::dict model_to_dict(const model::FirstOrderModel& m) {
  py::dict d;
  d["size"] = m.n;
  py::dict functions, relations;
  for (const auto& t : m.functions)
    functions[py::str(t.symbol->name)] = t.values;
  for (const auto& t : m.relations)
    relations[py::str(t.symbol->name)] = t.values;
  d["functions"] = functions;
  d["relations"] = relations;
  return d;
}

py::dict search_models(const std::string& input_text, int start_n, int end_n,
                long long max_models, double max_seconds, long long max_kbytes,
                bool distinct_constants, bool qg_symmetry) {
  search::SearchConfig config;
  config.start_n = start_n;
  config.end_n = end_n;
  config.max_models = max_models;
  config.max_seconds = max_seconds;
  config.max_kbytes = max_kbytes;
  config.distinct_constants = distinct_constants;
  config.qg_symmetry = qg_symmetry;

  std::ostringstream trace;
  py::list models;
  std::vector<int> sizes;
  search::SearchReport report = search::run_search(
      input_text, config, trace,
      [&](const model::FirstOrderModel& m, int n) {
        models.append(model_to_dict(m));
        sizes.push_back(n);
      });

  py::dict out;
  out["exit_code"] = static_cast<int>(report.code);
  out["models"] = models;
  out["domain_sizes"] = sizes;
  out["trace"] = trace.str();
  return out;
}

py::dict solve_cnf(const std::vector<std::vector<int>>& clauses,
                   long long max_models, double max_seconds,
                   long long max_kbytes, bool unit_subsumption) {
  sat::Cnf cnf;
  for (const auto& c : clauses) {
    for (int lit : c) {
      if (lit == 0) throw InputError("literal 0 is not allowed");
      cnf.num_vars = std::max(cnf.num_vars, std::abs(lit));
    }
    cnf.clauses.push_back(c);
  }
  MemoryMeter meter(max_kbytes);
  sat::Solver solver(std::move(cnf), &meter);
  sat::SatLimits limits;
  limits.max_models = max_models;
  limits.max_seconds = max_seconds;
  limits.max_kbytes = max_kbytes;
  limits.unit_subsumption = unit_subsumption;
  py::list models;
  int num_vars = 0;
  for (const auto& c : clauses)
    for (int lit : c) num_vars = std::max(num_vars, std::abs(lit));
  sat::SatOutcome outcome =
      solver.solve(limits, [&](const sat::Assignment& a) {
        std::vector<int> lits;
        for (int v = 1; v <= num_vars; ++v) lits.push_back(a[v] ? v : -v);
        models.append(lits);
      });
  py::dict out;
  const char* status = "unsatisfiable";
  switch (outcome.status) {
    case sat::SatStatus::Unsatisfiable: status = "unsatisfiable"; break;
    case sat::SatStatus::ModelsFound: status = "models_found"; break;
    case sat::SatStatus::TimeLimit: status = "time_limit"; break;
    case sat::SatStatus::MemoryLimit: status = "memory_limit"; break;
  }
  out["status"] = status;
  out["models"] = models;
  out["model_count"] = outcome.models;
  out["exhausted"] = outcome.exhausted;
  return out;
}

std::vector<std::string> flatten_input(const std::string& input_text) {
  lang::InputProblem problem = lang::parse_input(input_text);
  std::vector<std::string> out;
  for (const lang::Clause& c : problem.theory)
    for (const flatten::FlatClause& fc : flatten::flatten_clause(c))
      out.push_back(flatten::to_string(fc));
  return out;
}

std::vector<std::string> filter_identities(const std::string& equations,
                                           int max_n) {
  std::istringstream in(equations);
  std::ostringstream diagnostics;
  return search::filter_identities(in, max_n, diagnostics);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite model finder for first-order statements";

  m.def("search", &search_models, py::arg("input_text"), py::arg("start_n") = 2,
        py::arg("end_n") = -1, py::arg("max_models") = 1,
        py::arg("max_seconds") = -1.0, py::arg("max_kbytes") = 48000,
        py::arg("distinct_constants") = false, py::arg("qg_symmetry") = false,
        "Search for finite models of an input theory over sizes "
        "start_n..end_n; returns exit_code, models, domain_sizes, trace.");

  m.def("solve_cnf", &solve_cnf, py::arg("clauses"), py::arg("max_models") = 1,
        py::arg("max_seconds") = -1.0, py::arg("max_kbytes") = 48000,
        py::arg("unit_subsumption") = false,
        "Decide a propositional CNF given as lists of nonzero integers.");

  m.def("flatten", &flatten_input, py::arg("input_text"),
        "Parse and clausify an input theory and return the flattened "
        "(relational-form) clauses as strings.");

  m.def("filter_identities", &filter_identities, py::arg("equations"),
        py::arg("max_n") = 4,
        "Keep the equations (one per line) that force f(0,1) = f(1,0) in "
        "every model of size 2..max_n.");

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
}
