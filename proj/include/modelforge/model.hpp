#pragma once

#include <string>
#include <vector>

#include "modelforge/ground.hpp"
#include "modelforge/lang.hpp"
#include "modelforge/sat.hpp"

namespace modelforge::model {

using ground::VariableMap;
using lang::Clause;
using lang::Symbol;

// First-order model over the domain {0..n-1}.  Tables are row-major over
// argument tuples; relation tables hold 0/1.
struct FirstOrderModel {
  struct Table {
    const Symbol* symbol = nullptr;
    std::vector<int> values;
  };
  int n = 0;
  std::vector<Table> functions;  // constants first, then appearance order
  std::vector<Table> relations;  // appearance order

  const Table* function_table(const Symbol* sym) const;
  const Table* relation_table(const Symbol* sym) const;
};

// Reads the function and relation tables out of a propositional model.
// Requires the assignment to satisfy the well-definedness and closure
// axioms; a violation indicates an encoding or solver bug.
FirstOrderModel extract(const sat::Assignment& assignment,
                        const VariableMap& map);

// Independent soundness check: every clause must hold under every assignment
// of domain elements to its variables, with terms evaluated bottom-up and
// equality as identity.
bool verify(const FirstOrderModel& model, const std::vector<Clause>& theory);

std::string print_tabular(const FirstOrderModel& model, int index,
                          double seconds);
std::string print_parsable(const FirstOrderModel& model);
std::string print_ivy(const FirstOrderModel& model);

}  // namespace modelforge::model
