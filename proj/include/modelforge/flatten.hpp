#pragma once

#include <string>
#include <vector>

#include "modelforge/lang.hpp"

namespace modelforge::flatten {

using lang::Clause;
using lang::Symbol;

// Argument of a flat atom: either a flat variable v<index> or a domain
// element.
struct FlatArg {
  bool is_var = true;
  int index = 0;  // variable number or domain element value

  static FlatArg var(int i) { return {true, i}; }
  static FlatArg element(int e) { return {false, e}; }
  bool operator==(const FlatArg&) const = default;
};

// Relation atom over flat variables and domain elements.  For a function
// symbol f/k the atom has k+1 arguments with the value last.
struct FlatAtom {
  const Symbol* relation = nullptr;
  std::vector<FlatArg> args;
};

enum class BuiltinOp { Eq, Less };

struct FlatLiteral {
  bool positive = true;
  bool builtin = false;
  FlatAtom atom;          // when !builtin
  BuiltinOp op = BuiltinOp::Eq;  // when builtin
  FlatArg lhs, rhs;
};

struct FlatClause {
  std::vector<FlatLiteral> literals;
  int var_count = 0;  // flat variables are v0..v(var_count-1), dense
};

// Rewrites a clause into relational form.  A positive equality between two
// compound terms splits into two clauses (the sign-split of the outermost
// defining literals); every other clause maps to exactly one flat clause.
std::vector<FlatClause> flatten_clause(const Clause& clause);

enum class AxiomKind { WellDefined, Closed };

struct FunctionAxiomSchema {
  const Symbol* function = nullptr;
  AxiomKind kind = AxiomKind::Closed;
};

std::string to_string(const FlatClause& clause);

}  // namespace modelforge::flatten
