#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "modelforge/common.hpp"

namespace modelforge::lang {

enum class SymbolKind { Function, Relation };

// Limits inherited from the external contract: functions up to arity 3,
// relations up to arity 4.
inline constexpr int kMaxFunctionArity = 3;
inline constexpr int kMaxRelationArity = 4;

struct Symbol {
  std::string name;
  SymbolKind kind;
  int arity;
  bool is_equality = false;  // evaluated as identity on domain elements
  bool is_order = false;     // evaluated as < on domain elements
  bool is_answer = false;    // $ans... literals, stripped before the search
  int appearance = 0;        // ordinal of first occurrence in the input
};

struct Settings {
  bool prolog_style_variables = false;
  bool tptp_eq = false;
};

// Token classification rules (free functions so they can be tested alone).
bool is_variable_token(std::string_view token, const Settings& settings);
bool is_equality_name(std::string_view name, const Settings& settings);
bool is_answer_name(std::string_view name);

// A symbol has exactly one kind and one arity across the whole input.
// intern() enforces that and the arity limits.
class SymbolTable {
 public:
  Symbol* intern(const std::string& name, SymbolKind kind, int arity,
                 const Settings& settings, int line = -1, int col = -1);
  Symbol* find(const std::string& name) const;
  const std::vector<std::unique_ptr<Symbol>>& all() const { return symbols_; }

 private:
  std::vector<std::unique_ptr<Symbol>> symbols_;
  std::map<std::string, Symbol*, std::less<>> by_name_;
};

struct Term {
  enum class Kind { Variable, DomainElement, Application };
  Kind kind;
  std::string var;               // Variable
  int element = -1;              // DomainElement
  const Symbol* symbol = nullptr;  // Application
  std::vector<Term> args;

  static Term variable(std::string name);
  static Term domain_element(int value);
  static Term application(const Symbol* sym, std::vector<Term> args);
  bool operator==(const Term& other) const;
};

// Atoms are uniformly relation applications; equality and order atoms carry
// a symbol with the corresponding flag set.
struct Literal {
  bool positive = true;
  const Symbol* relation = nullptr;
  std::vector<Term> args;
};

enum class SourceList { Usable, Sos, Demodulators, Passive };

struct Clause {
  std::vector<Literal> literals;
  SourceList source = SourceList::Usable;
};

struct Formula {
  enum class Kind { Atom, Not, And, Or, Imp, Iff, All, Exists };
  Kind kind = Kind::Atom;
  Literal atom;          // Kind::Atom (positive=true in well-formed input)
  std::string var;       // quantifiers
  std::vector<Formula> children;
};

// Model constraints from the mace_constraints list.
struct Constraint {
  enum class Kind { AssignFunction, AssignRelation, Property };
  enum class Prop { Equality, Order, Bijection, Quasigroup };
  Kind kind;
  const Symbol* symbol = nullptr;
  std::vector<int> cell;   // argument domain elements for assignments
  int value = -1;          // function value, or 1/0 for T/F
  Prop prop = Prop::Equality;
};

struct InputProblem {
  std::vector<Clause> theory;
  std::vector<Constraint> constraints;
  Settings settings;
  SymbolTable symbols;
  std::vector<std::string> warnings;
};

// Parses the whole input: clause/formula lists, commands, and the
// mace_constraints list.  Formulas are clausified on the spot; answer
// literals are stripped from every theory clause.
InputProblem parse_input(std::string_view text);

// Fresh-name counters for Skolem symbols ($c1, $f1, ...).
struct SkolemCounters {
  int constants = 0;
  int functions = 0;
};

std::vector<Clause> clausify(const Formula& formula, SymbolTable& symbols,
                             const Settings& settings, SourceList source,
                             SkolemCounters& counters);

// Deletes answer literals; rejects clauses that would become empty.
Clause strip_answer_literals(Clause clause);

// Checks that every domain-element constant fits the domain size.
void validate(const InputProblem& problem, int domain_size);

std::string to_string(const Term& term);
std::string to_string(const Literal& literal);
std::string to_string(const Clause& clause);

}  // namespace modelforge::lang
