#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "modelforge/common.hpp"
#include "modelforge/flatten.hpp"
#include "modelforge/lang.hpp"

namespace modelforge::ground {

using flatten::FlatClause;
using lang::Constraint;
using lang::Symbol;
using lang::SymbolTable;

// Bijection between (relation, argument tuple) pairs and the propositional
// variables 1..total.  A function symbol f/k is encoded as a k+1-ary
// relation.  Variables for one relation form a contiguous block in mixed
// radix, blocks follow symbol appearance order.
class VariableMap {
 public:
  VariableMap(const SymbolTable& symbols, int domain_size);

  int encode(const Symbol* sym, std::span<const int> tuple) const;
  std::pair<const Symbol*, std::vector<int>> decode(int var) const;

  bool encodes(const Symbol* sym) const;
  int domain_size() const { return n_; }
  long long total_vars() const { return total_; }
  // Encoded symbols in block order.
  const std::vector<const Symbol*>& relations() const { return order_; }

 private:
  struct Entry {
    long long base = 0;  // first variable of the block, 1-based
    int tuple_arity = 0;
  };
  int entry_index(const Symbol* sym) const;

  int n_;
  long long total_ = 0;
  std::vector<const Symbol*> order_;
  std::vector<Entry> entries_;
};

struct GroundOptions {
  bool distinct_constants = false;  // -c
  bool qg_symmetry = false;         // -x
};

struct GroundStats {
  long long raw_candidates = 0;  // instantiations before any simplification
};

struct GroundProblem {
  std::vector<std::vector<int>> clauses;
  VariableMap map;
  int n;
  GroundStats stats;
};

// Instantiates one flat clause over {0..n-1}.  Builtin literals evaluate at
// grounding time: a true literal deletes the candidate clause, a false one
// is dropped.  Duplicate literals are merged and tautologies deleted.
std::vector<std::vector<int>> instantiate(const FlatClause& flat,
                                          const VariableMap& map,
                                          GroundStats* stats = nullptr,
                                          MemoryMeter* meter = nullptr,
                                          const Deadline* deadline = nullptr);

// Totality/functionality axioms for one function symbol.
std::vector<std::vector<int>> function_axiom_clauses(
    const flatten::FunctionAxiomSchema& schema, const VariableMap& map);

std::vector<int> encode_assign(const Constraint& c, const VariableMap& map);

std::vector<std::vector<int>> encode_property(const Constraint& c,
                                              const VariableMap& map);

std::vector<std::vector<int>> encode_distinct_constants(
    const SymbolTable& symbols, const VariableMap& map);

// Isomorphism-cutting units behind -x: for the binary function named "f"
// and each row x >= 1, the value f(x, n-1) may not exceed x.
std::vector<std::vector<int>> encode_qg_symmetry(const SymbolTable& symbols,
                                                 const VariableMap& map);

GroundProblem build_ground_problem(const std::vector<FlatClause>& theory,
                                   const std::vector<Constraint>& constraints,
                                   const GroundOptions& options,
                                   const SymbolTable& symbols, int domain_size,
                                   std::ostream* trace = nullptr,
                                   MemoryMeter* meter = nullptr,
                                   const Deadline* deadline = nullptr);

}  // namespace modelforge::ground
