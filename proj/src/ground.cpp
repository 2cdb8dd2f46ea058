#include "modelforge/ground.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace modelforge::ground {

using flatten::BuiltinOp;
using flatten::FlatArg;
using flatten::FlatLiteral;
using lang::SymbolKind;

namespace {

// Builtin equality/order relations carry no propositional variables, and
// answer relations never survive into the search.
bool needs_encoding(const Symbol& sym) {
  return !sym.is_equality && !sym.is_order && !sym.is_answer;
}

int tuple_arity(const Symbol& sym) {
  return sym.kind == SymbolKind::Function ? sym.arity + 1 : sym.arity;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Approximate bytes for one stored ground clause.
long long clause_bytes(std::size_t literals) {
  return 24 + 4 * static_cast<long long>(literals);
}

}  // namespace

VariableMap::VariableMap(const SymbolTable& symbols, int domain_size)
    : n_(domain_size) {
  long long next = 1;
  for (const auto& sym : symbols.all()) {
    if (!needs_encoding(*sym)) continue;
    Entry e;
    e.base = next;
    e.tuple_arity = tuple_arity(*sym);
    next += ipow(n_, e.tuple_arity);
    order_.push_back(sym.get());
    entries_.push_back(e);
  }
  total_ = next - 1;
  if (total_ > (1LL << 30))
    throw InputError("propositional encoding would exceed 2^30 variables");
}

int VariableMap::entry_index(const Symbol* sym) const {
  for (std::size_t i = 0; i < order_.size(); ++i)
    if (order_[i] == sym) return static_cast<int>(i);
  return -1;
}

bool VariableMap::encodes(const Symbol* sym) const {
  return entry_index(sym) >= 0;
}

int VariableMap::encode(const Symbol* sym, std::span<const int> tuple) const {
  int idx = entry_index(sym);
  assert(idx >= 0 && "symbol has no propositional block");
  const Entry& e = entries_[idx];
  assert(static_cast<int>(tuple.size()) == e.tuple_arity);
  long long offset = 0;
  for (int d : tuple) {
    assert(d >= 0 && d < n_);
    offset = offset * n_ + d;
  }
  return static_cast<int>(e.base + offset);
}

std::pair<const Symbol*, std::vector<int>> VariableMap::decode(int var) const {
  assert(var >= 1 && var <= total_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    long long size = ipow(n_, entries_[i].tuple_arity);
    if (var < entries_[i].base + size) {
      long long offset = var - entries_[i].base;
      std::vector<int> tuple(entries_[i].tuple_arity, 0);
      for (int j = entries_[i].tuple_arity - 1; j >= 0; --j) {
        tuple[j] = static_cast<int>(offset % n_);
        offset /= n_;
      }
      return {order_[i], tuple};
    }
  }
  assert(false && "variable outside every block");
  return {nullptr, {}};
}

namespace {

int resolve(const FlatArg& a, const std::vector<int>& assignment) {
  return a.is_var ? assignment[a.index] : a.index;
}

// Appends `lit` unless already present; returns false when the clause
// becomes a tautology.
bool push_literal(std::vector<int>& clause, int lit) {
  for (int l : clause) {
    if (l == lit) return true;
    if (l == -lit) return false;
  }
  clause.push_back(lit);
  return true;
}

}  // namespace

std::vector<std::vector<int>> instantiate(const FlatClause& flat,
                                          const VariableMap& map,
                                          GroundStats* stats,
                                          MemoryMeter* meter,
                                          const Deadline* deadline) {
  const int n = map.domain_size();
  std::vector<std::vector<int>> out;
  std::vector<int> assignment(std::max(flat.var_count, 1), 0);
  long long candidates = ipow(n, flat.var_count);
  std::vector<int> clause;
  std::vector<int> tuple;
  for (long long c = 0; c < candidates; ++c) {
    if (stats != nullptr) ++stats->raw_candidates;
    if (deadline != nullptr && (c & 0xfff) == 0) deadline->check();
    clause.clear();
    bool deleted = false;
    for (const FlatLiteral& lit : flat.literals) {
      if (lit.builtin || lit.atom.relation->is_equality ||
          lit.atom.relation->is_order) {
        int lhs, rhs;
        bool less;
        if (lit.builtin) {
          lhs = resolve(lit.lhs, assignment);
          rhs = resolve(lit.rhs, assignment);
          less = lit.op == BuiltinOp::Less;
        } else {
          lhs = resolve(lit.atom.args[0], assignment);
          rhs = resolve(lit.atom.args[1], assignment);
          less = lit.atom.relation->is_order;
        }
        bool holds = less ? lhs < rhs : lhs == rhs;
        if (holds == lit.positive) {
          deleted = true;  // literal true, candidate clause satisfied
          break;
        }
        continue;  // literal false, dropped
      }
      tuple.clear();
      for (const FlatArg& a : lit.atom.args)
        tuple.push_back(resolve(a, assignment));
      int var = map.encode(lit.atom.relation, tuple);
      if (!push_literal(clause, lit.positive ? var : -var)) {
        deleted = true;  // tautology
        break;
      }
    }
    if (!deleted) {
      if (meter != nullptr) meter->charge(clause_bytes(clause.size()));
      out.push_back(clause);
    }
    // Odometer over the flat variables, last variable fastest.
    for (int i = flat.var_count - 1; i >= 0; --i) {
      if (++assignment[i] < n) break;
      assignment[i] = 0;
    }
    if (flat.var_count == 0) break;
  }
  return out;
}

std::vector<std::vector<int>> function_axiom_clauses(
    const flatten::FunctionAxiomSchema& schema, const VariableMap& map) {
  const Symbol* f = schema.function;
  assert(f->kind == SymbolKind::Function);
  const int n = map.domain_size();
  const int a = f->arity;
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(a + 1, 0);
  long long arg_tuples = ipow(n, a);
  for (long long t = 0; t < arg_tuples; ++t) {
    long long rest = t;
    for (int i = a - 1; i >= 0; --i) {
      tuple[i] = static_cast<int>(rest % n);
      rest /= n;
    }
    if (schema.kind == flatten::AxiomKind::Closed) {
      std::vector<int> clause;
      clause.reserve(n);
      for (int v = 0; v < n; ++v) {
        tuple[a] = v;
        clause.push_back(map.encode(f, tuple));
      }
      out.push_back(std::move(clause));
    } else {
      for (int u = 0; u < n; ++u) {
        tuple[a] = u;
        int pu = map.encode(f, tuple);
        for (int w = u + 1; w < n; ++w) {
          tuple[a] = w;
          out.push_back({-pu, -map.encode(f, tuple)});
        }
      }
    }
  }
  return out;
}

std::vector<int> encode_assign(const Constraint& c, const VariableMap& map) {
  if (!map.encodes(c.symbol))
    throw InputError("cannot assign a value to builtin symbol '" +
                     c.symbol->name + "'");
  std::vector<int> tuple = c.cell;
  if (c.kind == Constraint::Kind::AssignFunction) {
    tuple.push_back(c.value);
    return {map.encode(c.symbol, tuple)};
  }
  int var = map.encode(c.symbol, tuple);
  return {c.value != 0 ? var : -var};
}

std::vector<std::vector<int>> encode_property(const Constraint& c,
                                              const VariableMap& map) {
  assert(c.kind == Constraint::Kind::Property);
  const int n = map.domain_size();
  std::vector<std::vector<int>> out;
  switch (c.prop) {
    case Constraint::Prop::Equality:
    case Constraint::Prop::Order:
      // Handled at grounding time as builtin evaluation; no clauses.
      return out;
    case Constraint::Prop::Bijection: {
      // Injectivity of a unary function; surjectivity follows on a finite
      // domain.
      for (int v = 0; v < n; ++v)
        for (int x1 = 0; x1 < n; ++x1)
          for (int x2 = x1 + 1; x2 < n; ++x2) {
            std::vector<int> t1 = {x1, v};
            std::vector<int> t2 = {x2, v};
            out.push_back(
                {-map.encode(c.symbol, t1), -map.encode(c.symbol, t2)});
          }
      return out;
    }
    case Constraint::Prop::Quasigroup: {
      // Each row and each column is a permutation of the domain.
      for (int r = 0; r < n; ++r)
        for (int v = 0; v < n; ++v)
          for (int c1 = 0; c1 < n; ++c1)
            for (int c2 = c1 + 1; c2 < n; ++c2) {
              std::vector<int> t1 = {r, c1, v};
              std::vector<int> t2 = {r, c2, v};
              out.push_back(
                  {-map.encode(c.symbol, t1), -map.encode(c.symbol, t2)});
            }
      for (int col = 0; col < n; ++col)
        for (int v = 0; v < n; ++v)
          for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = r1 + 1; r2 < n; ++r2) {
              std::vector<int> t1 = {r1, col, v};
              std::vector<int> t2 = {r2, col, v};
              out.push_back(
                  {-map.encode(c.symbol, t1), -map.encode(c.symbol, t2)});
            }
      return out;
    }
  }
  return out;
}

std::vector<std::vector<int>> encode_distinct_constants(
    const SymbolTable& symbols, const VariableMap& map) {
  std::vector<std::vector<int>> out;
  int next_element = 0;
  const int n = map.domain_size();
  for (const auto& sym : symbols.all()) {
    if (sym->kind != SymbolKind::Function || sym->arity != 0) continue;
    if (!map.encodes(sym.get())) continue;
    if (next_element >= n) break;  // the rest stay unconstrained
    std::vector<int> tuple = {next_element};
    out.push_back({map.encode(sym.get(), tuple)});
    ++next_element;
  }
  return out;
}

std::vector<std::vector<int>> encode_qg_symmetry(const SymbolTable& symbols,
                                                 const VariableMap& map) {
  std::vector<std::vector<int>> out;
  const Symbol* f = symbols.find("f");
  if (f == nullptr || f->kind != SymbolKind::Function || f->arity != 2)
    return out;
  const int n = map.domain_size();
  // f(x, n-1) <= x for each row x >= 1.
  for (int x = 1; x < n; ++x)
    for (int v = x + 1; v < n; ++v) {
      std::vector<int> tuple = {x, n - 1, v};
      out.push_back({-map.encode(f, tuple)});
    }
  return out;
}

GroundProblem build_ground_problem(const std::vector<FlatClause>& theory,
                                   const std::vector<Constraint>& constraints,
                                   const GroundOptions& options,
                                   const SymbolTable& symbols, int domain_size,
                                   std::ostream* trace, MemoryMeter* meter,
                                   const Deadline* deadline) {
  GroundProblem problem{{}, VariableMap(symbols, domain_size), domain_size, {}};
  auto add = [&](std::vector<std::vector<int>>&& clauses) {
    if (meter != nullptr)
      for (const auto& c : clauses) meter->charge(clause_bytes(c.size()));
    problem.clauses.insert(problem.clauses.end(),
                           std::make_move_iterator(clauses.begin()),
                           std::make_move_iterator(clauses.end()));
  };

  for (const FlatClause& fc : theory)
    add(instantiate(fc, problem.map, &problem.stats, meter, deadline));

  // Functionality axioms, widest relations first.
  std::vector<const Symbol*> functions;
  for (const auto& sym : symbols.all())
    if (sym->kind == SymbolKind::Function && problem.map.encodes(sym.get()))
      functions.push_back(sym.get());
  std::stable_sort(functions.begin(), functions.end(),
                   [](const Symbol* a, const Symbol* b) {
                     return a->arity > b->arity;
                   });
  for (const Symbol* f : functions) {
    add(function_axiom_clauses({f, flatten::AxiomKind::Closed}, problem.map));
    add(function_axiom_clauses({f, flatten::AxiomKind::WellDefined},
                               problem.map));
    if (trace != nullptr)
      *trace << "Function " << f->name << "/" << f->arity + 1
             << " well-defined and closed.\n";
  }

  for (const Constraint& c : constraints) {
    if (c.kind == Constraint::Kind::Property)
      add(encode_property(c, problem.map));
    else
      add({encode_assign(c, problem.map)});
  }
  if (options.distinct_constants)
    add(encode_distinct_constants(symbols, problem.map));
  if (options.qg_symmetry) add(encode_qg_symmetry(symbols, problem.map));
  return problem;
}

}  // namespace modelforge::ground
