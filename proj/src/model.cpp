#include "modelforge/model.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace modelforge::model {

using lang::SymbolKind;
using lang::Term;

namespace {

long long power(int base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

int digits(int x) {
  int d = 1;
  while (x >= 10) {
    x /= 10;
    ++d;
  }
  return d;
}

}  // namespace

const FirstOrderModel::Table* FirstOrderModel::function_table(
    const Symbol* sym) const {
  for (const Table& t : functions)
    if (t.symbol == sym) return &t;
  return nullptr;
}

const FirstOrderModel::Table* FirstOrderModel::relation_table(
    const Symbol* sym) const {
  for (const Table& t : relations)
    if (t.symbol == sym) return &t;
  return nullptr;
}

FirstOrderModel extract(const sat::Assignment& assignment,
                        const VariableMap& map) {
  FirstOrderModel m;
  m.n = map.domain_size();
  const int n = m.n;
  for (const Symbol* sym : map.relations()) {
    if (sym->kind == SymbolKind::Function) {
      FirstOrderModel::Table table;
      table.symbol = sym;
      long long tuples = power(n, sym->arity);
      std::vector<int> args(sym->arity + 1, 0);
      for (long long t = 0; t < tuples; ++t) {
        long long rest = t;
        for (int i = sym->arity - 1; i >= 0; --i) {
          args[i] = static_cast<int>(rest % n);
          rest /= n;
        }
        int value = -1;
        for (int v = 0; v < n; ++v) {
          args[sym->arity] = v;
          if (assignment[map.encode(sym, args)]) {
            if (value >= 0)
              throw std::logic_error("function '" + sym->name +
                                     "' has two values for one cell");
            value = v;
          }
        }
        if (value < 0)
          throw std::logic_error("function '" + sym->name +
                                 "' is undefined on a cell");
        table.values.push_back(value);
      }
      m.functions.push_back(std::move(table));
    } else {
      FirstOrderModel::Table table;
      table.symbol = sym;
      long long tuples = power(n, sym->arity);
      std::vector<int> args(sym->arity, 0);
      for (long long t = 0; t < tuples; ++t) {
        long long rest = t;
        for (int i = sym->arity - 1; i >= 0; --i) {
          args[i] = static_cast<int>(rest % n);
          rest /= n;
        }
        table.values.push_back(assignment[map.encode(sym, args)] ? 1 : 0);
      }
      m.relations.push_back(std::move(table));
    }
  }
  // Constants first, then the other functions, both in appearance order.
  std::stable_partition(m.functions.begin(), m.functions.end(),
                        [](const FirstOrderModel::Table& t) {
                          return t.symbol->arity == 0;
                        });
  return m;
}

namespace {

// Bottom-up term evaluation under a variable environment.
int eval_term(const Term& t, const std::map<std::string, int>& env,
              const FirstOrderModel& m) {
  switch (t.kind) {
    case Term::Kind::DomainElement:
      return t.element;
    case Term::Kind::Variable: {
      auto it = env.find(t.var);
      assert(it != env.end());
      return it->second;
    }
    case Term::Kind::Application: {
      const FirstOrderModel::Table* table = m.function_table(t.symbol);
      if (table == nullptr)
        throw std::logic_error("no table for function '" + t.symbol->name +
                               "'");
      long long index = 0;
      for (const Term& a : t.args) index = index * m.n + eval_term(a, env, m);
      return table->values[index];
    }
  }
  return 0;
}

bool eval_literal(const lang::Literal& lit,
                  const std::map<std::string, int>& env,
                  const FirstOrderModel& m) {
  bool holds;
  if (lit.relation->is_equality) {
    holds = eval_term(lit.args[0], env, m) == eval_term(lit.args[1], env, m);
  } else if (lit.relation->is_order) {
    holds = eval_term(lit.args[0], env, m) < eval_term(lit.args[1], env, m);
  } else {
    const FirstOrderModel::Table* table = m.relation_table(lit.relation);
    if (table == nullptr)
      throw std::logic_error("no table for relation '" + lit.relation->name +
                             "'");
    long long index = 0;
    for (const Term& a : lit.args) index = index * m.n + eval_term(a, env, m);
    holds = table->values[index] != 0;
  }
  return holds == lit.positive;
}

void collect_vars(const Term& t, std::vector<std::string>& vars) {
  if (t.kind == Term::Kind::Variable) {
    for (const std::string& v : vars)
      if (v == t.var) return;
    vars.push_back(t.var);
    return;
  }
  for (const Term& a : t.args) collect_vars(a, vars);
}

}  // namespace

bool verify(const FirstOrderModel& model, const std::vector<Clause>& theory) {
  for (const Clause& clause : theory) {
    std::vector<std::string> vars;
    for (const lang::Literal& lit : clause.literals)
      for (const Term& t : lit.args) collect_vars(t, vars);
    long long assignments = power(model.n, static_cast<int>(vars.size()));
    for (long long a = 0; a < assignments; ++a) {
      std::map<std::string, int> env;
      long long rest = a;
      for (const std::string& v : vars) {
        env[v] = static_cast<int>(rest % model.n);
        rest /= model.n;
      }
      bool satisfied = false;
      for (const lang::Literal& lit : clause.literals)
        if (eval_literal(lit, env, model)) {
          satisfied = true;
          break;
        }
      if (!satisfied) return false;
    }
  }
  return true;
}

namespace {

std::string cell_text(const FirstOrderModel::Table& t, long long index) {
  if (t.symbol->kind == SymbolKind::Relation)
    return t.values[index] ? "T" : "F";
  return std::to_string(t.values[index]);
}

// One n x n block: header row, dashed rule, one line per row value.  `label`
// replaces the function name for slices of higher-arity tables.
void print_block(std::ostream& os, const std::string& label, int n, int width,
                 const FirstOrderModel::Table& t, long long base) {
  std::string prefix = label + ":";
  std::size_t bar = 3 + width + 1;  // column of the vertical bar
  if (prefix.size() + 1 > bar) bar = prefix.size() + 1;
  os << prefix << std::string(bar - prefix.size(), ' ') << '|';
  for (int c = 0; c < n; ++c) {
    std::string s = std::to_string(c);
    os << ' ' << std::string(width - s.size(), ' ') << s;
  }
  os << '\n';
  os << std::string(bar - width - 1, ' ') << std::string(width + 1, '-') << '+'
     << std::string(n * (width + 1), '-') << '\n';
  for (int r = 0; r < n; ++r) {
    std::string s = std::to_string(r);
    os << std::string(bar - width - 1, ' ')
       << std::string(width - s.size(), ' ') << s << " |";
    for (int c = 0; c < n; ++c) {
      std::string v = cell_text(t, base + r * n + c);
      os << ' ' << std::string(width - v.size(), ' ') << v;
    }
    os << '\n';
  }
}

// Header/rule/value layout for one-argument tables.
void print_unary(std::ostream& os, const FirstOrderModel::Table& t, int n,
                 int width) {
  std::string prefix = t.symbol->name + ":";
  std::size_t lead = prefix.size() + 2 > 7 ? prefix.size() + 2 : 7;
  os << prefix << std::string(lead - prefix.size(), ' ');
  for (int c = 0; c < n; ++c) {
    std::string s = std::to_string(c);
    if (c) os << ' ';
    os << std::string(width - s.size(), ' ') << s;
  }
  os << '\n';
  std::size_t span = lead + n * (width + 1) - 1 - 3;
  os << "   " << std::string(span, '-') << '\n';
  os << std::string(lead, ' ');
  for (int c = 0; c < n; ++c) {
    std::string v = cell_text(t, c);
    if (c) os << ' ';
    os << std::string(width - v.size(), ' ') << v;
  }
  os << '\n';
}

void print_table(std::ostream& os, const FirstOrderModel::Table& t, int n) {
  int arity = t.symbol->arity;
  int width = digits(n - 1);
  if (arity == 0) {
    if (t.symbol->kind == SymbolKind::Relation)
      os << t.symbol->name << ": " << (t.values[0] ? "T" : "F") << '\n';
    else
      os << t.symbol->name << ": " << t.values[0] << '\n';
    return;
  }
  if (arity == 1) {
    print_unary(os, t, n, width);
    os << '\n';
    return;
  }
  // Two trailing arguments index each printed block; any leading arguments
  // select a slice.
  long long slices = power(n, arity - 2);
  std::vector<int> lead(arity - 2, 0);
  for (long long s = 0; s < slices; ++s) {
    long long rest = s;
    for (int i = arity - 3; i >= 0; --i) {
      lead[i] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::string label = t.symbol->name;
    if (arity > 2) {
      label += '(';
      for (std::size_t i = 0; i < lead.size(); ++i) {
        if (i) label += ',';
        label += std::to_string(lead[i]);
      }
      label += ')';
    }
    print_block(os, label, n, width, t, s * n * n);
    os << '\n';
  }
}

}  // namespace

std::string print_tabular(const FirstOrderModel& model, int index,
                          double seconds) {
  std::ostringstream os;
  char banner[64];
  std::snprintf(banner, sizeof banner, "%.2f", seconds);
  os << "======================= Model #" << index << " at " << banner
     << " seconds:\n";
  for (const FirstOrderModel::Table& t : model.functions)
    print_table(os, t, model.n);
  for (const FirstOrderModel::Table& t : model.relations)
    print_table(os, t, model.n);
  return os.str();
}

std::string print_parsable(const FirstOrderModel& model) {
  std::ostringstream os;
  os << "begin_model(" << model.n << ").\n";
  const int n = model.n;
  for (const FirstOrderModel::Table& t : model.functions) {
    long long tuples = power(n, t.symbol->arity);
    for (long long i = 0; i < tuples; ++i) {
      os << t.symbol->name << '(';
      long long rest = i;
      std::vector<int> args(t.symbol->arity);
      for (int k = t.symbol->arity - 1; k >= 0; --k) {
        args[k] = static_cast<int>(rest % n);
        rest /= n;
      }
      for (int a : args) os << a << ',';
      os << t.values[i] << ").\n";
    }
  }
  for (const FirstOrderModel::Table& t : model.relations) {
    long long tuples = power(n, t.symbol->arity);
    for (long long i = 0; i < tuples; ++i) {
      if (!t.values[i]) os << '-';
      os << t.symbol->name;
      if (t.symbol->arity > 0) {
        os << '(';
        long long rest = i;
        std::vector<int> args(t.symbol->arity);
        for (int k = t.symbol->arity - 1; k >= 0; --k) {
          args[k] = static_cast<int>(rest % n);
          rest /= n;
        }
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (k) os << ',';
          os << args[k];
        }
        os << ')';
      }
      os << ".\n";
    }
  }
  os << "end_model.\n";
  return os.str();
}

std::string print_ivy(const FirstOrderModel& model) {
  std::ostringstream os;
  os << "(model (size " << model.n << ")";
  for (const FirstOrderModel::Table& t : model.functions) {
    os << " (function " << t.symbol->name << " (";
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (i) os << ' ';
      os << t.values[i];
    }
    os << "))";
  }
  for (const FirstOrderModel::Table& t : model.relations) {
    os << " (relation " << t.symbol->name << " (";
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (i) os << ' ';
      os << (t.values[i] ? "T" : "F");
    }
    os << "))";
  }
  os << ")";
  return os.str();
}

}  // namespace modelforge::model
