#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modelforge/lang.hpp"

namespace modelforge::lang {

namespace {

// Formula with negations pushed to atoms and implications eliminated.
Formula eliminate_connectives(const Formula& f) {
  Formula out;
  switch (f.kind) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Imp: {
      out.kind = Formula::Kind::Or;
      Formula neg;
      neg.kind = Formula::Kind::Not;
      neg.children.push_back(eliminate_connectives(f.children[0]));
      out.children.push_back(std::move(neg));
      out.children.push_back(eliminate_connectives(f.children[1]));
      return out;
    }
    case Formula::Kind::Iff: {
      // (A -> B) & (B -> A)
      Formula a = eliminate_connectives(f.children[0]);
      Formula b = eliminate_connectives(f.children[1]);
      auto imp = [](Formula lhs, Formula rhs) {
        Formula neg;
        neg.kind = Formula::Kind::Not;
        neg.children.push_back(std::move(lhs));
        Formula o;
        o.kind = Formula::Kind::Or;
        o.children.push_back(std::move(neg));
        o.children.push_back(std::move(rhs));
        return o;
      };
      out.kind = Formula::Kind::And;
      out.children.push_back(imp(a, b));
      out.children.push_back(imp(std::move(b), std::move(a)));
      return out;
    }
    default:
      out.kind = f.kind;
      out.var = f.var;
      for (const Formula& c : f.children)
        out.children.push_back(eliminate_connectives(c));
      return out;
  }
}

Formula negate(Formula f);

Formula to_nnf(Formula f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return negate(std::move(f.children[0]));
    default: {
      Formula out;
      out.kind = f.kind;
      out.var = std::move(f.var);
      for (Formula& c : f.children) out.children.push_back(to_nnf(std::move(c)));
      return out;
    }
  }
}

Formula negate(Formula f) {
  Formula out;
  switch (f.kind) {
    case Formula::Kind::Atom:
      out = std::move(f);
      out.atom.positive = !out.atom.positive;
      return out;
    case Formula::Kind::Not:
      return to_nnf(std::move(f.children[0]));
    case Formula::Kind::And:
    case Formula::Kind::Or:
      out.kind = f.kind == Formula::Kind::And ? Formula::Kind::Or
                                              : Formula::Kind::And;
      for (Formula& c : f.children)
        out.children.push_back(negate(std::move(c)));
      return out;
    case Formula::Kind::All:
    case Formula::Kind::Exists:
      out.kind = f.kind == Formula::Kind::All ? Formula::Kind::Exists
                                              : Formula::Kind::All;
      out.var = std::move(f.var);
      out.children.push_back(negate(std::move(f.children[0])));
      return out;
    default:
      throw InputError("unexpected connective during clausification");
  }
}

void substitute(Term& t, const std::map<std::string, Term>& subst) {
  if (t.kind == Term::Kind::Variable) {
    auto it = subst.find(t.var);
    if (it != subst.end()) t = it->second;
    return;
  }
  for (Term& a : t.args) substitute(a, subst);
}

// Replaces existential variables with Skolem terms over the universal
// variables in scope, and drops quantifiers.
struct Skolemizer {
  SymbolTable& symbols;
  const Settings& settings;
  SkolemCounters& counters;
  std::map<std::string, Term> subst;
  std::vector<std::string> universals;

  Formula walk(Formula f) {
    switch (f.kind) {
      case Formula::Kind::Atom:
        for (Term& t : f.atom.args) substitute(t, subst);
        return f;
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        Formula out;
        out.kind = f.kind;
        for (Formula& c : f.children) out.children.push_back(walk(std::move(c)));
        return out;
      }
      case Formula::Kind::All: {
        // Rename apart so reused variable names cannot collide.
        std::string fresh = f.var + "#" + std::to_string(rename_counter++);
        auto saved = subst.find(f.var) != subst.end()
                         ? std::optional<Term>(subst[f.var])
                         : std::nullopt;
        subst[f.var] = Term::variable(fresh);
        universals.push_back(fresh);
        Formula body = walk(std::move(f.children[0]));
        universals.pop_back();
        if (saved) subst[f.var] = *saved; else subst.erase(f.var);
        return body;
      }
      case Formula::Kind::Exists: {
        int arity = static_cast<int>(universals.size());
        if (arity > kMaxFunctionArity)
          throw InputError("Skolem function for '" + f.var +
                           "' would exceed arity 3");
        std::string name = arity == 0
                               ? "$c" + std::to_string(++counters.constants)
                               : "$f" + std::to_string(++counters.functions);
        const Symbol* sk = symbols.intern(name, SymbolKind::Function, arity,
                                          settings);
        std::vector<Term> args;
        for (const std::string& u : universals) args.push_back(Term::variable(u));
        auto saved = subst.find(f.var) != subst.end()
                         ? std::optional<Term>(subst[f.var])
                         : std::nullopt;
        subst[f.var] = Term::application(sk, std::move(args));
        Formula body = walk(std::move(f.children[0]));
        if (saved) subst[f.var] = *saved; else subst.erase(f.var);
        return body;
      }
      default:
        throw InputError("unexpected connective during Skolemization");
    }
  }

  int rename_counter = 0;
};

// Distributes Or over And; leaves are literals.
std::vector<std::vector<Literal>> distribute(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return {{f.atom}};
    case Formula::Kind::And: {
      std::vector<std::vector<Literal>> out;
      for (const Formula& c : f.children) {
        auto sub = distribute(c);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case Formula::Kind::Or: {
      auto left = distribute(f.children[0]);
      auto right = distribute(f.children[1]);
      std::vector<std::vector<Literal>> out;
      out.reserve(left.size() * right.size());
      for (const auto& a : left)
        for (const auto& b : right) {
          std::vector<Literal> merged = a;
          merged.insert(merged.end(), b.begin(), b.end());
          out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw InputError("unexpected connective during CNF distribution");
  }
}

const char* kCanonicalNames[] = {"x", "y", "z", "u", "v", "w"};

void rename_term(Term& t, std::map<std::string, std::string>& names) {
  if (t.kind == Term::Kind::Variable) {
    auto it = names.find(t.var);
    if (it == names.end()) {
      std::size_t k = names.size();
      std::string fresh = k < 6 ? kCanonicalNames[k]
                                : "x" + std::to_string(k - 5);
      it = names.emplace(t.var, fresh).first;
    }
    t.var = it->second;
    return;
  }
  for (Term& a : t.args) rename_term(a, names);
}

}  // namespace

std::vector<Clause> clausify(const Formula& formula, SymbolTable& symbols,
                             const Settings& settings, SourceList source,
                             SkolemCounters& counters) {
  Formula nnf = to_nnf(eliminate_connectives(formula));
  Skolemizer sk{symbols, settings, counters};
  Formula matrix = sk.walk(std::move(nnf));
  std::vector<Clause> clauses;
  for (std::vector<Literal>& lits : distribute(matrix)) {
    Clause c;
    c.source = source;
    c.literals = std::move(lits);
    // Canonical variable names in first-occurrence order.
    std::map<std::string, std::string> names;
    for (Literal& l : c.literals)
      for (Term& t : l.args) rename_term(t, names);
    clauses.push_back(std::move(c));
  }
  return clauses;
}

}  // namespace modelforge::lang
