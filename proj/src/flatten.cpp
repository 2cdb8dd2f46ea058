#include "modelforge/flatten.hpp"

#include <cassert>
#include <map>
#include <sstream>

namespace modelforge::flatten {

using lang::Literal;
using lang::SymbolKind;
using lang::Term;

namespace {

// Flattens one clause.  Compound subterms are extracted innermost-first,
// visiting sibling arguments right to left; flat variable numbers are handed
// out as defining literals are built, arguments left to right.  Identical
// subterms share one value variable.
class Flattener {
 public:
  // Returns the flat clauses (two per sign-split positive equality between
  // compound terms); empty when the clause is a tautology.
  std::vector<FlatClause> run(const lang::Clause& clause) {
    for (const Literal& lit : clause.literals) {
      if (lit.relation->is_equality) {
        flatten_equality(lit);
        if (clause_true_) return {};
      } else if (lit.relation->is_order) {
        extract_args(lit.args);
        FlatLiteral fl;
        fl.positive = lit.positive;
        fl.builtin = true;
        fl.op = BuiltinOp::Less;
        fl.lhs = arg_of(lit.args[0]);
        fl.rhs = arg_of(lit.args[1]);
        originals_.push_back(fl);
      } else {
        extract_args(lit.args);
        FlatLiteral fl;
        fl.positive = lit.positive;
        fl.atom.relation = lit.relation;
        for (const Term& a : lit.args) fl.atom.args.push_back(arg_of(a));
        originals_.push_back(fl);
      }
    }

    std::vector<FlatClause> out;
    std::size_t variants = std::size_t{1} << splits_.size();
    for (std::size_t mask = 0; mask < variants; ++mask) {
      FlatClause fc;
      fc.var_count = next_var_;
      fc.literals = defs_;
      for (std::size_t i = 0; i < splits_.size(); ++i) {
        auto [second_side, first_side] = splits_[i];
        bool first_positive = ((mask >> i) & 1) == 0;
        fc.literals[first_side].positive = first_positive;
        fc.literals[second_side].positive = !first_positive;
      }
      fc.literals.insert(fc.literals.end(), originals_.begin(),
                         originals_.end());
      out.push_back(std::move(fc));
    }
    return out;
  }

 private:
  static bool compound(const Term& t) {
    return t.kind == Term::Kind::Application;
  }

  bool extracted(const Term& t) const {
    return vars_.count(lang::to_string(t)) != 0;
  }

  FlatArg arg_of(const Term& t) {
    if (t.kind == Term::Kind::DomainElement)
      return FlatArg::element(t.element);
    std::string key = lang::to_string(t);
    auto it = vars_.find(key);
    if (it == vars_.end()) {
      assert(t.kind == Term::Kind::Variable && "compound term not extracted");
      it = vars_.emplace(key, next_var_++).first;
    }
    return FlatArg::var(it->second);
  }

  void extract_args(const std::vector<Term>& args) {
    for (auto it = args.rbegin(); it != args.rend(); ++it) extract(*it);
  }

  // Extracts t and its compound subterms, adding one negative defining
  // literal per new compound, with a fresh value variable.
  void extract(const Term& t) {
    if (!compound(t) || extracted(t)) return;
    extract_args(t.args);
    defs_.push_back(make_def(t, FlatArg::var(0), true));
  }

  // Builds the defining literal for compound t.  When fresh_value is true a
  // new value variable is allocated (after the argument variables);
  // otherwise `value` is used.  Argument variables are numbered before the
  // value.
  FlatLiteral make_def(const Term& t, FlatArg value, bool fresh_value,
                       const Term* value_term = nullptr) {
    FlatLiteral fl;
    fl.positive = false;
    fl.atom.relation = t.symbol;
    for (const Term& a : t.args) fl.atom.args.push_back(arg_of(a));
    if (fresh_value) {
      int v = next_var_++;
      vars_.emplace(lang::to_string(t), v);
      value = FlatArg::var(v);
    } else {
      if (value_term != nullptr) value = arg_of(*value_term);
      if (value.is_var) vars_.emplace(lang::to_string(t), value.index);
    }
    fl.atom.args.push_back(value);
    return fl;
  }

  void flatten_equality(const Literal& lit) {
    const Term& lhs = lit.args[0];
    const Term& rhs = lit.args[1];
    if (lit.positive) {
      if (lhs == rhs) {
        clause_true_ = true;  // t = t subsumes the whole clause
        return;
      }
      bool lhs_open = compound(lhs) && !extracted(lhs);
      bool rhs_open = compound(rhs) && !extracted(rhs);
      if (lhs_open && rhs_open) {
        // Two-sided sign split over the outermost defining literals.
        extract_args(rhs.args);
        int rhs_outer = static_cast<int>(defs_.size());
        defs_.push_back(make_def(rhs, FlatArg::var(0), true));
        FlatArg value = defs_.back().atom.args.back();
        extract_args(lhs.args);
        int lhs_outer = static_cast<int>(defs_.size());
        defs_.push_back(make_def(lhs, value, false));
        splits_.emplace_back(rhs_outer, lhs_outer);
        return;
      }
      if (lhs_open || rhs_open) {
        // One open compound side: its outer defining literal appears
        // positively with the other side as the value.
        const Term& open = lhs_open ? lhs : rhs;
        const Term& other = lhs_open ? rhs : lhs;
        if (compound(other)) {
          extract(other);
        }
        extract_args(open.args);
        FlatLiteral fl = make_def(open, FlatArg::var(0), false, &other);
        fl.positive = true;
        defs_.push_back(std::move(fl));
        return;
      }
      // Both sides atomic or already carrying value variables.
      extract(rhs);
      extract(lhs);
      FlatLiteral fl;
      fl.positive = true;
      fl.builtin = true;
      fl.op = BuiltinOp::Eq;
      fl.lhs = arg_of(lhs);
      fl.rhs = arg_of(rhs);
      originals_.push_back(fl);
      return;
    }
    // Negative equality: value variables for both sides plus a builtin
    // disequality literal.
    extract(rhs);
    extract(lhs);
    FlatLiteral fl;
    fl.positive = false;
    fl.builtin = true;
    fl.op = BuiltinOp::Eq;
    fl.lhs = arg_of(lhs);
    fl.rhs = arg_of(rhs);
    originals_.push_back(fl);
  }

  std::map<std::string, int> vars_;  // structural term key -> flat variable
  int next_var_ = 0;
  std::vector<FlatLiteral> defs_;
  std::vector<FlatLiteral> originals_;
  std::vector<std::pair<int, int>> splits_;  // (rhs outer, lhs outer) indices
  bool clause_true_ = false;
};

void print_arg(std::ostream& os, const FlatArg& a) {
  if (a.is_var)
    os << 'v' << a.index;
  else
    os << a.index;
}

}  // namespace

std::vector<FlatClause> flatten_clause(const Clause& clause) {
  return Flattener{}.run(clause);
}

std::string to_string(const FlatClause& clause) {
  std::ostringstream os;
  for (std::size_t i = 0; i < clause.literals.size(); ++i) {
    if (i) os << " | ";
    const FlatLiteral& l = clause.literals[i];
    if (l.builtin) {
      if (l.op == BuiltinOp::Eq) {
        print_arg(os, l.lhs);
        os << (l.positive ? " = " : " != ");
        print_arg(os, l.rhs);
      } else {
        if (!l.positive) os << "-(";
        print_arg(os, l.lhs);
        os << " < ";
        print_arg(os, l.rhs);
        if (!l.positive) os << ')';
      }
      continue;
    }
    if (!l.positive) os << '-';
    os << l.atom.relation->name;
    if (!l.atom.args.empty()) {
      os << '(';
      for (std::size_t j = 0; j < l.atom.args.size(); ++j) {
        if (j) os << ',';
        print_arg(os, l.atom.args[j]);
      }
      os << ')';
    }
  }
  return os.str();
}

}  // namespace modelforge::flatten
