#include "modelforge/lang.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace modelforge::lang {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

bool is_variable_token(std::string_view token, const Settings& settings) {
  if (token.empty()) return false;
  char c = token[0];
  if (settings.prolog_style_variables)
    return std::isupper(static_cast<unsigned char>(c)) || c == '_';
  return c >= 'u' && c <= 'z';
}

bool is_equality_name(std::string_view name, const Settings& settings) {
  if (settings.tptp_eq) return name == "equal";
  if (name == "=") return true;
  return name.size() >= 2 && (name[0] == 'E' || name[0] == 'e') &&
         (name[1] == 'Q' || name[1] == 'q');
}

bool is_answer_name(std::string_view name) {
  return name.size() >= 4 && name[0] == '$' && lower(name.substr(1, 3)) == "ans";
}

// ---------------------------------------------------------------------------
// SymbolTable

Symbol* SymbolTable::intern(const std::string& name, SymbolKind kind, int arity,
                            const Settings& settings, int line, int col) {
  if (auto it = by_name_.find(name); it != by_name_.end()) {
    Symbol* sym = it->second;
    if (sym->kind != kind)
      throw InputError("symbol '" + name +
                           "' used as both a function and a relation",
                       line, col);
    if (sym->arity != arity)
      throw InputError("symbol '" + name + "' used with arities " +
                           std::to_string(sym->arity) + " and " +
                           std::to_string(arity),
                       line, col);
    return sym;
  }
  if (kind == SymbolKind::Function && arity > kMaxFunctionArity)
    throw InputError("function symbol '" + name + "' has arity " +
                         std::to_string(arity) + " (maximum is 3)",
                     line, col);
  if (kind == SymbolKind::Relation && arity > kMaxRelationArity)
    throw InputError("relation symbol '" + name + "' has arity " +
                         std::to_string(arity) + " (maximum is 4)",
                     line, col);
  auto sym = std::make_unique<Symbol>();
  sym->name = name;
  sym->kind = kind;
  sym->arity = arity;
  sym->appearance = static_cast<int>(symbols_.size());
  if (kind == SymbolKind::Relation && arity == 2) {
    sym->is_equality = is_equality_name(name, settings);
    sym->is_order = (name == "<");
  }
  if (kind == SymbolKind::Relation) sym->is_answer = is_answer_name(name);
  Symbol* raw = sym.get();
  by_name_.emplace(raw->name, raw);
  symbols_.push_back(std::move(sym));
  return raw;
}

Symbol* SymbolTable::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

// ---------------------------------------------------------------------------
// Terms

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Variable;
  t.var = std::move(name);
  return t;
}

Term Term::domain_element(int value) {
  Term t;
  t.kind = Kind::DomainElement;
  t.element = value;
  return t;
}

Term Term::application(const Symbol* sym, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Application;
  t.symbol = sym;
  t.args = std::move(args);
  return t;
}

bool Term::operator==(const Term& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Variable: return var == other.var;
    case Kind::DomainElement: return element == other.element;
    case Kind::Application:
      return symbol == other.symbol && args == other.args;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long number = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  const Token& peek2() {
    if (!next_) {
      Token saved = current_;
      advance();
      next_ = current_;
      current_ = saved;
    }
    return *next_;
  }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    if (next_) {
      current_ = *next_;
      next_.reset();
      return;
    }
    skip_space();
    current_ = Token{};
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::Kind::End;
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        bump();
      current_.kind = Token::Kind::Number;
      current_.text = std::string(text_.substr(start, pos_ - start));
      current_.number = std::stol(current_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) bump();
      current_.kind = Token::Kind::Ident;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    current_.kind = Token::Kind::Punct;
    switch (c) {
      case '(': case ')': case ',': case '.': case '|': case '&':
      case '+': case '*': case '=':
        current_.text = std::string(1, c);
        bump();
        return;
      case '!':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          bump();
          current_.text = "!=";
          return;
        }
        throw InputError("unexpected character '!'", line_, col_);
      case '-':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          bump();
          current_.text = "->";
          return;
        }
        current_.text = "-";
        return;
      case '<':
        bump();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' &&
            text_[pos_ + 1] == '>') {
          bump();
          bump();
          current_.text = "<->";
          return;
        }
        current_.text = "<";
        return;
      default:
        throw InputError(std::string("unexpected character '") + c + "'",
                         line_, col_);
    }
  }

  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '$' || c == '\'';
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token current_;
  std::optional<Token> next_;
};

// ---------------------------------------------------------------------------
// Expression parser (Pratt).  Produces a generic tree that is then
// interpreted as a clause, a formula, or a constraint.

struct Expr {
  enum class Kind { Ident, Number, Call, Binary, Unary, Quant };
  Kind kind = Kind::Ident;
  std::string name;  // identifier, operator, or quantifier ("all"/"exists")
  long number = 0;
  std::string var;  // quantified variable
  std::vector<Expr> args;
  int line = 1, col = 1;
};

int infix_binding_power(const std::string& op) {
  if (op == "<->") return 10;
  if (op == "->") return 20;
  if (op == "|") return 30;
  if (op == "&") return 40;
  if (op == "=" || op == "!=" || op == "<") return 50;
  if (op == "+" || op == "-") return 60;
  if (op == "*") return 70;
  return -1;
}

constexpr int kNegationBp = 45;
constexpr int kQuantifierBp = 44;

class ExprParser {
 public:
  ExprParser(Lexer& lex, bool formula_mode)
      : lex_(lex), formula_mode_(formula_mode) {}

  Expr parse(int rbp = 0) {
    Expr left = parse_prefix();
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind != Token::Kind::Punct && t.kind != Token::Kind::Ident) break;
      if (t.kind == Token::Kind::Ident) break;
      int lbp = infix_binding_power(t.text);
      if (lbp < 0 || lbp <= rbp) break;
      Token op = lex_.take();
      Expr node;
      node.kind = Expr::Kind::Binary;
      node.name = op.text;
      node.line = op.line;
      node.col = op.col;
      // -> and <-> associate to the right.
      int next_rbp = (op.text == "->" || op.text == "<->") ? lbp - 1 : lbp;
      node.args.push_back(std::move(left));
      node.args.push_back(parse(next_rbp));
      left = std::move(node);
    }
    return left;
  }

 private:
  Expr parse_prefix() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Number: {
        Expr e;
        e.kind = Expr::Kind::Number;
        e.number = t.number;
        e.line = t.line;
        e.col = t.col;
        return e;
      }
      case Token::Kind::Ident: {
        if (formula_mode_ && (t.text == "all" || t.text == "exists") &&
            lex_.peek().kind == Token::Kind::Ident) {
          Expr e;
          e.kind = Expr::Kind::Quant;
          e.name = t.text;
          e.line = t.line;
          e.col = t.col;
          e.var = lex_.take().text;
          e.args.push_back(parse(kQuantifierBp));
          return e;
        }
        Expr e;
        e.kind = Expr::Kind::Ident;
        e.name = t.text;
        e.line = t.line;
        e.col = t.col;
        if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
          lex_.take();
          e.kind = Expr::Kind::Call;
          if (!(lex_.peek().kind == Token::Kind::Punct &&
                lex_.peek().text == ")")) {
            while (true) {
              e.args.push_back(parse(0));
              if (lex_.peek().kind == Token::Kind::Punct &&
                  lex_.peek().text == ",") {
                lex_.take();
                continue;
              }
              break;
            }
          }
          expect_punct(")");
        }
        return e;
      }
      case Token::Kind::Punct: {
        if (t.text == "(") {
          Expr e = parse(0);
          expect_punct(")");
          return e;
        }
        if (t.text == "-") {
          Expr e;
          e.kind = Expr::Kind::Unary;
          e.name = "-";
          e.line = t.line;
          e.col = t.col;
          e.args.push_back(parse(kNegationBp));
          return e;
        }
        throw InputError("unexpected token '" + t.text + "'", t.line, t.col);
      }
      case Token::Kind::End:
        throw InputError("unexpected end of input", t.line, t.col);
    }
    throw InputError("unexpected token", t.line, t.col);
  }

  void expect_punct(const std::string& p) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Punct || t.text != p)
      throw InputError("expected '" + p + "'", t.line, t.col);
  }

  Lexer& lex_;
  bool formula_mode_;
};

// ---------------------------------------------------------------------------
// Expr -> Clause / Formula / Constraint conversion

bool is_term_operator(const std::string& op) {
  return op == "*" || op == "+" || op == "-";
}

class Converter {
 public:
  Converter(SymbolTable& symbols, const Settings& settings)
      : symbols_(symbols), settings_(settings) {}

  Term to_term(const Expr& e, const std::vector<std::string>* bound) {
    switch (e.kind) {
      case Expr::Kind::Number:
        return Term::domain_element(static_cast<int>(e.number));
      case Expr::Kind::Ident: {
        if (bound && std::find(bound->begin(), bound->end(), e.name) !=
                         bound->end())
          return Term::variable(e.name);
        if (!bound && is_variable_token(e.name, settings_))
          return Term::variable(e.name);
        if (bound && is_variable_token(e.name, settings_)) {
          free_variables_.push_back(e.name);
          return Term::variable(e.name);
        }
        return Term::application(
            symbols_.intern(e.name, SymbolKind::Function, 0, settings_,
                            e.line, e.col),
            {});
      }
      case Expr::Kind::Call: {
        std::vector<Term> args;
        args.reserve(e.args.size());
        for (const Expr& a : e.args) args.push_back(to_term(a, bound));
        return Term::application(
            symbols_.intern(e.name, SymbolKind::Function,
                            static_cast<int>(e.args.size()), settings_, e.line,
                            e.col),
            std::move(args));
      }
      case Expr::Kind::Binary: {
        if (!is_term_operator(e.name))
          throw InputError("operator '" + e.name + "' cannot appear in a term",
                           e.line, e.col);
        std::vector<Term> args;
        args.push_back(to_term(e.args[0], bound));
        args.push_back(to_term(e.args[1], bound));
        return Term::application(
            symbols_.intern(e.name, SymbolKind::Function, 2, settings_, e.line,
                            e.col),
            std::move(args));
      }
      default:
        throw InputError("expected a term", e.line, e.col);
    }
  }

  Literal to_atom(const Expr& e, const std::vector<std::string>* bound) {
    Literal lit;
    lit.positive = true;
    if (e.kind == Expr::Kind::Binary &&
        (e.name == "=" || e.name == "!=" || e.name == "<")) {
      std::string rel = e.name == "!=" ? "=" : e.name;
      lit.relation =
          symbols_.intern(rel, SymbolKind::Relation, 2, settings_, e.line,
                          e.col);
      lit.args.push_back(to_term(e.args[0], bound));
      lit.args.push_back(to_term(e.args[1], bound));
      lit.positive = e.name != "!=";
      return lit;
    }
    if (e.kind == Expr::Kind::Ident) {
      lit.relation = symbols_.intern(e.name, SymbolKind::Relation, 0,
                                     settings_, e.line, e.col);
      return lit;
    }
    if (e.kind == Expr::Kind::Call) {
      lit.relation = symbols_.intern(e.name, SymbolKind::Relation,
                                     static_cast<int>(e.args.size()),
                                     settings_, e.line, e.col);
      for (const Expr& a : e.args) lit.args.push_back(to_term(a, bound));
      return lit;
    }
    throw InputError("expected an atom", e.line, e.col);
  }

  Clause to_clause(const Expr& e, SourceList source) {
    Clause clause;
    clause.source = source;
    collect_literals(e, clause.literals);
    return clause;
  }

  Formula to_formula(const Expr& e, std::vector<std::string>& bound) {
    Formula f;
    switch (e.kind) {
      case Expr::Kind::Quant: {
        f.kind = e.name == "all" ? Formula::Kind::All : Formula::Kind::Exists;
        f.var = e.var;
        bound.push_back(e.var);
        f.children.push_back(to_formula(e.args[0], bound));
        bound.pop_back();
        return f;
      }
      case Expr::Kind::Unary: {
        f.kind = Formula::Kind::Not;
        f.children.push_back(to_formula(e.args[0], bound));
        return f;
      }
      case Expr::Kind::Binary: {
        if (e.name == "&" || e.name == "|" || e.name == "->" ||
            e.name == "<->") {
          f.kind = e.name == "&"   ? Formula::Kind::And
                   : e.name == "|" ? Formula::Kind::Or
                   : e.name == "->" ? Formula::Kind::Imp
                                    : Formula::Kind::Iff;
          f.children.push_back(to_formula(e.args[0], bound));
          f.children.push_back(to_formula(e.args[1], bound));
          return f;
        }
        if (e.name == "!=") {
          f.kind = Formula::Kind::Not;
          Formula atom;
          atom.kind = Formula::Kind::Atom;
          atom.atom = to_atom(e, &bound);
          atom.atom.positive = true;
          f.children.push_back(std::move(atom));
          return f;
        }
        break;
      }
      default:
        break;
    }
    f.kind = Formula::Kind::Atom;
    f.atom = to_atom(e, &bound);
    return f;
  }

  // Variables that looked like variables but were not bound by any
  // quantifier; such formulas are universally closed.
  std::vector<std::string> take_free_variables() {
    std::vector<std::string> out;
    std::swap(out, free_variables_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  void collect_literals(const Expr& e, std::vector<Literal>& out) {
    if (e.kind == Expr::Kind::Binary && e.name == "|") {
      collect_literals(e.args[0], out);
      collect_literals(e.args[1], out);
      return;
    }
    if (e.kind == Expr::Kind::Unary) {
      Literal lit = to_atom(e.args[0], nullptr);
      lit.positive = !lit.positive;
      out.push_back(std::move(lit));
      return;
    }
    if (e.kind == Expr::Kind::Binary &&
        (e.name == "&" || e.name == "->" || e.name == "<->"))
      throw InputError("connective '" + e.name +
                           "' is not allowed in a clause; use a formula_list",
                       e.line, e.col);
    out.push_back(to_atom(e, nullptr));
  }

  SymbolTable& symbols_;
  const Settings& settings_;
  std::vector<std::string> free_variables_;
};

// ---------------------------------------------------------------------------
// Top-level input reader

class InputParser {
 public:
  explicit InputParser(std::string_view text) : lex_(text) {}

  InputProblem run() {
    while (lex_.peek().kind != Token::Kind::End) {
      Token t = lex_.take();
      if (t.kind != Token::Kind::Ident)
        throw InputError("expected a command or list", t.line, t.col);
      if (t.text == "list" || t.text == "formula_list") {
        read_list(t.text == "formula_list");
      } else if (t.text == "set" || t.text == "clear") {
        read_set_clear(t.text);
      } else if (t.text == "assign") {
        read_top_assign();
      } else if (t.text == "op") {
        skip_parenthesized();
        expect_period();
        problem_.warnings.push_back("ignoring op(...) declaration");
      } else {
        throw InputError("unknown command '" + t.text + "'", t.line, t.col);
      }
    }
    finalize_constraints();
    return std::move(problem_);
  }

 private:
  void read_list(bool formulas) {
    expect_punct("(");
    Token name = lex_.take();
    if (name.kind != Token::Kind::Ident)
      throw InputError("expected a list name", name.line, name.col);
    expect_punct(")");
    expect_period();

    std::optional<SourceList> source;
    bool constraints = false;
    bool discard = false;
    if (name.text == "usable") source = SourceList::Usable;
    else if (name.text == "sos") source = SourceList::Sos;
    else if (name.text == "demodulators") source = SourceList::Demodulators;
    else if (name.text == "passive") source = SourceList::Passive;
    else if (name.text == "mace_constraints") constraints = true;
    else {
      discard = true;
      problem_.warnings.push_back("ignoring list(" + name.text + ")");
    }

    Converter conv(problem_.symbols, problem_.settings);
    while (true) {
      if (lex_.peek().kind == Token::Kind::Ident &&
          lex_.peek().text == "end_of_list") {
        lex_.take();
        expect_period();
        break;
      }
      if (lex_.peek().kind == Token::Kind::End)
        throw InputError("missing end_of_list", lex_.peek().line,
                         lex_.peek().col);
      ExprParser ep(lex_, formulas);
      Expr e = ep.parse(0);
      expect_period();
      if (discard) continue;
      if (constraints) {
        constraint_exprs_.push_back(std::move(e));
        continue;
      }
      if (formulas) {
        std::vector<std::string> bound;
        Formula f = conv.to_formula(e, bound);
        for (const std::string& v : conv.take_free_variables()) {
          Formula closed;
          closed.kind = Formula::Kind::All;
          closed.var = v;
          closed.children.push_back(std::move(f));
          f = std::move(closed);
        }
        for (Clause& c :
             clausify(f, problem_.symbols, problem_.settings, *source,
                      skolem_)) {
          problem_.theory.push_back(strip_answer_literals(std::move(c)));
        }
      } else {
        Clause c = conv.to_clause(e, *source);
        problem_.theory.push_back(strip_answer_literals(std::move(c)));
      }
    }
  }

  void read_set_clear(const std::string& cmd) {
    expect_punct("(");
    Token flag = lex_.take();
    if (flag.kind != Token::Kind::Ident)
      throw InputError("expected a flag name", flag.line, flag.col);
    expect_punct(")");
    expect_period();
    bool value = cmd == "set";
    if (flag.text == "prolog_style_variables") {
      problem_.settings.prolog_style_variables = value;
    } else if (flag.text == "tptp_eq") {
      problem_.settings.tptp_eq = value;
    } else {
      problem_.warnings.push_back("ignoring " + cmd + "(" + flag.text + ")");
    }
  }

  void read_top_assign() {
    expect_punct("(");
    Token param = lex_.take();
    if (param.kind != Token::Kind::Ident)
      throw InputError("expected a parameter name", param.line, param.col);
    expect_punct(",");
    Token value = lex_.take();
    expect_punct(")");
    expect_period();
    (void)value;
    if (param.text != "max_seconds" && param.text != "max_mem")
      problem_.warnings.push_back("ignoring assign(" + param.text + ", ...)");
  }

  void skip_parenthesized() {
    expect_punct("(");
    int depth = 1;
    while (depth > 0) {
      Token t = lex_.take();
      if (t.kind == Token::Kind::End)
        throw InputError("unterminated '('", t.line, t.col);
      if (t.kind == Token::Kind::Punct) {
        if (t.text == "(") ++depth;
        if (t.text == ")") --depth;
      }
    }
  }

  void finalize_constraints() {
    for (const Expr& e : constraint_exprs_) {
      if (e.kind != Expr::Kind::Call || e.args.size() != 2)
        throw InputError("constraint must be assign(...) or property(...)",
                         e.line, e.col);
      if (e.name == "assign") {
        problem_.constraints.push_back(convert_assign(e));
      } else if (e.name == "property") {
        problem_.constraints.push_back(convert_property(e));
      } else {
        throw InputError("unknown constraint '" + e.name + "'", e.line, e.col);
      }
    }
    // Properties flip symbol flags before flattening/grounding sees them.
    for (const Constraint& c : problem_.constraints) {
      if (c.kind != Constraint::Kind::Property) continue;
      Symbol* sym = problem_.symbols.find(c.symbol->name);
      if (c.prop == Constraint::Prop::Equality) sym->is_equality = true;
      if (c.prop == Constraint::Prop::Order) sym->is_order = true;
    }
  }

  // Cell arguments in assignments must be domain elements.
  std::vector<int> cell_elements(const Expr& e) {
    std::vector<int> out;
    for (const Expr& a : e.args) {
      if (a.kind != Expr::Kind::Number)
        throw InputError("assignment arguments must be domain elements",
                         a.line, a.col);
      out.push_back(static_cast<int>(a.number));
    }
    return out;
  }

  Constraint convert_assign(const Expr& e) {
    const Expr& cell = e.args[0];
    const Expr& value = e.args[1];
    Constraint c;
    std::string name;
    if (cell.kind == Expr::Kind::Ident) {
      name = cell.name;
      c.cell = {};
    } else if (cell.kind == Expr::Kind::Call) {
      name = cell.name;
      c.cell = cell_elements(cell);
    } else if (cell.kind == Expr::Kind::Binary && is_term_operator(cell.name)) {
      name = cell.name;
      c.cell = cell_elements(cell);
    } else {
      throw InputError("bad assignment cell", cell.line, cell.col);
    }
    Symbol* sym = problem_.symbols.find(name);
    if (sym == nullptr)
      throw InputError("assignment to unknown symbol '" + name + "'",
                       cell.line, cell.col);
    if (static_cast<int>(c.cell.size()) != sym->arity)
      throw InputError("assignment arity mismatch for '" + name + "'",
                       cell.line, cell.col);
    c.symbol = sym;
    if (sym->kind == SymbolKind::Function) {
      c.kind = Constraint::Kind::AssignFunction;
      if (value.kind != Expr::Kind::Number)
        throw InputError("function assignment needs a domain element value",
                         value.line, value.col);
      c.value = static_cast<int>(value.number);
    } else {
      c.kind = Constraint::Kind::AssignRelation;
      if (value.kind != Expr::Kind::Ident ||
          (value.name != "T" && value.name != "F"))
        throw InputError("relation assignment needs T or F", value.line,
                         value.col);
      c.value = value.name == "T" ? 1 : 0;
    }
    return c;
  }

  Constraint convert_property(const Expr& e) {
    const Expr& pattern = e.args[0];
    const Expr& prop = e.args[1];
    if (prop.kind != Expr::Kind::Ident)
      throw InputError("bad property name", prop.line, prop.col);
    Constraint c;
    c.kind = Constraint::Kind::Property;
    if (prop.name == "equality") c.prop = Constraint::Prop::Equality;
    else if (prop.name == "order") c.prop = Constraint::Prop::Order;
    else if (prop.name == "bijection") c.prop = Constraint::Prop::Bijection;
    else if (prop.name == "quasigroup") c.prop = Constraint::Prop::Quasigroup;
    else
      throw InputError("unknown property '" + prop.name + "'", prop.line,
                       prop.col);

    std::string name;
    int arity = 0;
    if (pattern.kind == Expr::Kind::Call) {
      name = pattern.name;
      arity = static_cast<int>(pattern.args.size());
    } else if (pattern.kind == Expr::Kind::Binary &&
               is_term_operator(pattern.name)) {
      name = pattern.name;
      arity = 2;
    } else if (pattern.kind == Expr::Kind::Ident) {
      name = pattern.name;
      arity = 0;
    } else {
      throw InputError("bad property pattern", pattern.line, pattern.col);
    }

    bool wants_relation = c.prop == Constraint::Prop::Equality ||
                          c.prop == Constraint::Prop::Order;
    int wanted_arity = wants_relation ? 2
                       : c.prop == Constraint::Prop::Bijection ? 1
                                                               : 2;
    if (arity != wanted_arity)
      throw InputError("property '" + prop.name + "' needs arity " +
                           std::to_string(wanted_arity),
                       pattern.line, pattern.col);
    SymbolKind wanted_kind =
        wants_relation ? SymbolKind::Relation : SymbolKind::Function;
    c.symbol = problem_.symbols.intern(name, wanted_kind, arity,
                                       problem_.settings, pattern.line,
                                       pattern.col);
    return c;
  }

  void expect_punct(const std::string& p) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Punct || t.text != p)
      throw InputError("expected '" + p + "'", t.line, t.col);
  }
  void expect_period() { expect_punct("."); }

  Lexer lex_;
  InputProblem problem_;
  SkolemCounters skolem_;
  std::vector<Expr> constraint_exprs_;
};

}  // namespace

InputProblem parse_input(std::string_view text) {
  InputParser parser(text);
  return parser.run();
}

Clause strip_answer_literals(Clause clause) {
  std::size_t before = clause.literals.size();
  std::erase_if(clause.literals,
                [](const Literal& l) { return l.relation->is_answer; });
  if (clause.literals.empty()) {
    if (before > 0)
      throw InputError("clause contains only answer literals");
    throw InputError("empty clause in input");
  }
  return clause;
}

namespace {

void check_elements(const Term& t, int n) {
  if (t.kind == Term::Kind::DomainElement && t.element >= n)
    throw InputError("constant " + std::to_string(t.element) +
                     " is outside the domain 0.." + std::to_string(n - 1));
  for (const Term& a : t.args) check_elements(a, n);
}

}  // namespace

void validate(const InputProblem& problem, int domain_size) {
  if (domain_size < 1) throw InputError("domain size must be at least 1");
  for (const Clause& c : problem.theory)
    for (const Literal& l : c.literals)
      for (const Term& t : l.args) check_elements(t, domain_size);
  for (const Constraint& c : problem.constraints) {
    for (int e : c.cell)
      if (e >= domain_size)
        throw InputError("constraint element " + std::to_string(e) +
                         " is outside the domain");
    if (c.kind == Constraint::Kind::AssignFunction && c.value >= domain_size)
      throw InputError("constraint value " + std::to_string(c.value) +
                       " is outside the domain");
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool infix_function(const Symbol* sym) {
  return sym->arity == 2 &&
         (sym->name == "*" || sym->name == "+" || sym->name == "-");
}

void print_term(std::ostream& os, const Term& t, bool parenthesize) {
  switch (t.kind) {
    case Term::Kind::Variable:
      os << t.var;
      return;
    case Term::Kind::DomainElement:
      os << t.element;
      return;
    case Term::Kind::Application:
      if (infix_function(t.symbol)) {
        if (parenthesize) os << '(';
        print_term(os, t.args[0], true);
        os << ' ' << t.symbol->name << ' ';
        print_term(os, t.args[1], true);
        if (parenthesize) os << ')';
        return;
      }
      os << t.symbol->name;
      if (!t.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
          if (i) os << ',';
          print_term(os, t.args[i], false);
        }
        os << ')';
      }
      return;
  }
}

}  // namespace

std::string to_string(const Term& term) {
  std::ostringstream os;
  print_term(os, term, false);
  return os.str();
}

std::string to_string(const Literal& literal) {
  std::ostringstream os;
  if (literal.relation->name == "=" && literal.args.size() == 2) {
    print_term(os, literal.args[0], true);
    os << (literal.positive ? " = " : " != ");
    print_term(os, literal.args[1], true);
    return os.str();
  }
  if (literal.relation->name == "<" && literal.args.size() == 2) {
    if (!literal.positive) os << "-(";
    print_term(os, literal.args[0], true);
    os << " < ";
    print_term(os, literal.args[1], true);
    if (!literal.positive) os << ')';
    return os.str();
  }
  if (!literal.positive) os << '-';
  os << literal.relation->name;
  if (!literal.args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < literal.args.size(); ++i) {
      if (i) os << ',';
      print_term(os, literal.args[i], false);
    }
    os << ')';
  }
  return os.str();
}

std::string to_string(const Clause& clause) {
  std::string out;
  for (std::size_t i = 0; i < clause.literals.size(); ++i) {
    if (i) out += " | ";
    out += to_string(clause.literals[i]);
  }
  out += '.';
  return out;
}

}  // namespace modelforge::lang
