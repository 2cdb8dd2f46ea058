#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "modelforge/lang.hpp"

using namespace modelforge;
using lang::InputProblem;
using lang::Settings;
using lang::SymbolKind;

namespace {

const char kGroupInput[] = R"(set(auto).
list(usable).
  e * x = x.                  % left identity
  g(x) * x = e.               % left inverse
  (x * y) * z = x * (y * z).  % associativity
  a * b != b * a.             % the point
end_of_list.
)";

std::string clause_text(const InputProblem& p, std::size_t i) {
  return lang::to_string(p.theory[i]);
}

}  // namespace

TEST_CASE("group input parses into four clauses with expected symbols") {
  InputProblem p = lang::parse_input(kGroupInput);
  REQUIRE(p.theory.size() == 4);

  const lang::Symbol* star = p.symbols.find("*");
  REQUIRE(star != nullptr);
  CHECK(star->kind == SymbolKind::Function);
  CHECK(star->arity == 2);

  const lang::Symbol* g = p.symbols.find("g");
  REQUIRE(g != nullptr);
  CHECK(g->kind == SymbolKind::Function);
  CHECK(g->arity == 1);

  for (const char* c : {"e", "a", "b"}) {
    const lang::Symbol* sym = p.symbols.find(c);
    REQUIRE(sym != nullptr);
    CHECK(sym->kind == SymbolKind::Function);
    CHECK(sym->arity == 0);
  }

  const lang::Symbol* eq = p.symbols.find("=");
  REQUIRE(eq != nullptr);
  CHECK(eq->is_equality);
  CHECK(eq->kind == SymbolKind::Relation);

  // The last clause is the negative equality.
  CHECK_FALSE(p.theory[3].literals[0].positive);
}

TEST_CASE("empty list yields an empty theory") {
  InputProblem p = lang::parse_input("list(usable). end_of_list.\n");
  CHECK(p.theory.empty());
}

TEST_CASE("arity conflicts are input errors") {
  CHECK_THROWS_AS(
      lang::parse_input("list(usable). P(f(x)) | P(f(x,y)). end_of_list."),
      InputError);
  // Same symbol as relation and function.
  CHECK_THROWS_AS(
      lang::parse_input("list(usable). P(x) | Q(P(x)). end_of_list."),
      InputError);
  // Arity limits: function > 3, relation > 4.
  CHECK_THROWS_AS(
      lang::parse_input("list(usable). P(f(x,x,x,x)). end_of_list."),
      InputError);
  CHECK_THROWS_AS(
      lang::parse_input("list(usable). R(x,x,x,x,x). end_of_list."),
      InputError);
}

TEST_CASE("variable classification") {
  Settings def, prolog;
  prolog.prolog_style_variables = true;
  CHECK(lang::is_variable_token("x", def));
  CHECK(lang::is_variable_token("u", def));
  CHECK_FALSE(lang::is_variable_token("a", def));
  CHECK_FALSE(lang::is_variable_token("X", def));
  CHECK(lang::is_variable_token("X", prolog));
  CHECK(lang::is_variable_token("Abc", prolog));
  CHECK_FALSE(lang::is_variable_token("x", prolog));
}

TEST_CASE("equality symbol classification") {
  Settings def, tptp;
  tptp.tptp_eq = true;
  CHECK(lang::is_equality_name("=", def));
  CHECK(lang::is_equality_name("EQUAL", def));
  CHECK(lang::is_equality_name("eq3", def));
  CHECK(lang::is_equality_name("Eq", def));
  CHECK_FALSE(lang::is_equality_name("same", def));
  CHECK(lang::is_equality_name("equal", tptp));
  CHECK_FALSE(lang::is_equality_name("eq3", tptp));
  CHECK_FALSE(lang::is_equality_name("=", tptp));
}

TEST_CASE("formulas clausify to the expected clause shapes") {
  InputProblem p = lang::parse_input(
      "formula_list(usable).\n"
      "  all x (P(x) & Q(x) -> R(x) & S(x)).\n"
      "end_of_list.\n");
  REQUIRE(p.theory.size() == 2);
  CHECK(clause_text(p, 0) == "-P(x) | -Q(x) | R(x).");
  CHECK(clause_text(p, 1) == "-P(x) | -Q(x) | S(x).");
}

TEST_CASE("existentials skolemize to reserved-prefix symbols") {
  InputProblem p = lang::parse_input(
      "formula_list(usable).\n"
      "  exists e ((all x (f(e,x) = x)) &\n"
      "            (all x exists y (f(y,x) = e))).\n"
      "end_of_list.\n");
  REQUIRE(p.theory.size() == 2);
  CHECK(clause_text(p, 0) == "f($c1,x) = x.");
  CHECK(clause_text(p, 1) == "f($f1(x),x) = $c1.");
  const lang::Symbol* sk = p.symbols.find("$f1");
  REQUIRE(sk != nullptr);
  CHECK(sk->kind == SymbolKind::Function);
  CHECK(sk->arity == 1);
}

TEST_CASE("already clausal formula passes through") {
  InputProblem p = lang::parse_input(
      "formula_list(usable). all x P(x). end_of_list.");
  REQUIRE(p.theory.size() == 1);
  CHECK(clause_text(p, 0) == "P(x).");
}

TEST_CASE("free formula variables are universally closed") {
  InputProblem p = lang::parse_input(
      "formula_list(usable). P(x) -> Q(x). end_of_list.");
  REQUIRE(p.theory.size() == 1);
  CHECK(clause_text(p, 0) == "-P(x) | Q(x).");
}

TEST_CASE("answer literals are stripped") {
  InputProblem p = lang::parse_input(
      "list(usable). -P(x) | $ans(x). end_of_list.");
  REQUIRE(p.theory.size() == 1);
  CHECK(clause_text(p, 0) == "-P(x).");

  CHECK_THROWS_AS(lang::parse_input("list(usable). $Ans(a). end_of_list."),
                  InputError);
}

TEST_CASE("evaluable dollar symbols are ordinary symbols") {
  InputProblem p = lang::parse_input(
      "set(hyper_res).\n"
      "list(sos).\n"
      "  -P(x) | P($SUM(x,x)).\n"
      "  P(1).\n"
      "  -P(2).\n"
      "end_of_list.\n");
  REQUIRE(p.theory.size() == 3);
  const lang::Symbol* sum = p.symbols.find("$SUM");
  REQUIRE(sum != nullptr);
  CHECK(sum->kind == SymbolKind::Function);
  CHECK(sum->arity == 2);
  CHECK_FALSE(sum->is_answer);
  CHECK_NOTHROW(lang::validate(p, 3));
  CHECK_THROWS_AS(lang::validate(p, 2), InputError);  // constant 2 present
}

TEST_CASE("validate rejects out-of-domain constants") {
  InputProblem p = lang::parse_input("list(usable). P(5). end_of_list.");
  CHECK_THROWS_AS(lang::validate(p, 4), InputError);
  CHECK_NOTHROW(lang::validate(p, 6));

  InputProblem q = lang::parse_input("list(usable). P(x). end_of_list.");
  CHECK_NOTHROW(lang::validate(q, 2));
}

TEST_CASE("clause print/parse round-trip") {
  const char* inputs[] = {
      "list(usable). e * x = x. end_of_list.",
      "list(usable). (x * y) * z = x * (y * z). end_of_list.",
      "list(usable). a * b != b * a. end_of_list.",
      "list(usable). -even(x) | even(s(s(x))). end_of_list.",
      "list(usable). -P(x) | P($SUM(x,x)). end_of_list.",
      "list(usable). x < s(x) | R(x,y,0). end_of_list.",
  };
  for (const char* in : inputs) {
    InputProblem p1 = lang::parse_input(in);
    std::string printed = lang::to_string(p1.theory[0]);
    InputProblem p2 =
        lang::parse_input("list(usable). " + printed + " end_of_list.");
    CHECK(lang::to_string(p2.theory[0]) == printed);
  }
}

TEST_CASE("mace_constraints parse into typed constraints") {
  InputProblem p = lang::parse_input(
      "list(usable). e * x = x | g(x) != x | P(x) | Q(x,y) | same(x,y) |"
      " lt(x,y). end_of_list.\n"
      "list(mace_constraints).\n"
      "  assign(e, 0).\n"
      "  assign(g(2), 1).\n"
      "  assign(3*4, 2).\n"
      "  assign(P(1), T).\n"
      "  assign(Q(0,3), F).\n"
      "  property(same(_,_), equality).\n"
      "  property(lt(_,_), order).\n"
      "  property(g(_), bijection).\n"
      "  property(_*_, quasigroup).\n"
      "end_of_list.\n");
  using lang::Constraint;
  REQUIRE(p.constraints.size() == 9);
  CHECK(p.constraints[0].kind == Constraint::Kind::AssignFunction);
  CHECK(p.constraints[0].symbol->name == "e");
  CHECK(p.constraints[0].value == 0);
  CHECK(p.constraints[1].cell == std::vector<int>{2});
  CHECK(p.constraints[2].cell == std::vector<int>{3, 4});
  CHECK(p.constraints[2].value == 2);
  CHECK(p.constraints[3].kind == Constraint::Kind::AssignRelation);
  CHECK(p.constraints[3].value == 1);
  CHECK(p.constraints[4].value == 0);
  CHECK(p.constraints[5].prop == Constraint::Prop::Equality);
  CHECK(p.symbols.find("same")->is_equality);
  CHECK(p.constraints[6].prop == Constraint::Prop::Order);
  CHECK(p.symbols.find("lt")->is_order);
  CHECK(p.constraints[7].prop == Constraint::Prop::Bijection);
  CHECK(p.constraints[8].prop == Constraint::Prop::Quasigroup);
  CHECK(p.constraints[8].symbol->name == "*");
}

TEST_CASE("constraint errors") {
  CHECK_THROWS_AS(lang::parse_input("list(mace_constraints). assign(zz, 0). "
                                    "end_of_list."),
                  InputError);
  CHECK_THROWS_AS(
      lang::parse_input("list(usable). P(g(x)). end_of_list. "
                        "list(mace_constraints). property(g(_,_), bijection). "
                        "end_of_list."),
      InputError);
  CHECK_THROWS_AS(
      lang::parse_input("list(mace_constraints). property(g(_), wild). "
                        "end_of_list."),
      InputError);
}

TEST_CASE("hot list and unknown commands are ignored with warnings") {
  InputProblem p = lang::parse_input(
      "set(auto).\n"
      "assign(max_seconds, 10).\n"
      "assign(stats_level, 2).\n"
      "list(hot). P(a). end_of_list.\n"
      "list(usable). Q(a). end_of_list.\n");
  CHECK(p.theory.size() == 1);  // only the usable clause
  bool warned_set = false, warned_assign = false, warned_hot = false,
       warned_seconds = false;
  for (const std::string& w : p.warnings) {
    if (w.find("auto") != std::string::npos) warned_set = true;
    if (w.find("stats_level") != std::string::npos) warned_assign = true;
    if (w.find("hot") != std::string::npos) warned_hot = true;
    if (w.find("max_seconds") != std::string::npos) warned_seconds = true;
  }
  CHECK(warned_set);
  CHECK(warned_assign);
  CHECK(warned_hot);
  CHECK_FALSE(warned_seconds);  // silently ignored per the manual
}

TEST_CASE("prolog style variables and tptp_eq settings") {
  InputProblem p = lang::parse_input(
      "set(prolog_style_variables).\n"
      "list(usable). p(X) | q(a). end_of_list.\n");
  // X is a variable, a is a constant.
  CHECK(lang::to_string(p.theory[0]) == "p(X) | q(a).");
  CHECK(p.symbols.find("X") == nullptr);
  CHECK(p.symbols.find("a") != nullptr);

  InputProblem q = lang::parse_input(
      "set(tptp_eq).\n"
      "list(usable). equal(f(x),x) | EQ(x,x). end_of_list.\n");
  CHECK(q.symbols.find("equal")->is_equality);
  CHECK_FALSE(q.symbols.find("EQ")->is_equality);
}

TEST_CASE("clausifier output is quantifier- and implication-free") {
  InputProblem p = lang::parse_input(
      "formula_list(usable).\n"
      "  all x all y (P(x,y) <-> exists z (Q(x,z) & Q(z,y))).\n"
      "end_of_list.\n");
  CHECK(p.theory.size() >= 2);
  for (const lang::Clause& c : p.theory) CHECK(!c.literals.empty());
}

TEST_CASE("empty clause is rejected") {
  CHECK_THROWS_AS(lang::parse_input("list(usable). . end_of_list."),
                  InputError);
}

TEST_CASE("clauses reject formula connectives") {
  CHECK_THROWS_AS(
      lang::parse_input("list(usable). P(x) -> Q(x). end_of_list."),
      InputError);
  CHECK_THROWS_AS(lang::parse_input("list(usable). P(x) & Q(x). end_of_list."),
                  InputError);
}
