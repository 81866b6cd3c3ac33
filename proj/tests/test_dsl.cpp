#include <catch2/catch.hpp>

#include "chainrank/dsl.hpp"
#include "chainrank/invariants.hpp"

using namespace chainrank;

namespace {

GroupPtr ev(const char* expr, EvalOptions opts = {}) {
  return eval_expression(*parse_expression(expr), opts);
}

bool is_abelian(const GroupPtr& g) {
  return commutator_subgroup(whole_group(g)).order() == 1;
}

}  // namespace

TEST_CASE("parse atoms") {
  ExprPtr e = parse_expression("C(6)");
  CHECK(e->kind == GroupExpr::Kind::atom);
  CHECK(e->atom == GroupExpr::AtomKind::cyclic);
  CHECK(e->args[0].base.value == 6);

  CHECK(parse_expression("Q8")->atom == GroupExpr::AtomKind::quaternion);
  CHECK(parse_expression("E(2,3)")->args.size() == 2);
  ExprPtr p = parse_expression("perm(4; (0 1), (0 1 2 3))");
  CHECK(p->atom == GroupExpr::AtomKind::perm);
  CHECK(p->perm_degree == 4);
  CHECK(p->perm_cycles.size() == 2);
}

TEST_CASE("parse operators and precedence") {
  ExprPtr w = parse_expression("C(2) wr C(2)");
  CHECK(w->kind == GroupExpr::Kind::wreath);

  // '*' binds tighter than 'wr'
  ExprPtr mixed = parse_expression("C(2)*C(3) wr C(2)");
  CHECK(mixed->kind == GroupExpr::Kind::wreath);
  CHECK(mixed->left->kind == GroupExpr::Kind::product);

  // both operators associate to the left
  ExprPtr chain = parse_expression("C(2) wr C(2) wr C(2)");
  CHECK(chain->kind == GroupExpr::Kind::wreath);
  CHECK(chain->left->kind == GroupExpr::Kind::wreath);

  ExprPtr parens = parse_expression("C(2) wr (C(2) wr C(2))");
  CHECK(parens->right->kind == GroupExpr::Kind::wreath);
}

TEST_CASE("parse quotient, subgroup and union nodes") {
  ExprPtr q = parse_expression("quotient(S(3); g0*g1*g0^-1*g1^-1)");
  CHECK(q->kind == GroupExpr::Kind::quotient);
  CHECK(q->inner->atom == GroupExpr::AtomKind::symmetric);
  REQUIRE(q->words.size() == 1);
  CHECK(q->words[0] == "g0*g1*g0^-1*g1^-1");

  ExprPtr s = parse_expression("subgroup(S(4); g1, g0*g0)");
  CHECK(s->kind == GroupExpr::Kind::subgroup_of);
  CHECK(s->words.size() == 2);

  ExprPtr u = parse_expression("union(n, D(2^n))");
  CHECK(u->kind == GroupExpr::Kind::union_family);
  CHECK(u->param == "n");
  CHECK(u->body->atom == GroupExpr::AtomKind::dihedral);
  CHECK(u->body->args[0].exponent.has_value());
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse_expression("C("), SyntaxError);
  CHECK_THROWS_AS(parse_expression("C(2"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("Zz(2)"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("C(2) extra"), SyntaxError);
  CHECK_THROWS_AS(parse_expression(""), SyntaxError);
  try {
    parse_expression("C(2) % C(3)");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("render round-trips through parse") {
  for (const char* text :
       {"C(6)", "S(4)", "Q8", "E(2,3)", "C(2) wr C(2)", "C(2)*C(3) wr C(2)",
        "C(2) wr (C(3) wr C(2))", "(C(2)*C(3))*C(5)", "quotient(S(3); g1)",
        "subgroup(S(4); g0, g1)", "union(n, D(2^n))", "perm(4; (0 1), (0 1 2 3))",
        "union(k, C(k)*C(2))"}) {
    ExprPtr e = parse_expression(text);
    std::string rendered = render_expression(*e);
    ExprPtr back = parse_expression(rendered);
    CHECK(render_expression(*back) == rendered);
  }
}

TEST_CASE("atom evaluation orders") {
  CHECK(ev("C(1)")->order() == 1);
  CHECK(ev("C(12)")->order() == 12);
  CHECK(ev("S(5)")->order() == 120);
  CHECK(ev("A(3)")->order() == 3);
  CHECK(ev("A(4)")->order() == 12);
  CHECK(ev("A(5)")->order() == 60);
  CHECK(ev("A(6)")->order() == 360);
  CHECK(ev("D(1)")->order() == 2);
  CHECK(ev("D(2)")->order() == 4);
  CHECK(ev("D(7)")->order() == 14);
  CHECK(ev("Q8")->order() == 8);
  CHECK(ev("E(2,3)")->order() == 8);
  CHECK(ev("E(3,2)")->order() == 9);
  CHECK(ev("perm(4; (0 1), (0 1 2 3))")->order() == 24);
  CHECK_THROWS_AS(ev("C(0)"), Error);
  CHECK_THROWS_AS(ev("E(4,2)"), Error);
}

TEST_CASE("product and wreath evaluation") {
  GroupPtr p = ev("C(2)*C(3)");
  CHECK(p->order() == 6);
  CHECK(is_abelian(p));

  CHECK(ev("C(2) wr C(2)")->order() == 8);
  CHECK(ev("C(2) wr C(3)")->order() == 24);
  CHECK(ev("C(3) wr C(2)")->order() == 18);

  // order formulas
  for (const char* h : {"C(2)", "C(3)", "S(3)"})
    for (const char* k : {"C(2)", "C(3)"}) {
      GroupPtr gh = ev(h), gk = ev(k);
      std::size_t expect = gk->order();
      for (std::size_t i = 0; i < gk->degree(); ++i) expect *= gh->order();
      CHECK(FinGroup::wreath_product(gh, gk)->order() == expect);
      CHECK(FinGroup::direct_product(gh, gk)->order() == gh->order() * gk->order());
    }
}

TEST_CASE("quotient evaluation resolves words") {
  // g1 is the 3-cycle of S(3); its normal closure is A3
  CHECK(ev("quotient(S(3); g1)")->order() == 2);
  // the commutator word also lands in A3
  CHECK(ev("quotient(S(3); g0*g1*g0^-1*g1^-1)")->order() == 2);
  CHECK(ev("quotient(S(3); g0)")->order() == 1);
  CHECK(ev("quotient(S(4); g0*g1^-1*g0*g1)")->order() > 1);
}

TEST_CASE("subgroup evaluation") {
  CHECK(ev("subgroup(S(3); g1)")->order() == 3);
  CHECK(ev("subgroup(S(4); g0)")->order() == 2);
  CHECK(ev("subgroup(S(4); g0, g1)")->order() == 24);
}

TEST_CASE("word resolution errors") {
  CHECK_THROWS_AS(ev("quotient(S(3); g9)"), Error);
  CHECK_THROWS_AS(ev("quotient(S(3); h0)"), Error);
  CHECK_THROWS_AS(ev("quotient(S(3); g0*)"), Error);
}

TEST_CASE("union families need instantiation") {
  CHECK_THROWS_AS(ev("union(n, D(2^n))"), Error);
  EvalOptions opts;
  opts.params["n"] = 3;
  CHECK(ev("union(n, D(2^n))", opts)->order() == 16);  // D(8)
  opts.params["n"] = 2;
  CHECK(ev("union(n, C(n)*C(2))", opts)->order() == 4);
}

TEST_CASE("size limits in evaluation") {
  EvalOptions small;
  small.size_limit = 10;
  CHECK_THROWS_AS(ev("S(4)", small), Error);
  CHECK_THROWS_AS(ev("C(11)", small), Error);
  CHECK_THROWS_AS(ev("C(4) wr C(4)", small), Error);
}

TEST_CASE("construction-rank bounds") {
  RkBound atom = rk_bound(*parse_expression("C(6)"));
  CHECK(atom.bound.is_zero());
  REQUIRE(atom.exact);
  CHECK(atom.exact->is_zero());

  RkBound prod = rk_bound(*parse_expression("C(2)*C(3)"));
  CHECK(prod.bound == Ordinal::finite(1));
  REQUIRE(prod.exact);
  CHECK(prod.exact->is_zero());

  RkBound wreath = rk_bound(*parse_expression("C(2) wr C(2)"));
  CHECK(wreath.bound == Ordinal::finite(2));

  RkBound uni = rk_bound(*parse_expression("union(n, D(2^n))"));
  CHECK(uni.bound == Ordinal::finite(1));
  CHECK(!uni.exact);

  // subgroup and quotient operators do not raise the stage
  CHECK(rk_bound(*parse_expression("quotient(S(3); g1)")).bound.is_zero());
  CHECK(rk_bound(*parse_expression("subgroup(union(n, D(2^n)); g0)")).bound ==
        Ordinal::finite(1));
}

TEST_CASE("xi bounds dominate concrete decomposition ranks") {
  CHECK(xi_bound(*parse_expression("C(6)")) == Ordinal::omega());
  CHECK(xi_bound(*parse_expression("union(n, D(2^n))")) == Ordinal::omega() * Ordinal::finite(2));

  for (const char* text : {"C(6)", "S(3)", "C(2) wr C(2)", "Q8*C(2)"}) {
    ExprPtr e = parse_expression(text);
    Ordinal xi = decomposition_rank_and_degree(default_marking(eval_expression(*e))).xi;
    CHECK(xi <= xi_bound(*e));
    CHECK(rk_bound(*e).exact.value_or(Ordinal()) <= rk_bound(*e).bound);
  }
}
