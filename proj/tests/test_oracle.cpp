#include <catch2/catch.hpp>

#include "chainrank/dsl.hpp"
#include "chainrank/invariants.hpp"
#include "chainrank/oracle.hpp"

using namespace chainrank;

namespace {

GroupPtr make(const char* expr) { return eval_expression(*parse_expression(expr)); }

}  // namespace

TEST_CASE("longest centralizer chains") {
  ChainResult ab = longest_centralizer_chain(whole_group(make("C(12)")));
  CHECK(ab.length == 0);
  REQUIRE(ab.witness.size() == 1);
  CHECK(ab.witness[0].order() == 12);

  CHECK(longest_centralizer_chain(whole_group(make("S(3)"))).length == 2);
  CHECK(longest_centralizer_chain(whole_group(make("Q8"))).length == 2);
}

TEST_CASE("longest subgroup chains") {
  CHECK(longest_subgroup_chain(whole_group(make("C(7)"))).length == 1);
  CHECK(longest_subgroup_chain(whole_group(make("S(3)"))).length == 2);
  CHECK(longest_subgroup_chain(whole_group(make("S(4)"))).length == 4);
  CHECK(longest_subgroup_chain(whole_group(make("C(32)"))).length == 5);
}

TEST_CASE("longest normal chains") {
  CHECK(longest_normal_chain(whole_group(make("C(5)"))).length == 1);
  CHECK(longest_normal_chain(whole_group(make("A(5)"))).length == 1);
  CHECK(longest_normal_chain(whole_group(make("E(2,2)"))).length == 2);
  CHECK(longest_normal_chain(whole_group(make("D(4)"))).length == 3);
}

TEST_CASE("witnesses validate") {
  for (const char* expr : {"C(12)", "S(3)", "S(4)", "D(4)", "Q8", "A(4)"}) {
    GroupPtr g = make(expr);
    Subgroup whole = whole_group(g);
    CHECK(validate_chain_witness(longest_centralizer_chain(whole), whole,
                                 TreeInvariant::centralizer));
    CHECK(validate_chain_witness(longest_subgroup_chain(whole), whole, TreeInvariant::subgroup));
    CHECK(validate_chain_witness(longest_normal_chain(whole), whole, TreeInvariant::maxn));
  }
}

TEST_CASE("rank-chain identities") {
  for (const char* expr : {"C(12)", "S(3)", "S(4)", "D(4)", "D(6)", "Q8", "A(4)", "E(2,3)",
                           "C(2) wr C(3)", "C(3) wr C(2)"}) {
    GroupPtr g = make(expr);
    MarkedGroup m = default_marking(g);
    Subgroup whole = whole_group(g);
    CHECK(centralizer_rank(m) == Ordinal::finite(longest_centralizer_chain(whole).length + 1));
    CHECK(subgroup_rank(m) == Ordinal::finite(longest_subgroup_chain(whole).length + 1));
    CHECK(maxn_length(m) == Ordinal::finite(longest_normal_chain(whole).length + 1));
  }
}

TEST_CASE("explicit-vs-dedup crosscheck") {
  MarkedGroup triv = default_marking(FinGroup::trivial());
  for (TreeInvariant which : {TreeInvariant::centralizer, TreeInvariant::subgroup,
                              TreeInvariant::maxn, TreeInvariant::decomposition})
    CHECK(explicit_rank_crosscheck(triv, which));

  MarkedGroup s3 = default_marking(make("S(3)"));
  for (TreeInvariant which : {TreeInvariant::centralizer, TreeInvariant::subgroup,
                              TreeInvariant::maxn, TreeInvariant::decomposition})
    CHECK(explicit_rank_crosscheck(s3, which));

  CHECK(explicit_rank_crosscheck(default_marking(make("D(4)")), TreeInvariant::maxn));
}

TEST_CASE("oracle size limits") {
  GroupPtr s5 = make("S(5)");
  CHECK_THROWS_AS(longest_subgroup_chain(whole_group(s5)), Error);
  CHECK(longest_normal_chain(whole_group(s5)).length == 2);  // {e} < A5 < S5
  GroupPtr big = make("C(2) wr D(4)");                       // order 128 within normal limit
  CHECK(longest_normal_chain(whole_group(big)).length + 1 ==
        *maxn_length(default_marking(big)).as_finite());
}
