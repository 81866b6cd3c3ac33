#include <catch2/catch.hpp>

#include <numeric>

#include "chainrank/dsl.hpp"
#include "chainrank/group.hpp"
#include "chainrank/marking.hpp"
#include "chainrank/quotient.hpp"
#include "chainrank/subgroup.hpp"

using namespace chainrank;

namespace {

GroupPtr make(const char* expr) { return eval_expression(*parse_expression(expr)); }

Permutation cyc(std::size_t degree, const char* text) {
  return Permutation::from_cycles(degree, text);
}

std::size_t exponent_of(const GroupPtr& g) {
  std::size_t exp = 1;
  for (Elem e = 0; e < g->order(); ++e) {
    std::size_t ord = 1;
    Elem x = e;
    while (x != FinGroup::kIdentity) {
      x = g->mul(x, e);
      ++ord;
    }
    exp = std::lcm(exp, ord);
  }
  return exp;
}

}  // namespace

TEST_CASE("permutation basics") {
  Permutation p = cyc(4, "(0 1)(2 3)");
  CHECK(p.apply(0) == 1);
  CHECK(p.apply(2) == 3);
  CHECK(p.then(p).is_identity());
  CHECK(p.inverse() == p);
  CHECK(p.to_cycle_string() == "(0 1)(2 3)");
  CHECK(Permutation::identity(3).to_cycle_string() == "()");
  CHECK_THROWS_AS(Permutation({0, 0}), Error);
  CHECK_THROWS_AS(cyc(3, "(0 5)"), Error);
  CHECK_THROWS_AS(cyc(3, "(0 1)(1 2)"), Error);
  CHECK_THROWS_AS(cyc(3, "(0 1"), Error);
}

TEST_CASE("group generation") {
  GroupPtr s3 = FinGroup::generate(3, {cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  CHECK(s3->order() == 6);
  CHECK(s3->element(FinGroup::kIdentity).is_identity());

  GroupPtr triv = FinGroup::generate(1, {});
  CHECK(triv->order() == 1);

  GroupPtr c4 = FinGroup::generate(4, {cyc(4, "(0 1 2 3)")});
  CHECK(c4->order() == 4);

  CHECK_THROWS_AS(FinGroup::generate(4, {cyc(4, "(0 1)"), cyc(4, "(0 1 2 3)")}, 10), Error);
  CHECK_THROWS_AS(FinGroup::generate(3, {cyc(4, "(0 1)")}), Error);  // degree mismatch
}

TEST_CASE("canonical order is deterministic and words resolve") {
  GroupPtr a = FinGroup::generate(3, {cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  GroupPtr b = FinGroup::generate(3, {cyc(3, "(0 1)"), cyc(3, "(0 1 2)")});
  for (Elem e = 0; e < a->order(); ++e) CHECK(a->element(e) == b->element(e));
  // each element equals the product of its discovery word
  for (Elem e = 0; e < a->order(); ++e) {
    Elem acc = FinGroup::kIdentity;
    for (unsigned gi : a->element_words()[e]) acc = a->mul(acc, a->generator_indices()[gi]);
    CHECK(acc == e);
  }
  CHECK(a->word_string(FinGroup::kIdentity) == "e");
}

TEST_CASE("subgroup closure") {
  GroupPtr s3 = make("S(3)");
  CHECK(subgroup_closure(s3, {}).order() == 1);
  Elem three_cycle = *s3->find(cyc(3, "(0 1 2)"));
  Elem transposition = *s3->find(cyc(3, "(0 1)"));
  CHECK(subgroup_closure(s3, {three_cycle}).order() == 3);
  CHECK(subgroup_closure(s3, {transposition, three_cycle}).order() == 6);
  for (Elem seed : {three_cycle, transposition})
    CHECK(is_closed_subgroup(subgroup_closure(s3, {seed})));
}

TEST_CASE("centralizer") {
  GroupPtr s3 = make("S(3)");
  CHECK(centralizer(whole_group(s3), {}).order() == s3->order());
  Elem t = *s3->find(cyc(3, "(0 1)"));
  Subgroup c = centralizer(whole_group(s3), {t});
  CHECK(c.order() == 2);
  CHECK(c.contains(t));

  GroupPtr q8 = make("Q8");
  Elem i = q8->generator_indices()[0];
  Elem j = q8->generator_indices()[1];
  CHECK(centralizer(whole_group(q8), {i, j}).order() == 2);
}

TEST_CASE("centralizer of a set is the meet of pointwise centralizers") {
  GroupPtr s4 = make("S(4)");
  Subgroup whole = whole_group(s4);
  std::vector<Elem> a{1, 5, 11};
  Subgroup joint = centralizer(whole, a);
  Bitset meet = whole.members;
  for (Elem x : a) meet = meet & centralizer(whole, {x}).members;
  CHECK(joint.members == meet);
}

TEST_CASE("normal closure") {
  GroupPtr s3 = make("S(3)");
  CHECK(normal_closure(whole_group(s3), {}).order() == 1);
  Elem t = *s3->find(cyc(3, "(0 1)"));
  Elem r = *s3->find(cyc(3, "(0 1 2)"));
  CHECK(normal_closure(whole_group(s3), {t}).order() == 6);
  CHECK(normal_closure(whole_group(s3), {r}).order() == 3);
}

TEST_CASE("normal closure is the smallest containing normal subgroup") {
  for (const char* expr : {"S(3)", "D(4)", "Q8", "A(4)"}) {
    GroupPtr g = make(expr);
    Subgroup whole = whole_group(g);
    std::vector<Subgroup> normals = normal_subgroups(whole);
    for (Elem x = 0; x < g->order(); ++x) {
      Subgroup nc = normal_closure(whole, {x});
      CHECK(is_normal_in(whole, nc));
      for (const Subgroup& n : normals)
        if (n.contains(x)) {
          CHECK(nc.members.is_subset_of(n.members));
          break;  // normals sorted by order: first containing is smallest
        }
    }
  }
}

TEST_CASE("commutator subgroup") {
  CHECK(commutator_subgroup(whole_group(make("C(6)"))).order() == 1);
  CHECK(commutator_subgroup(whole_group(make("S(3)"))).order() == 3);
  CHECK(commutator_subgroup(whole_group(make("Q8"))).order() == 2);
}

TEST_CASE("intersection") {
  GroupPtr q8 = make("Q8");
  Subgroup i = subgroup_closure(q8, {q8->generator_indices()[0]});
  Subgroup j = subgroup_closure(q8, {q8->generator_indices()[1]});
  CHECK(intersect(i, i).members == i.members);
  CHECK(intersect(i, trivial_subgroup(q8)).order() == 1);
  CHECK(intersect(i, j).order() == 2);

  GroupPtr s3 = make("S(3)");
  CHECK_THROWS_AS(intersect(i, whole_group(s3)), Error);
}

TEST_CASE("quotient") {
  GroupPtr s3 = make("S(3)");
  QuotientGroup q1 = quotient(s3, trivial_subgroup(s3));
  CHECK(q1.group->order() == 6);

  Subgroup a3 = normal_closure(whole_group(s3), {*s3->find(cyc(3, "(0 1 2)"))});
  QuotientGroup q2 = quotient(s3, a3);
  CHECK(q2.group->order() == 2);
  CHECK(q2.coset_count() * q2.kernel.order() == s3->order());

  GroupPtr d4 = make("D(4)");
  Bitset z = center_set(whole_group(d4));
  QuotientGroup q3 = quotient(d4, {d4, z});
  CHECK(q3.group->order() == 4);
  CHECK(exponent_of(q3.group) == 2);

  Subgroup t = subgroup_closure(s3, {*s3->find(cyc(3, "(0 1)"))});
  CHECK_THROWS_AS(quotient(s3, t), Error);
}

TEST_CASE("coset multiplication is well-defined") {
  for (const char* expr : {"S(3)", "D(4)", "A(4)"}) {
    GroupPtr g = make(expr);
    for (const Subgroup& n : normal_subgroups(whole_group(g))) {
      QuotientGroup q = quotient(g, n);
      for (Elem a = 0; a < g->order(); ++a)
        for (Elem b = 0; b < g->order(); ++b)
          CHECK(q.project(g->mul(a, b)) == q.group->mul(q.project(a), q.project(b)));
    }
  }
}

TEST_CASE("normal subgroup enumeration") {
  CHECK(normal_subgroups(whole_group(make("C(5)"))).size() == 2);
  CHECK(normal_subgroups(whole_group(make("S(3)"))).size() == 3);
  CHECK(normal_subgroups(whole_group(make("D(4)"))).size() == 6);
  for (const Subgroup& n : normal_subgroups(whole_group(make("D(4)")))) {
    CHECK(is_closed_subgroup(n));
    CHECK(is_normal_in(whole_group(n.parent), n));
  }
}

TEST_CASE("low-index normal subgroups") {
  GroupPtr s3 = make("S(3)");
  Subgroup whole = whole_group(s3);
  for (std::uint64_t k = 1; k <= 6; ++k) {
    auto low = low_index_normal_subgroups(whole, k);
    bool has_whole = false;
    for (const Subgroup& n : low) has_whole |= n.members == whole.members;
    CHECK(has_whole);
  }
  CHECK(low_index_normal_subgroups(whole, 1).size() == 2);  // S3 and A3
  CHECK(low_index_normal_subgroups(whole, 5).size() == 3);  // {e} enters at index 6
}

TEST_CASE("direct product") {
  GroupPtr g = make("S(3)");
  CHECK(FinGroup::direct_product(g, FinGroup::trivial())->order() == 6);
  GroupPtr v = FinGroup::direct_product(make("C(2)"), make("C(2)"));
  CHECK(v->order() == 4);
  CHECK(exponent_of(v) == 2);
  CHECK(FinGroup::direct_product(make("S(3)"), make("C(2)"))->order() == 12);
  CHECK_THROWS_AS(FinGroup::direct_product(make("S(5)"), make("S(5)"), 1000), Error);
}

TEST_CASE("wreath product") {
  CHECK(FinGroup::wreath_product(make("S(3)"), FinGroup::trivial())->order() == 6);

  GroupPtr w = FinGroup::wreath_product(make("C(2)"), make("C(2)"));
  CHECK(w->order() == 8);
  // isomorphic to D4: same normal-subgroup count and center size
  CHECK(normal_subgroups(whole_group(w)).size() == 6);
  CHECK(center_set(whole_group(w)).count() == 2);

  CHECK(FinGroup::wreath_product(make("C(2)"), make("C(3)"))->order() == 24);
  // top group with two orbits on its points still gets a full base
  GroupPtr v4 = make("E(2,2)");  // degree 4, orbits {0,1}, {2,3}
  CHECK(FinGroup::wreath_product(make("C(2)"), v4)->order() == 64);
  CHECK_THROWS_AS(FinGroup::wreath_product(make("C(4)"), make("C(4)"), 500), Error);
}

TEST_CASE("all subgroups") {
  CHECK(all_subgroups(whole_group(make("C(7)"))).size() == 2);
  CHECK(all_subgroups(whole_group(make("S(3)"))).size() == 6);
  CHECK(all_subgroups(whole_group(make("Q8"))).size() == 6);
  CHECK(all_subgroups(whole_group(make("S(4)"))).size() == 30);
  CHECK_THROWS_AS(all_subgroups(whole_group(make("S(5)"))), Error);
  for (const Subgroup& h : all_subgroups(whole_group(make("S(3)")))) CHECK(is_closed_subgroup(h));
}

TEST_CASE("default marking") {
  GroupPtr triv = FinGroup::trivial();
  MarkedGroup m0 = default_marking(triv);
  CHECK(m0.length() == 1);
  CHECK(m0.enumeration[0] == FinGroup::kIdentity);

  GroupPtr s3 = make("S(3)");
  MarkedGroup m = default_marking(s3);
  CHECK(m.length() == 6);
  CHECK(m.enumeration[0] == FinGroup::kIdentity);  // identity first by construction
  validate_marking(m);
}

TEST_CASE("remark determinism and surjectivity") {
  GroupPtr s3 = make("S(3)");
  MarkedGroup base = default_marking(s3);
  MarkedGroup a = remark(base, 7);
  MarkedGroup b = remark(base, 7);
  CHECK(a.enumeration == b.enumeration);
  CHECK(a.carrier.members == base.carrier.members);
  MarkedGroup c = remark(base, 8);
  CHECK(a.enumeration != c.enumeration);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) validate_marking(remark(base, seed));
}

TEST_CASE("induced subgroup marking") {
  GroupPtr s3 = make("S(3)");
  MarkedGroup m = default_marking(s3);

  MarkedGroup same = induced_subgroup_marking(m, whole_group(s3));
  CHECK(same.enumeration == m.enumeration);

  MarkedGroup trivial_m = induced_subgroup_marking(m, trivial_subgroup(s3));
  for (Elem e : trivial_m.enumeration) CHECK(e == FinGroup::kIdentity);

  Subgroup a3 = subgroup_closure(s3, {*s3->find(cyc(3, "(0 1 2)"))});
  MarkedGroup ma3 = induced_subgroup_marking(m, a3);
  validate_marking(ma3);
  for (std::size_t i = 0; i < m.length(); ++i) {
    if (a3.contains(m.enumeration[i]))
      CHECK(ma3.enumeration[i] == m.enumeration[i]);
    else
      CHECK(ma3.enumeration[i] == FinGroup::kIdentity);
  }
}

TEST_CASE("induced markings compose path-independently") {
  GroupPtr s4 = make("S(4)");
  MarkedGroup m = remark(default_marking(s4), 3);
  auto subs = all_subgroups(whole_group(s4));
  std::size_t checked = 0;
  for (const Subgroup& h : subs) {
    for (const Subgroup& k : subs) {
      if (!k.members.is_subset_of(h.members) || checked > 200) continue;
      MarkedGroup via_h = induced_subgroup_marking(induced_subgroup_marking(m, h), k);
      MarkedGroup direct = induced_subgroup_marking(m, k);
      CHECK(via_h.enumeration == direct.enumeration);
      ++checked;
    }
  }
  CHECK(checked > 0);
  CHECK_THROWS_AS(induced_subgroup_marking(induced_subgroup_marking(m, trivial_subgroup(s4)),
                                           whole_group(s4)),
                  Error);
}

TEST_CASE("induced quotient marking") {
  GroupPtr s3 = make("S(3)");
  MarkedGroup m = default_marking(s3);

  auto [q_triv, m_triv] = induced_quotient_marking(m, trivial_subgroup(s3));
  CHECK(q_triv.group->order() == 6);
  CHECK(m_triv.length() == 6);
  validate_marking(m_triv);

  auto [q_all, m_all] = induced_quotient_marking(m, whole_group(s3));
  CHECK(q_all.group->order() == 1);
  validate_marking(m_all);

  Subgroup a3 = normal_closure(whole_group(s3), {*s3->find(cyc(3, "(0 1 2)"))});
  auto [q, mq] = induced_quotient_marking(m, a3);
  CHECK(q.group->order() == 2);
  CHECK(mq.length() == 6);
  validate_marking(mq);
}

TEST_CASE("conjugacy classes partition the carrier") {
  for (const char* expr : {"S(3)", "Q8", "D(4)", "A(4)"}) {
    GroupPtr g = make(expr);
    const auto& classes = subgroup_classes(whole_group(g));
    std::size_t total = 0;
    for (const auto& cls : classes) total += cls.size();
    CHECK(total == g->order());
    // class sizes divide the group order
    for (const auto& cls : classes) CHECK(g->order() % cls.size() == 0);
  }
}

TEST_CASE("subgroup operations stay closed") {
  GroupPtr s4 = make("S(4)");
  Subgroup whole = whole_group(s4);
  CHECK(is_closed_subgroup(centralizer(whole, {3})));
  CHECK(is_closed_subgroup(normal_closure(whole, {5})));
  CHECK(is_closed_subgroup(commutator_subgroup(whole)));
  CHECK(is_closed_subgroup({s4, center_set(whole)}));
  CHECK(is_closed_subgroup(intersect(centralizer(whole, {3}), normal_closure(whole, {5}))));
}
