#pragma once

#include <vector>

#include "chainrank/error.hpp"
#include "chainrank/group.hpp"
#include "chainrank/subgroup.hpp"

namespace chainrank {

// Quotient of a group by a normal subgroup, materialized as a standalone
// FinGroup via the regular action on cosets, plus the projection data needed
// to transport markings.
struct QuotientGroup {
  GroupPtr base;
  Subgroup kernel;
  std::vector<Elem> coset_rep;   // canonical representative per coset
  std::vector<Elem> projection;  // base element -> coset index
  GroupPtr group;                // regular action on cosets
  std::vector<Elem> coset_elem;  // coset index -> element of `group`

  std::size_t coset_count() const { return coset_rep.size(); }

  // Image in `group` of a base element.
  Elem project(Elem base_elem) const { return coset_elem[projection[base_elem]]; }
};

inline QuotientGroup quotient(const GroupPtr& g, const Subgroup& n) {
  if (n.parent.get() != g.get()) throw Error(errc::parent_mismatch, "kernel from a different group");
  if (!is_normal_in(whole_group(g), n)) throw Error(errc::not_normal, "kernel is not normal");

  QuotientGroup q;
  q.base = g;
  q.kernel = n;
  q.projection.assign(g->order(), 0);
  std::vector<bool> assigned(g->order(), false);
  for (Elem e = 0; e < g->order(); ++e) {
    if (assigned[e]) continue;
    Elem coset = static_cast<Elem>(q.coset_rep.size());
    q.coset_rep.push_back(e);
    n.members.for_each_set([&](std::size_t m) {
      Elem x = g->mul(static_cast<Elem>(m), e);
      assigned[x] = true;
      q.projection[x] = coset;
    });
  }
  if (q.coset_count() * n.order() != g->order())
    throw std::logic_error("coset decomposition size mismatch");

  std::size_t deg = q.coset_count();
  auto coset_perm = [&](Elem x) {
    std::vector<Permutation::Point> im(deg);
    for (std::size_t c = 0; c < deg; ++c)
      im[c] = static_cast<Permutation::Point>(q.projection[g->mul(q.coset_rep[c], x)]);
    return Permutation(std::move(im));
  };
  std::vector<Permutation> gens;
  for (Elem gi : g->generator_indices()) gens.push_back(coset_perm(gi));
  q.group = FinGroup::generate(deg, std::move(gens), deg + 1);
  if (q.group->order() != deg) throw std::logic_error("quotient closure produced wrong order");

  q.coset_elem.resize(deg);
  for (std::size_t c = 0; c < deg; ++c)
    q.coset_elem[c] = q.group->find(coset_perm(q.coset_rep[c])).value();
  return q;
}

}  // namespace chainrank
