#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chainrank/error.hpp"
#include "chainrank/group.hpp"
#include "chainrank/quotient.hpp"
#include "chainrank/subgroup.hpp"

namespace chainrank {

// Marked group: a carrier (the whole group or a subgroup) together with a
// finite surjective enumeration of its members, stored as parent element
// indices. Entries outside the carrier are the identity; this is the
// convention that makes induced markings compose path-independently.
struct MarkedGroup {
  Subgroup carrier;
  std::vector<Elem> enumeration;
  std::uint64_t seed = 0;  // 0 = canonical marking

  std::size_t length() const { return enumeration.size(); }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

inline void validate_marking(const MarkedGroup& m) {
  Bitset covered(m.carrier.parent->order());
  for (Elem e : m.enumeration) {
    if (e >= m.carrier.parent->order()) throw std::logic_error("marking entry out of range");
    if (!m.carrier.contains(e) && e != FinGroup::kIdentity)
      throw std::logic_error("marking entry outside carrier is not the identity");
    covered.set(e);
  }
  bool surjective = true;
  m.carrier.members.for_each_set([&](std::size_t e) {
    if (!covered.test(e)) surjective = false;
  });
  if (!surjective) throw std::logic_error("marking does not cover the carrier");
}

// Canonical marking of a whole group: its canonical element order.
inline MarkedGroup default_marking(const GroupPtr& g) {
  MarkedGroup m{whole_group(g), {}, 0};
  m.enumeration.resize(g->order());
  for (Elem e = 0; e < g->order(); ++e) m.enumeration[e] = e;
  return m;
}

// Enumeration entries outside the subgroup become the identity.
inline MarkedGroup induced_subgroup_marking(const MarkedGroup& m, const Subgroup& h) {
  if (!h.same_parent(m.carrier)) throw Error(errc::parent_mismatch, "subgroup of a different group");
  if (!h.members.is_subset_of(m.carrier.members))
    throw Error(errc::not_contained, "subgroup not contained in the carrier");
  MarkedGroup out{h, m.enumeration, m.seed};
  for (Elem& e : out.enumeration)
    if (!h.contains(e)) e = FinGroup::kIdentity;
  return out;
}

// Canonical marking of a subgroup: the parent's canonical order, masked.
inline MarkedGroup marking_of(const Subgroup& h) {
  return induced_subgroup_marking(default_marking(h.parent), h);
}

// Seeded re-marking: deterministic shuffle of the carrier's canonical member
// list with a seeded number of duplicated entries mixed in. Same carrier,
// still surjective, reproducible per seed.
inline MarkedGroup remark(const MarkedGroup& m, std::uint64_t seed) {
  std::vector<Elem> list;
  m.carrier.members.for_each_set([&](std::size_t e) { list.push_back(static_cast<Elem>(e)); });
  std::uint64_t state = seed * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull;
  std::size_t base = list.size();
  std::size_t dups = detail::splitmix64(state) % (base + 1);
  for (std::size_t i = 0; i < dups; ++i)
    list.push_back(list[detail::splitmix64(state) % base]);
  for (std::size_t i = list.size(); i > 1; --i)
    std::swap(list[i - 1], list[detail::splitmix64(state) % i]);
  MarkedGroup out{m.carrier, std::move(list), seed};
  validate_marking(out);
  return out;
}

// Marking of the quotient by a normal subgroup of a whole-group carrier:
// enumeration entries map to their coset images, in order.
inline std::pair<QuotientGroup, MarkedGroup> induced_quotient_marking(const MarkedGroup& m,
                                                                      const Subgroup& n) {
  if (!m.carrier.is_whole())
    throw Error(errc::invalid_input, "quotient markings require a whole-group carrier");
  QuotientGroup q = quotient(m.carrier.parent, n);
  MarkedGroup out{whole_group(q.group), {}, m.seed};
  out.enumeration.reserve(m.enumeration.size());
  for (Elem e : m.enumeration) out.enumeration.push_back(q.project(e));
  return {std::move(q), std::move(out)};
}

}  // namespace chainrank
