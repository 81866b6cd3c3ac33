#pragma once

#include <algorithm>
#include <mutex>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "chainrank/bitset.hpp"
#include "chainrank/error.hpp"
#include "chainrank/group.hpp"

namespace chainrank {

// Subgroup of a FinGroup, stored as a membership bit-vector over the parent's
// canonical element order. Value type; the bit-vector is the identity of the
// subgroup, and (order, bit-vector) is the canonical sort key everywhere.
struct Subgroup {
  GroupPtr parent;
  Bitset members;

  std::size_t order() const { return members.count(); }
  bool contains(Elem e) const { return members.test(e); }
  bool is_trivial() const { return order() == 1; }
  bool is_whole() const { return order() == parent->order(); }
  std::string key() const { return members.bytes(); }

  bool same_parent(const Subgroup& other) const { return parent.get() == other.parent.get(); }
};

inline Subgroup whole_group(const GroupPtr& g) {
  return {g, Bitset::all_set(g->order())};
}

inline Subgroup trivial_subgroup(const GroupPtr& g) {
  Bitset b(g->order());
  b.set(FinGroup::kIdentity);
  return {g, b};
}

namespace detail {

// Closure of the seed set under multiplication; in a finite group this is the
// generated subgroup (inverses arise as powers).
inline Bitset close_set(const FinGroup& g, std::span<const Elem> seeds) {
  Bitset bits(g.order());
  bits.set(FinGroup::kIdentity);
  std::vector<Elem> queue{FinGroup::kIdentity};
  for (Elem s : seeds)
    if (!bits.test(s)) {
      bits.set(s);
      queue.push_back(s);
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (Elem s : seeds) {
      Elem y = g.mul(queue[qi], s);
      if (!bits.test(y)) {
        bits.set(y);
        queue.push_back(y);
      }
    }
  return bits;
}

inline std::vector<Elem> greedy_generators(const FinGroup& g, const Bitset& members) {
  std::vector<Elem> gens;
  Bitset closed(g.order());
  closed.set(FinGroup::kIdentity);
  members.for_each_set([&](std::size_t m) {
    if (closed.test(m)) return;
    gens.push_back(static_cast<Elem>(m));
    closed = close_set(g, gens);
  });
  return gens;
}

}  // namespace detail

inline Subgroup subgroup_closure(const GroupPtr& g, std::span<const Elem> seeds) {
  for (Elem s : seeds)
    if (s >= g->order()) throw Error(errc::invalid_input, "element index out of range");
  return {g, detail::close_set(*g, seeds)};
}

inline Subgroup subgroup_closure(const GroupPtr& g, std::initializer_list<Elem> seeds) {
  return subgroup_closure(g, std::span<const Elem>(seeds.begin(), seeds.size()));
}

// Memoized generating set (greedy over the canonical order; at most
// log2|H| elements since every step at least doubles the closure).
inline const std::vector<Elem>& subgroup_generators(const Subgroup& h) {
  auto data = h.parent->subgroup_data(h.members);
  std::lock_guard lk(h.parent->cache_mutex());
  if (!data->gens) data->gens = detail::greedy_generators(*h.parent, h.members);
  return *data->gens;
}

// Elements of the carrier commuting with every listed element; the
// centralizer of the empty set is the carrier itself.
inline Subgroup centralizer(const Subgroup& within, std::span<const Elem> elems) {
  const FinGroup& g = *within.parent;
  Bitset bits(g.order());
  within.members.for_each_set([&](std::size_t h) {
    for (Elem a : elems)
      if (g.mul(static_cast<Elem>(h), a) != g.mul(a, static_cast<Elem>(h))) return;
    bits.set(h);
  });
  return {within.parent, bits};
}

inline Subgroup centralizer(const Subgroup& within, std::initializer_list<Elem> elems) {
  return centralizer(within, std::span<const Elem>(elems.begin(), elems.size()));
}

inline Bitset center_set(const Subgroup& h) {
  auto data = h.parent->subgroup_data(h.members);
  std::lock_guard lk(h.parent->cache_mutex());
  if (!data->center) {
    const std::vector<Elem>& gens = subgroup_generators(h);
    data->center = centralizer(h, gens).members;
  }
  return *data->center;
}

// Conjugacy classes of the carrier under its own conjugation action,
// canonical order (classes appear by least member, members in orbit order).
inline const std::vector<std::vector<Elem>>& subgroup_classes(const Subgroup& h) {
  auto data = h.parent->subgroup_data(h.members);
  std::lock_guard lk(h.parent->cache_mutex());
  if (!data->classes) {
    const FinGroup& g = *h.parent;
    const std::vector<Elem>& gens = subgroup_generators(h);
    std::vector<std::vector<Elem>> classes;
    Bitset seen(g.order());
    h.members.for_each_set([&](std::size_t m) {
      if (seen.test(m)) return;
      std::vector<Elem> orbit{static_cast<Elem>(m)};
      seen.set(m);
      for (std::size_t qi = 0; qi < orbit.size(); ++qi)
        for (Elem gi : gens) {
          Elem y = g.conj(orbit[qi], gi);
          if (!seen.test(y)) {
            seen.set(y);
            orbit.push_back(y);
          }
        }
      classes.push_back(std::move(orbit));
    });
    data->classes = std::move(classes);
  }
  return *data->classes;
}

// Smallest normal subgroup of the carrier containing the seeds: the closure
// of the union of their carrier-conjugacy classes.
inline Subgroup normal_closure(const Subgroup& within, std::span<const Elem> seeds) {
  const std::vector<std::vector<Elem>>& classes = subgroup_classes(within);
  std::vector<Elem> genset;
  for (Elem s : seeds) {
    if (!within.contains(s)) throw Error(errc::not_contained, "seed outside carrier");
    for (const auto& cls : classes)
      if (std::find(cls.begin(), cls.end(), s) != cls.end()) {
        genset.insert(genset.end(), cls.begin(), cls.end());
        break;
      }
  }
  return {within.parent, detail::close_set(*within.parent, genset)};
}

inline Subgroup normal_closure(const Subgroup& within, std::initializer_list<Elem> seeds) {
  return normal_closure(within, std::span<const Elem>(seeds.begin(), seeds.size()));
}

// Subgroup generated by all commutators of carrier elements.
inline Subgroup commutator_subgroup(const Subgroup& h) {
  auto data = h.parent->subgroup_data(h.members);
  std::lock_guard lk(h.parent->cache_mutex());
  if (!data->commutator) {
    const FinGroup& g = *h.parent;
    Bitset comms(g.order());
    std::vector<Elem> genset;
    std::vector<Elem> members;
    h.members.for_each_set([&](std::size_t m) { members.push_back(static_cast<Elem>(m)); });
    for (Elem a : members)
      for (Elem b : members) {
        Elem c = g.commutator_elem(a, b);
        if (!comms.test(c)) {
          comms.set(c);
          genset.push_back(c);
        }
      }
    data->commutator = detail::close_set(g, genset);
  }
  return {h.parent, *data->commutator};
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!a.same_parent(b)) throw Error(errc::parent_mismatch, "subgroups of different parents");
  return {a.parent, a.members & b.members};
}

inline bool is_normal_in(const Subgroup& within, const Subgroup& n) {
  if (!within.same_parent(n)) throw Error(errc::parent_mismatch, "subgroups of different parents");
  if (!n.members.is_subset_of(within.members)) return false;
  const FinGroup& g = *within.parent;
  for (Elem gi : subgroup_generators(within)) {
    bool ok = true;
    n.members.for_each_set([&](std::size_t m) {
      if (!n.members.test(g.conj(static_cast<Elem>(m), gi))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// Every normal subgroup of the carrier, found by closing joins of conjugacy
// classes: the trivial subgroup is normal, and each normal M above N contains
// a full class outside N, so iterating single-class joins reaches everything.
// Sorted by (order, canonical key).
inline const std::vector<Bitset>& normal_lattice(const Subgroup& h) {
  auto data = h.parent->subgroup_data(h.members);
  std::lock_guard lk(h.parent->cache_mutex());
  if (!data->normal_lattice) {
    const FinGroup& g = *h.parent;
    const std::vector<std::vector<Elem>>& classes = subgroup_classes(h);
    std::vector<Bitset> found{trivial_subgroup(h.parent).members};
    std::unordered_set<std::string> keys{found[0].bytes()};
    for (std::size_t at = 0; at < found.size(); ++at) {
      for (const auto& cls : classes) {
        if (found[at].test(cls[0])) continue;
        std::vector<Elem> genset = detail::greedy_generators(g, found[at]);
        genset.insert(genset.end(), cls.begin(), cls.end());
        Bitset m = detail::close_set(g, genset);
        if (keys.insert(m.bytes()).second) found.push_back(std::move(m));
      }
    }
    std::sort(found.begin(), found.end(), [](const Bitset& a, const Bitset& b) {
      if (a.count() != b.count()) return a.count() < b.count();
      return a < b;
    });
    data->normal_lattice = std::move(found);
  }
  return *data->normal_lattice;
}

inline std::vector<Subgroup> normal_subgroups(const Subgroup& h, std::size_t oracle_limit = 512) {
  if (h.order() > oracle_limit)
    throw Error(errc::size_limit, "normal-subgroup enumeration beyond oracle limit");
  std::vector<Subgroup> out;
  for (const Bitset& b : normal_lattice(h)) out.push_back({h.parent, b});
  return out;
}

// Normal subgroups of the carrier of index at most k+1; always contains the
// carrier itself (index 1).
inline std::vector<Subgroup> low_index_normal_subgroups(const Subgroup& h, std::uint64_t k) {
  std::vector<Subgroup> out;
  std::size_t ord = h.order();
  for (const Bitset& b : normal_lattice(h))
    if (ord / b.count() <= k + 1) out.push_back({h.parent, b});
  return out;
}

// The carrier's commutator subgroup intersected with every normal subgroup of
// index at most k+1. Memoized per (subgroup, k); k is clamped to |H|-1 since
// beyond that the trivial subgroup enters the intersection.
inline Bitset low_index_core(const Subgroup& h, std::uint64_t k) {
  std::size_t ord = h.order();
  std::uint64_t key = std::min<std::uint64_t>(k, ord > 0 ? ord - 1 : 0);
  auto data = h.parent->subgroup_data(h.members);
  std::lock_guard lk(h.parent->cache_mutex());
  if (auto it = data->low_index_core.find(key); it != data->low_index_core.end()) return it->second;
  Bitset bits = commutator_subgroup(h).members;
  for (const Bitset& n : normal_lattice(h))
    if (ord / n.count() <= key + 1) bits = bits & n;
  data->low_index_core.emplace(key, bits);
  return bits;
}

// Every subgroup of the carrier, by iterated one-generator extensions
// starting from the trivial subgroup; each extension at least doubles the
// order, so discovery chains stay short. Sorted by (order, canonical key).
inline std::vector<Subgroup> all_subgroups(const Subgroup& h, std::size_t oracle_limit = 96) {
  if (h.order() > oracle_limit)
    throw Error(errc::size_limit, "subgroup enumeration beyond oracle limit");
  auto data = h.parent->subgroup_data(h.members);
  std::lock_guard lk(h.parent->cache_mutex());
  if (!data->all_subgroups) {
    const FinGroup& g = *h.parent;
    struct Item {
      Bitset bits;
      std::vector<Elem> gens;
    };
    std::vector<Item> found{{trivial_subgroup(h.parent).members, {}}};
    std::unordered_set<std::string> keys{found[0].bits.bytes()};
    for (std::size_t at = 0; at < found.size(); ++at) {
      std::vector<Elem> candidates;
      h.members.for_each_set([&](std::size_t m) {
        if (!found[at].bits.test(m)) candidates.push_back(static_cast<Elem>(m));
      });
      for (Elem c : candidates) {
        std::vector<Elem> gens = found[at].gens;
        gens.push_back(c);
        Bitset k = detail::close_set(g, gens);
        if (keys.insert(k.bytes()).second) found.push_back({std::move(k), std::move(gens)});
      }
    }
    std::vector<Bitset> bits;
    bits.reserve(found.size());
    for (Item& item : found) bits.push_back(std::move(item.bits));
    std::sort(bits.begin(), bits.end(), [](const Bitset& a, const Bitset& b) {
      if (a.count() != b.count()) return a.count() < b.count();
      return a < b;
    });
    data->all_subgroups = std::move(bits);
  }
  std::vector<Subgroup> out;
  out.reserve(data->all_subgroups->size());
  for (const Bitset& b : *data->all_subgroups) out.push_back({h.parent, b});
  return out;
}

// Validator used by tests: membership set contains the identity and is closed
// under multiplication and inversion.
inline bool is_closed_subgroup(const Subgroup& h) {
  const FinGroup& g = *h.parent;
  if (!h.contains(FinGroup::kIdentity)) return false;
  std::vector<Elem> members;
  h.members.for_each_set([&](std::size_t m) { members.push_back(static_cast<Elem>(m)); });
  for (Elem a : members) {
    if (!h.contains(g.inv(a))) return false;
    for (Elem b : members)
      if (!h.contains(g.mul(a, b))) return false;
  }
  return true;
}

}  // namespace chainrank
