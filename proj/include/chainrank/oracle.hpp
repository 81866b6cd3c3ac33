#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "chainrank/invariants.hpp"
#include "chainrank/subgroup.hpp"
#include "chainrank/wftree.hpp"

namespace chainrank {

// Longest strictly monotone chain in a lattice of subgroups, with one
// witness. The length counts edges.
struct ChainResult {
  std::size_t length = 0;
  std::vector<Subgroup> witness;
};

namespace detail {

// Longest-path DP over the inclusion DAG of the given distinct subgroup sets.
// Chains descend from `top` towards `bottom`; every set is assumed to contain
// `bottom` and be contained in `top`. Ties break toward the canonically
// smallest next set, so the witness is deterministic.
inline ChainResult longest_chain(const GroupPtr& parent, std::vector<Bitset> sets,
                                 const Bitset& top, bool ascending_witness) {
  std::sort(sets.begin(), sets.end(), [](const Bitset& a, const Bitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  std::vector<std::size_t> len(sets.size(), 0);
  std::vector<std::ptrdiff_t> next(sets.size(), -1);  // best strictly smaller set
  std::size_t top_at = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (sets[j].count() == sets[i].count()) break;  // sorted: equal sizes cannot nest
      if (!sets[j].is_subset_of(sets[i])) continue;
      if (len[j] + 1 > len[i]) {
        len[i] = len[j] + 1;
        next[i] = static_cast<std::ptrdiff_t>(j);
      }
    }
    if (sets[i] == top) top_at = i;
  }
  ChainResult r;
  r.length = len[top_at];
  for (std::ptrdiff_t at = static_cast<std::ptrdiff_t>(top_at); at >= 0; at = next[at])
    r.witness.push_back({parent, sets[at]});
  if (ascending_witness) std::reverse(r.witness.begin(), r.witness.end());
  return r;
}

}  // namespace detail

// Close the single-element centralizers (plus the carrier) under pairwise
// intersection to obtain every centralizer, then take the longest strictly
// decreasing chain from the carrier to its center.
inline ChainResult longest_centralizer_chain(const Subgroup& carrier,
                                             std::size_t oracle_limit = 512) {
  if (carrier.order() > oracle_limit)
    throw Error(errc::size_limit, "centralizer lattice beyond oracle limit");
  std::vector<Bitset> pool{carrier.members};
  std::unordered_set<std::string> keys{carrier.members.bytes()};
  carrier.members.for_each_set([&](std::size_t e) {
    Bitset c = centralizer(carrier, {static_cast<Elem>(e)}).members;
    if (keys.insert(c.bytes()).second) pool.push_back(std::move(c));
  });
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Bitset meet = pool[i] & pool[j];
      if (keys.insert(meet.bytes()).second) pool.push_back(std::move(meet));
    }
  return detail::longest_chain(carrier.parent, std::move(pool), carrier.members, false);
}

// Longest chain {e} = H_0 < ... < H_m = carrier through the full subgroup
// lattice.
inline ChainResult longest_subgroup_chain(const Subgroup& carrier, std::size_t oracle_limit = 96) {
  std::vector<Bitset> sets;
  for (const Subgroup& h : all_subgroups(carrier, oracle_limit)) sets.push_back(h.members);
  return detail::longest_chain(carrier.parent, std::move(sets), carrier.members, true);
}

// Longest chain {e} = N_0 < ... < N_m = carrier through the normal subgroups.
inline ChainResult longest_normal_chain(const Subgroup& carrier, std::size_t oracle_limit = 512) {
  std::vector<Bitset> sets;
  for (const Subgroup& n : normal_subgroups(carrier, oracle_limit)) sets.push_back(n.members);
  return detail::longest_chain(carrier.parent, std::move(sets), carrier.members, true);
}

enum class TreeInvariant { centralizer, subgroup, maxn, decomposition };

inline std::unique_ptr<TreeSpec> make_tree_spec(const MarkedGroup& m, TreeInvariant which,
                                                std::uint64_t offset = 1) {
  switch (which) {
    case TreeInvariant::centralizer: return centralizer_tree(m);
    case TreeInvariant::subgroup: return subgroup_tree(m);
    case TreeInvariant::maxn: return maxn_tree(m);
    case TreeInvariant::decomposition: return decomposition_tree(m, offset);
  }
  throw Error(errc::invalid_input, "unknown invariant");
}

// True iff the rank of the literal index tree equals the deduplicated lazy
// rank; the two sides take independent paths through the rank recursion.
inline bool explicit_rank_crosscheck(const MarkedGroup& m, TreeInvariant which,
                                     std::uint64_t offset = 1,
                                     std::size_t budget = kDefaultNodeBudget) {
  auto spec = make_tree_spec(m, which, offset);
  RankResult lazy = rank_lazy(*spec, budget);
  FiniteTree explicit_tree = expand_explicit(*spec, spec->index_count(), budget);
  return lazy.well_founded() && explicit_tree.rank() == lazy.rank();
}

// Witness sanity: strict monotone inclusions, expected endpoints, and (for
// generated/normal-closure lattices) each step reachable by adjoining one
// element of the larger member to the smaller.
inline bool validate_chain_witness(const ChainResult& r, const Subgroup& carrier,
                                   TreeInvariant kind) {
  if (r.witness.empty()) return false;
  if (r.witness.size() != r.length + 1) return false;
  bool ascending = kind != TreeInvariant::centralizer;
  for (std::size_t i = 0; i + 1 < r.witness.size(); ++i) {
    const Bitset& small = r.witness[ascending ? i : i + 1].members;
    const Bitset& big = r.witness[ascending ? i + 1 : i].members;
    if (!(small.is_subset_of(big) && small != big)) return false;
  }
  switch (kind) {
    case TreeInvariant::centralizer:
      // Witness runs downward from the carrier to its center.
      return r.witness.front().members == carrier.members &&
             r.witness.back().members == center_set(carrier);
    case TreeInvariant::subgroup:
    case TreeInvariant::maxn: {
      if (r.witness.front().order() != 1) return false;
      if (r.witness.back().members != carrier.members) return false;
      for (std::size_t i = 0; i + 1 < r.witness.size(); ++i) {
        const Subgroup& small = r.witness[i];
        const Subgroup& big = r.witness[i + 1];
        bool step_ok = false;
        big.members.for_each_set([&](std::size_t x) {
          if (step_ok || small.contains(static_cast<Elem>(x))) return;
          std::vector<Elem> seeds = subgroup_generators(small);
          seeds.push_back(static_cast<Elem>(x));
          Subgroup gen = kind == TreeInvariant::subgroup
                             ? subgroup_closure(carrier.parent, seeds)
                             : normal_closure(carrier, seeds);
          if (gen.members == big.members) step_ok = true;
        });
        if (!step_ok) return false;
      }
      return true;
    }
    case TreeInvariant::decomposition: return false;
  }
  return false;
}

}  // namespace chainrank
