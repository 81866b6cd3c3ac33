#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "chainrank/marking.hpp"
#include "chainrank/ordinal.hpp"
#include "chainrank/subgroup.hpp"
#include "chainrank/wftree.hpp"

namespace chainrank {

// ---------------------------------------------------------------------------
// Centralizer tree: root state is the carrier (the centralizer of the empty
// set); the children of a centralizer C are the distinct C ∩ C(g) strictly
// below C, over enumeration entries g. A state is terminal exactly when it
// equals the center of the carrier.
// ---------------------------------------------------------------------------
class CentralizerTreeSpec final : public TreeSpec {
 public:
  explicit CentralizerTreeSpec(MarkedGroup m) : m_(std::move(m)) {
    root_ = m_.carrier.members;
    states_.emplace(root_.bytes(), root_);
    center_ = center_set(m_.carrier);

    std::unordered_map<Elem, std::size_t> cent_of_entry;
    cent_index_.assign(m_.enumeration.size(), kCentral);
    for (std::size_t i = 0; i < m_.enumeration.size(); ++i) {
      Elem e = m_.enumeration[i];
      if (auto it = cent_of_entry.find(e); it != cent_of_entry.end()) {
        cent_index_[i] = it->second;
        continue;
      }
      Bitset c = centralizer(m_.carrier, {e}).members;
      std::size_t slot = kCentral;
      if (c != root_) {  // central entries never move a state
        slot = kCentral;
        for (std::size_t p = 0; p < pool_.size(); ++p)
          if (pool_[p] == c) slot = p;
        if (slot == kCentral) {
          slot = pool_.size();
          pool_.push_back(std::move(c));
        }
      }
      cent_of_entry.emplace(e, slot);
      cent_index_[i] = slot;
    }
  }

  StateKey root() override { return root_.bytes(); }

  std::size_t index_count() override { return m_.enumeration.size(); }

  std::optional<StateKey> child_at(const StateKey& s, std::size_t i) override {
    if (cent_index_[i] == kCentral) return std::nullopt;
    const Bitset c = state(s);  // copy: intern() may rehash the registry
    Bitset d = c & pool_[cent_index_[i]];
    if (d == c) return std::nullopt;
    return intern(std::move(d));
  }

  std::vector<StateKey> children(const StateKey& s) override {
    const Bitset c = state(s);  // copy: intern() may rehash the registry
    std::vector<StateKey> out;
    for (const Bitset& p : pool_) {
      Bitset d = c & p;
      if (d != c) out.push_back(intern(std::move(d)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty() && c != center_)
      throw std::logic_error("centralizer tree: terminal state is not the center");
    return out;
  }

  std::string label(const StateKey& s) override {
    return "|C|=" + std::to_string(state(s).count());
  }

 private:
  static constexpr std::size_t kCentral = static_cast<std::size_t>(-1);

  const Bitset& state(const StateKey& s) const { return states_.at(s); }

  StateKey intern(Bitset b) {
    StateKey k = b.bytes();
    states_.emplace(k, std::move(b));
    return k;
  }

  MarkedGroup m_;
  Bitset root_;
  Bitset center_;
  std::vector<Bitset> pool_;             // distinct noncentral single-entry centralizers
  std::vector<std::size_t> cent_index_;  // enumeration index -> pool slot
  std::unordered_map<StateKey, Bitset> states_;
};

// ---------------------------------------------------------------------------
// Subgroup tree: root is the trivial subgroup; the children of H are the
// distinct <H, g> strictly above H over enumeration entries g. Terminal
// exactly at the full carrier.
// ---------------------------------------------------------------------------
class SubgroupTreeSpec final : public TreeSpec {
 public:
  explicit SubgroupTreeSpec(MarkedGroup m) : m_(std::move(m)) {
    State root{trivial_subgroup(m_.carrier.parent).members, {}};
    root_key_ = root.bits.bytes();
    states_.emplace(root_key_, std::move(root));
    distinct_entries_ = m_.enumeration;
    std::sort(distinct_entries_.begin(), distinct_entries_.end());
    distinct_entries_.erase(std::unique(distinct_entries_.begin(), distinct_entries_.end()),
                            distinct_entries_.end());
  }

  StateKey root() override { return root_key_; }

  std::size_t index_count() override { return m_.enumeration.size(); }

  std::optional<StateKey> child_at(const StateKey& s, std::size_t i) override {
    return extend(s, m_.enumeration[i]);
  }

  std::vector<StateKey> children(const StateKey& s) override {
    std::vector<StateKey> out;
    for (Elem e : distinct_entries_)
      if (auto k = extend(s, e)) out.push_back(std::move(*k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty() && states_.at(s).bits != m_.carrier.members)
      throw std::logic_error("subgroup tree: terminal state is not the whole carrier");
    return out;
  }

  std::string label(const StateKey& s) override {
    return "|H|=" + std::to_string(states_.at(s).bits.count());
  }

 private:
  struct State {
    Bitset bits;
    std::vector<Elem> gens;
  };

  std::optional<StateKey> extend(const StateKey& s, Elem e) {
    const State& st = states_.at(s);
    if (st.bits.test(e)) return std::nullopt;
    std::vector<Elem> gens = st.gens;
    gens.push_back(e);
    Bitset k = detail::close_set(*m_.carrier.parent, gens);
    StateKey key = k.bytes();
    states_.emplace(key, State{std::move(k), std::move(gens)});
    return key;
  }

  MarkedGroup m_;
  StateKey root_key_;
  std::vector<Elem> distinct_entries_;
  std::unordered_map<StateKey, State> states_;
};

// ---------------------------------------------------------------------------
// Max-n tree: states are kernels, i.e. normal closures of the accumulated
// entries; the node's group is carrier/kernel. Root kernel is trivial;
// children of N are the distinct <<N ∪ {g}>> strictly above N. Terminal
// exactly when the kernel is the whole carrier.
// ---------------------------------------------------------------------------
class MaxnTreeSpec final : public TreeSpec {
 public:
  explicit MaxnTreeSpec(MarkedGroup m) : m_(std::move(m)) {
    const auto& classes = subgroup_classes(m_.carrier);
    class_of_.assign(m_.carrier.parent->order(), 0);
    for (std::size_t ci = 0; ci < classes.size(); ++ci)
      for (Elem e : classes[ci]) class_of_[e] = ci;
    for (Elem e : m_.enumeration)
      if (e != FinGroup::kIdentity) entry_classes_.push_back(class_of_[e]);
    std::sort(entry_classes_.begin(), entry_classes_.end());
    entry_classes_.erase(std::unique(entry_classes_.begin(), entry_classes_.end()),
                         entry_classes_.end());

    State root{trivial_subgroup(m_.carrier.parent).members, {}};
    root_key_ = root.bits.bytes();
    states_.emplace(root_key_, std::move(root));
  }

  StateKey root() override { return root_key_; }

  std::size_t index_count() override { return m_.enumeration.size(); }

  std::optional<StateKey> child_at(const StateKey& s, std::size_t i) override {
    Elem e = m_.enumeration[i];
    const State st = states_.at(s);  // copy: join() may rehash the registry
    if (st.bits.test(e)) return std::nullopt;
    return join(st, class_of_[e]);
  }

  std::vector<StateKey> children(const StateKey& s) override {
    const State st = states_.at(s);  // copy: join() may rehash the registry
    std::vector<StateKey> out;
    for (std::size_t ci : entry_classes_) {
      Elem rep = subgroup_classes(m_.carrier)[ci][0];
      if (st.bits.test(rep)) continue;
      out.push_back(join(st, ci));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty() && st.bits != m_.carrier.members)
      throw std::logic_error("max-n tree: terminal kernel is not the whole carrier");
    return out;
  }

  std::string label(const StateKey& s) override {
    std::size_t n = states_.at(s).bits.count();
    return "|G/N|=" + std::to_string(m_.carrier.order() / n);
  }

 private:
  struct State {
    Bitset bits;
    std::vector<std::size_t> class_reps;  // accumulated class indices, sorted
  };

  StateKey join(const State& st, std::size_t ci) {
    const auto& classes = subgroup_classes(m_.carrier);
    std::vector<std::size_t> reps = st.class_reps;
    reps.insert(std::lower_bound(reps.begin(), reps.end(), ci), ci);
    std::vector<Elem> genset;
    for (std::size_t c : reps) genset.insert(genset.end(), classes[c].begin(), classes[c].end());
    Bitset k = detail::close_set(*m_.carrier.parent, genset);
    StateKey key = k.bytes();
    states_.emplace(key, State{std::move(k), std::move(reps)});
    return key;
  }

  MarkedGroup m_;
  StateKey root_key_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> entry_classes_;
  std::unordered_map<StateKey, State> states_;
};

// ---------------------------------------------------------------------------
// Decomposition tree with offset l: the root is (carrier, depth 0); a state
// (H, d) with H nontrivial has one child (S, d+1) per distinct value
// S = low_index_core(prefix subgroup of H, d+l) over enumeration prefixes.
// Terminal exactly at the trivial subgroup.
//
// The memo key caps the depth at max(0, |carrier|-l): past that point the
// trivial subgroup enters every low-index family, so every child is trivial
// regardless of the exact depth, and deeper states share one key.
// ---------------------------------------------------------------------------
class DecompositionTreeSpec final : public TreeSpec {
 public:
  DecompositionTreeSpec(MarkedGroup m, std::uint64_t offset) : m_(std::move(m)), offset_(offset) {
    if (offset_ < 1) throw Error(errc::invalid_input, "decomposition offset must be >= 1");
    std::size_t ord = m_.carrier.order();
    depth_cap_ = ord > offset_ ? ord - offset_ : 0;
    root_key_ = make_key(m_.carrier.members, 0);
    states_.emplace(root_key_, State{m_.carrier.members, 0});
  }

  StateKey root() override { return root_key_; }

  std::size_t index_count() override { return m_.enumeration.size(); }

  std::optional<StateKey> child_at(const StateKey& s, std::size_t i) override {
    const State st = states_.at(s);
    if (st.bits.count() == 1) return std::nullopt;
    const Prefixes& pre = prefixes(st.bits);
    return child_from_prefix(st, pre.distinct[pre.of_index[i]]);
  }

  std::vector<StateKey> children(const StateKey& s) override {
    const State st = states_.at(s);
    if (st.bits.count() == 1) return {};
    const Prefixes pre = prefixes(st.bits);  // copy: interning may rehash
    std::vector<StateKey> out;
    out.reserve(pre.distinct.size());
    for (const Bitset& p : pre.distinct) out.push_back(child_from_prefix(st, p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::string label(const StateKey& s) override {
    const State& st = states_.at(s);
    return "|H|=" + std::to_string(st.bits.count()) + " d=" + std::to_string(st.depth);
  }

  std::uint64_t depth_of(const StateKey& s) const { return states_.at(s).depth; }
  Bitset members_of(const StateKey& s) const { return states_.at(s).bits; }
  std::uint64_t depth_cap() const { return depth_cap_; }

 private:
  struct State {
    Bitset bits;
    std::uint64_t depth;  // capped
  };

  struct Prefixes {
    std::vector<Bitset> distinct;       // distinct prefix subgroups, in growth order
    std::vector<std::size_t> of_index;  // enumeration index -> distinct slot
  };

  StateKey make_key(const Bitset& bits, std::uint64_t depth) const {
    StateKey k = bits.bytes();
    for (int i = 0; i < 8; ++i) k.push_back(static_cast<char>((depth >> (8 * i)) & 0xff));
    return k;
  }

  StateKey child_from_prefix(const State& st, const Bitset& prefix) {
    Bitset sub = low_index_core({m_.carrier.parent, prefix}, st.depth + offset_);
    std::uint64_t d = std::min<std::uint64_t>(st.depth + 1, depth_cap_);
    StateKey key = make_key(sub, d);
    states_.emplace(key, State{std::move(sub), d});
    return key;
  }

  const Prefixes& prefixes(const Bitset& group_bits) {
    StateKey k = group_bits.bytes();
    if (auto it = prefix_cache_.find(k); it != prefix_cache_.end()) return it->second;
    Prefixes pre;
    pre.of_index.resize(m_.enumeration.size());
    std::vector<Elem> gens;
    Bitset cur = trivial_subgroup(m_.carrier.parent).members;
    for (std::size_t i = 0; i < m_.enumeration.size(); ++i) {
      Elem e = group_bits.test(m_.enumeration[i]) ? m_.enumeration[i] : FinGroup::kIdentity;
      if (!cur.test(e)) {
        gens.push_back(e);
        cur = detail::close_set(*m_.carrier.parent, gens);
        pre.distinct.push_back(cur);
      } else if (pre.distinct.empty()) {
        pre.distinct.push_back(cur);
      }
      pre.of_index[i] = pre.distinct.size() - 1;
    }
    if (pre.distinct.empty()) pre.distinct.push_back(cur);
    return prefix_cache_.emplace(std::move(k), std::move(pre)).first->second;
  }

  MarkedGroup m_;
  std::uint64_t offset_;
  std::uint64_t depth_cap_;
  StateKey root_key_;
  std::unordered_map<StateKey, State> states_;
  std::unordered_map<std::string, Prefixes> prefix_cache_;
};

// ---------------------------------------------------------------------------
// Rank operations
// ---------------------------------------------------------------------------

inline std::unique_ptr<TreeSpec> centralizer_tree(const MarkedGroup& m) {
  return std::make_unique<CentralizerTreeSpec>(m);
}

inline std::unique_ptr<TreeSpec> subgroup_tree(const MarkedGroup& m) {
  return std::make_unique<SubgroupTreeSpec>(m);
}

inline std::unique_ptr<TreeSpec> maxn_tree(const MarkedGroup& m) {
  return std::make_unique<MaxnTreeSpec>(m);
}

inline std::unique_ptr<TreeSpec> decomposition_tree(const MarkedGroup& m, std::uint64_t offset) {
  return std::make_unique<DecompositionTreeSpec>(m, offset);
}

namespace detail {

inline Ordinal ranked(TreeSpec& spec, std::size_t budget, RankStats* stats) {
  RankResult r = rank_lazy(spec, budget, stats);
  if (!r.well_founded()) throw std::logic_error("finite group tree reported ill-founded");
  return r.rank();
}

}  // namespace detail

inline Ordinal centralizer_rank(const MarkedGroup& m, std::size_t budget = kDefaultNodeBudget,
                                RankStats* stats = nullptr) {
  CentralizerTreeSpec spec(m);
  return detail::ranked(spec, budget, stats);
}

inline Ordinal subgroup_rank(const MarkedGroup& m, std::size_t budget = kDefaultNodeBudget,
                             RankStats* stats = nullptr) {
  SubgroupTreeSpec spec(m);
  return detail::ranked(spec, budget, stats);
}

inline Ordinal maxn_length(const MarkedGroup& m, std::size_t budget = kDefaultNodeBudget,
                           RankStats* stats = nullptr) {
  MaxnTreeSpec spec(m);
  return detail::ranked(spec, budget, stats);
}

inline Ordinal decomposition_tree_rank(const MarkedGroup& m, std::uint64_t offset,
                                       std::size_t budget = kDefaultNodeBudget,
                                       RankStats* stats = nullptr) {
  DecompositionTreeSpec spec(m, offset);
  return detail::ranked(spec, budget, stats);
}

// Subgroup generated by the first n+1 enumeration entries, with the induced
// marking; n beyond the enumeration clamps to the last prefix.
inline MarkedGroup prefix_subgroup(const MarkedGroup& m, std::uint64_t n) {
  std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(n, m.length() ? m.length() - 1 : 0)) + 1;
  std::vector<Elem> seeds(m.enumeration.begin(),
                          m.enumeration.begin() + static_cast<std::ptrdiff_t>(std::min(take, m.length())));
  Subgroup h = subgroup_closure(m.carrier.parent, seeds);
  return induced_subgroup_marking(m, h);
}

// Commutator subgroup of the carrier intersected with all normal subgroups of
// index at most k+1, with the induced marking.
inline MarkedGroup commutator_core(const MarkedGroup& m, std::uint64_t k) {
  if (k < 1) throw Error(errc::invalid_input, "commutator core requires k >= 1");
  Bitset bits = low_index_core(m.carrier, k);
  return induced_subgroup_marking(m, {m.carrier.parent, bits});
}

struct XiDeg {
  Ordinal xi;
  std::uint64_t degree;
};

// Decomposition rank and degree: the tree rank is non-increasing in the
// offset and reaches its eventual value by offset |G| (where it is at most
// 2), so one upward scan against the value at |G| finds both.
inline XiDeg decomposition_rank_and_degree(const MarkedGroup& m,
                                           std::size_t budget = kDefaultNodeBudget,
                                           RankStats* stats = nullptr) {
  std::uint64_t final_offset = std::max<std::uint64_t>(1, m.carrier.order());
  Ordinal xi = decomposition_tree_rank(m, final_offset, budget, stats);
  for (std::uint64_t l = 1; l < final_offset; ++l)
    if (decomposition_tree_rank(m, l, budget, stats) == xi) return {std::move(xi), l};
  return {std::move(xi), final_offset};
}

// Direct search for the chain condition behind elementary amenability: the
// decomposition tree at offset 1 is well-founded exactly when no such
// descending chain exists; an ill-founded result carries the cyclic witness.
inline RankResult ea_chain_check(const MarkedGroup& m, std::size_t budget = kDefaultNodeBudget) {
  DecompositionTreeSpec spec(m, 1);
  return rank_lazy(spec, budget);
}

// Symbolic subgroup ranks for the two cases with closed forms: the infinite
// cyclic group, and finite cyclic groups where the longest subgroup chain
// steps through one prime divisor at a time.
inline Ordinal symbolic_subgroup_rank_integers() { return Ordinal::omega() + Ordinal::finite(1); }

inline Ordinal symbolic_subgroup_rank_cyclic(std::uint64_t n) {
  if (n == 0) throw Error(errc::invalid_input, "cyclic group order must be positive");
  std::uint64_t omega_count = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++omega_count;
      n /= p;
    }
  if (n > 1) ++omega_count;
  return Ordinal::finite(omega_count + 1);
}

// ---------------------------------------------------------------------------
// Bundled report
// ---------------------------------------------------------------------------

struct InvariantSelection {
  bool cent = false;
  bool max = false;
  bool maxn = false;
  bool xi_deg = false;

  static InvariantSelection all() { return {true, true, true, true}; }

  std::string tag() const {
    std::string t;
    if (cent) t += "c";
    if (max) t += "m";
    if (maxn) t += "n";
    if (xi_deg) t += "x";
    return t;
  }
};

struct RankReport {
  std::string name;
  std::size_t order = 0;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  std::size_t marking_length = 0;
  std::uint64_t marking_seed = 0;
  std::optional<Ordinal> centralizer;
  std::optional<Ordinal> subgroup;
  std::optional<Ordinal> maxn;
  std::optional<Ordinal> xi;
  std::optional<std::uint64_t> deg;
  std::map<std::string, std::size_t> state_counts;
  std::uint64_t elapsed_ms = 0;
};

inline RankReport rank_report(const MarkedGroup& m, const InvariantSelection& sel,
                              std::string name = {}, std::size_t budget = kDefaultNodeBudget) {
  auto t0 = std::chrono::steady_clock::now();
  RankReport r;
  r.name = std::move(name);
  r.order = m.carrier.order();
  r.degree = m.carrier.parent->degree();
  for (Elem gi : m.carrier.parent->generator_indices())
    r.generators.push_back(m.carrier.parent->element(gi).to_cycle_string());
  r.marking_length = m.length();
  r.marking_seed = m.seed;
  RankStats stats;
  if (sel.cent) {
    r.centralizer = centralizer_rank(m, budget, &stats);
    r.state_counts["centralizer"] = stats.states;
  }
  if (sel.max) {
    r.subgroup = subgroup_rank(m, budget, &stats);
    r.state_counts["subgroup"] = stats.states;
  }
  if (sel.maxn) {
    r.maxn = maxn_length(m, budget, &stats);
    r.state_counts["maxn"] = stats.states;
  }
  if (sel.xi_deg) {
    XiDeg xd = decomposition_rank_and_degree(m, budget, &stats);
    r.xi = std::move(xd.xi);
    r.deg = xd.degree;
    r.state_counts["decomposition"] = stats.states;
  }
  auto t1 = std::chrono::steady_clock::now();
  r.elapsed_ms =
      static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  return r;
}

}  // namespace chainrank
