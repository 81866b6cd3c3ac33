#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "chainrank/error.hpp"
#include "chainrank/ordinal.hpp"

namespace chainrank {

using StateKey = std::string;

constexpr std::size_t kDefaultNodeBudget = 1'000'000;

// Lazily presented rooted tree whose nodes collapse onto canonical states.
// Children are indexed like the underlying enumeration (child_at), and two
// states with equal keys have equal child lists, so duplicated indices reach
// identical subtrees. The rank recursion's sup over indexed children is
// therefore attained on the deduplicated child set returned by children().
class TreeSpec {
 public:
  virtual ~TreeSpec() = default;

  virtual StateKey root() = 0;

  // Number of literal child indices (the enumeration length).
  virtual std::size_t index_count() = 0;

  // Child reached by appending index i, or nullopt if that index is absent.
  virtual std::optional<StateKey> child_at(const StateKey& s, std::size_t i) = 0;

  // Deduplicated children in canonical (key) order.
  virtual std::vector<StateKey> children(const StateKey& s) {
    std::vector<StateKey> out;
    for (std::size_t i = 0; i < index_count(); ++i)
      if (auto c = child_at(s, i)) out.push_back(std::move(*c));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  virtual std::string label(const StateKey&) { return {}; }
};

struct RankStats {
  std::size_t states = 0;
};

// Outcome of ranking a lazily presented tree: either well-founded with its
// ordinal rank, or ill-founded with a cyclic state path as witness (equal
// first and last keys).
class RankResult {
 public:
  static RankResult well_founded(Ordinal rank) {
    RankResult r;
    r.rank_ = std::move(rank);
    return r;
  }

  static RankResult ill_founded(std::vector<StateKey> cycle) {
    RankResult r;
    r.cycle_ = std::move(cycle);
    return r;
  }

  bool well_founded() const { return rank_.has_value(); }

  const Ordinal& rank() const {
    if (!rank_) throw std::logic_error("rank of an ill-founded tree");
    return *rank_;
  }

  const std::vector<StateKey>& cycle() const { return cycle_; }

 private:
  std::optional<Ordinal> rank_;
  std::vector<StateKey> cycle_;
};

// Memoized rank of a lazily presented tree. A state key recurring along the
// active expansion path proves an infinite branch (children depend only on
// the key), reported as IllFounded with the cycle. Otherwise the rank
// recursion runs over the state DAG: terminal states have node rank 0, inner
// states max(child)+1, and the tree rank is the root's node rank plus one.
inline RankResult rank_lazy(TreeSpec& spec, std::size_t node_budget = kDefaultNodeBudget,
                            RankStats* stats = nullptr) {
  struct Frame {
    StateKey key;
    std::vector<StateKey> kids;
    std::size_t next = 0;
    std::uint64_t best = 0;
  };
  std::unordered_map<StateKey, std::uint64_t> memo;
  std::unordered_map<StateKey, std::size_t> on_path;
  std::vector<Frame> stack;

  auto push = [&](StateKey key) {
    if (memo.size() + stack.size() >= node_budget)
      throw Error(errc::resource_limit, "tree state budget exceeded");
    on_path.emplace(key, stack.size());
    Frame f;
    f.kids = spec.children(key);
    f.key = std::move(key);
    stack.push_back(std::move(f));
  };

  push(spec.root());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.kids.size()) {
      const StateKey& kid = f.kids[f.next++];
      if (auto it = memo.find(kid); it != memo.end()) {
        f.best = std::max(f.best, it->second + 1);
        continue;
      }
      if (auto it = on_path.find(kid); it != on_path.end()) {
        std::vector<StateKey> cycle;
        for (std::size_t i = it->second; i < stack.size(); ++i) cycle.push_back(stack[i].key);
        cycle.push_back(kid);
        return RankResult::ill_founded(std::move(cycle));
      }
      push(kid);
      continue;
    }
    std::uint64_t node_rank = f.kids.empty() ? 0 : f.best;
    memo.emplace(f.key, node_rank);
    on_path.erase(f.key);
    stack.pop_back();
    if (!stack.empty()) stack.back().best = std::max(stack.back().best, node_rank + 1);
  }
  if (stats) stats->states = memo.size();
  return RankResult::well_founded(Ordinal::finite(memo.at(spec.root()) + 1));
}

// Explicit finite tree: a finite set of integer sequences closed under
// initial segments, kept sorted lexicographically (so parents precede their
// descendants).
class FiniteTree {
 public:
  FiniteTree() = default;

  explicit FiniteTree(std::vector<std::vector<unsigned>> nodes) : nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    index_nodes();
    for (const auto& s : nodes_) {
      if (s.empty()) continue;
      std::vector<unsigned> parent(s.begin(), s.end() - 1);
      if (!index_.contains(parent))
        throw Error(errc::invalid_input, "node set not closed under initial segments");
    }
  }

  static FiniteTree single_root() {
    return FiniteTree(std::vector<std::vector<unsigned>>{{}});
  }

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::vector<unsigned>>& nodes() const { return nodes_; }

  bool contains(const std::vector<unsigned>& s) const { return index_.contains(s); }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& s : nodes_) d = std::max(d, s.size());
    return d;
  }

  // Node rank function: 0 at terminal nodes, max(child)+1 otherwise, aligned
  // with nodes().
  std::vector<std::uint64_t> node_ranks() const {
    std::vector<std::uint64_t> rho(nodes_.size(), 0);
    std::vector<std::size_t> order(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return nodes_[a].size() > nodes_[b].size(); });
    for (std::size_t i : order) {
      if (nodes_[i].empty()) continue;
      std::vector<unsigned> parent(nodes_[i].begin(), nodes_[i].end() - 1);
      std::size_t pi = index_.at(parent);
      rho[pi] = std::max(rho[pi], rho[i] + 1);
    }
    return rho;
  }

  // Tree rank: 0 for the empty tree, otherwise the root's node rank plus one.
  Ordinal rank() const {
    if (nodes_.empty()) return Ordinal();
    return Ordinal::finite(node_ranks()[index_.at({})] + 1);
  }

  FiniteTree subtree_at(const std::vector<unsigned>& s) const {
    std::vector<std::vector<unsigned>> out;
    for (const auto& t : nodes_)
      if (t.size() >= s.size() && std::equal(s.begin(), s.end(), t.begin()))
        out.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(s.size()), t.end());
    return FiniteTree(std::move(out));
  }

 private:
  struct SeqHash {
    std::size_t operator()(const std::vector<unsigned>& v) const {
      std::uint64_t h = 1469598103934665603ull;
      for (unsigned x : v) {
        h ^= x + 1;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  void index_nodes() {
    index_.clear();
    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
  }

  std::vector<std::vector<unsigned>> nodes_;
  std::unordered_map<std::vector<unsigned>, std::size_t, SeqHash> index_;
};

// Materializes the presented tree literally, index-labeled and with
// duplicates included, restricted to indices below index_bound.
inline FiniteTree expand_explicit(TreeSpec& spec, std::size_t index_bound,
                                  std::size_t node_budget = kDefaultNodeBudget) {
  std::size_t width = std::min(index_bound, spec.index_count());
  std::vector<std::vector<unsigned>> nodes;
  struct Item {
    std::vector<unsigned> seq;
    StateKey key;
  };
  std::vector<Item> stack{{{}, spec.root()}};
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    if (nodes.size() >= node_budget)
      throw Error(errc::resource_limit, "explicit tree node budget exceeded");
    for (std::size_t i = 0; i < width; ++i)
      if (auto c = spec.child_at(item.key, i)) {
        std::vector<unsigned> seq = item.seq;
        seq.push_back(static_cast<unsigned>(i));
        stack.push_back({std::move(seq), std::move(*c)});
      }
    nodes.push_back(std::move(item.seq));
  }
  return FiniteTree(std::move(nodes));
}

// Deduplicated state DAG of a well-founded spec, in breadth-first canonical
// order with per-node values of the rank function.
struct Dag {
  struct Node {
    StateKey key;
    std::string label;
    std::uint64_t node_rank;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline Dag tree_to_dag(TreeSpec& spec, std::size_t node_budget = kDefaultNodeBudget) {
  RankResult rr = rank_lazy(spec, node_budget);
  if (!rr.well_founded()) throw Error(errc::invalid_input, "spec is ill-founded; no DAG rendering");

  // Recompute node ranks over the reachable DAG (post-order accumulation).
  std::unordered_map<StateKey, std::size_t> id;
  Dag dag;
  std::vector<StateKey> queue{spec.root()};
  id.emplace(queue[0], 0);
  dag.nodes.push_back({queue[0], spec.label(queue[0]), 0});
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const StateKey& c : spec.children(queue[qi])) {
      auto [it, fresh] = id.emplace(c, dag.nodes.size());
      if (fresh) {
        dag.nodes.push_back({c, spec.label(c), 0});
        queue.push_back(c);
      }
      dag.edges.emplace_back(id.at(queue[qi]), it->second);
    }
  }
  // Node ranks: process in reverse BFS order (children precede parents there
  // only in DAGs without long back edges, so iterate to a fixpoint instead).
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = dag.edges.rbegin(); it != dag.edges.rend(); ++it) {
      auto& [from, to] = *it;
      std::uint64_t want = dag.nodes[to].node_rank + 1;
      if (dag.nodes[from].node_rank < want) {
        dag.nodes[from].node_rank = want;
        changed = true;
      }
    }
  }
  return dag;
}

inline std::string to_dot(const Dag& dag) {
  std::string s = "digraph ranks {\n";
  for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
    s += "  n" + std::to_string(i) + " [label=\"" + dag.nodes[i].label +
         " rank=" + std::to_string(dag.nodes[i].node_rank) + "\"];\n";
  }
  for (const auto& [from, to] : dag.edges)
    s += "  n" + std::to_string(from) + " -> n" + std::to_string(to) + ";\n";
  s += "}\n";
  return s;
}

}  // namespace chainrank
