#pragma once

#include <atomic>
#include <type_traits>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "chainrank/catalog.hpp"
#include "chainrank/dsl.hpp"
#include "chainrank/invariants.hpp"
#include "chainrank/marking.hpp"
#include "chainrank/oracle.hpp"
#include "chainrank/quotient.hpp"

namespace chainrank {

struct VerifyFailure {
  std::string group;
  std::string check;
  std::string expected;
  std::string observed;
};

struct VerifyOutcome {
  std::string suite;
  std::size_t cases = 0;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty(); }

  void merge(const VerifyOutcome& other) {
    cases += other.cases;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }
};

struct VerifyOptions {
  std::size_t max_order = 64;   // catalog filter
  std::uint64_t seed = 1;       // base seed for re-markings and random trees
  unsigned jobs = 1;            // parallelism across catalog entries
  std::size_t remarkings = 20;  // seeded re-markings per group
  std::size_t random_trees = 200;
  std::size_t node_budget = kDefaultNodeBudget;
  std::size_t size_limit = FinGroup::kDefaultSizeLimit;
};

namespace detail {

struct Checker {
  VerifyOutcome& out;
  std::string group;

  void expect(bool ok, const std::string& check, const std::string& expected,
              const std::string& observed) {
    ++out.cases;
    if (!ok) out.failures.push_back({group, check, expected, observed});
  }

  template <typename T>
  void expect_eq(const T& got, const T& want, const std::string& check) {
    ++out.cases;
    if (!(got == want)) out.failures.push_back({group, check, str(want), str(got)});
  }

  static std::string str(const Ordinal& o) { return o.to_string(); }
  static std::string str(bool v) { return v ? "true" : "false"; }
  template <typename T>
    requires std::is_integral_v<T>
  static std::string str(T v) {
    return std::to_string(v);
  }
};

// Runs fn over every selected catalog entry, producing per-entry outcomes in
// catalog order regardless of the thread schedule.
template <typename Fn>
VerifyOutcome over_catalog(const VerifyOptions& opts, const std::string& suite, Fn&& fn) {
  std::vector<const CatalogEntry*> entries;
  for (const CatalogEntry& e : builtin_catalog())
    if (e.expected_order <= opts.max_order) entries.push_back(&e);

  std::vector<VerifyOutcome> slots(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      fn(*entries[i], slots[i]);
    }
  };
  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  VerifyOutcome merged;
  merged.suite = suite;
  for (const VerifyOutcome& s : slots) merged.merge(s);
  return merged;
}

inline GroupPtr eval_catalog_entry(const CatalogEntry& e, std::size_t size_limit) {
  EvalOptions opts;
  opts.size_limit = size_limit;
  return eval_expression(*parse_expression(e.expression), opts);
}

// Deterministic random finite trees for the tree-lemma properties.
struct TreeGen {
  std::uint64_t state;

  explicit TreeGen(std::uint64_t seed) : state(seed * 0x9e3779b97f4a7c15ull + 1) {}

  std::uint64_t next() { return detail::splitmix64(state); }

  FiniteTree tree(std::size_t max_nodes) {
    std::size_t target = 1 + next() % max_nodes;
    std::vector<std::vector<unsigned>> nodes{{}};
    std::vector<std::size_t> child_count{0};
    while (nodes.size() < target) {
      std::size_t parent = next() % nodes.size();
      std::vector<unsigned> seq = nodes[parent];
      seq.push_back(static_cast<unsigned>(child_count[parent]++));
      nodes.push_back(std::move(seq));
      child_count.push_back(0);
    }
    return FiniteTree(std::move(nodes));
  }
};

}  // namespace detail

// Rank-chain identities against the brute-force lattice oracles, witness
// validation, and (small orders) the explicit-vs-deduplicated tree check.
inline VerifyOutcome run_oracle_suite(const VerifyOptions& opts) {
  return detail::over_catalog(opts, "oracle", [&](const CatalogEntry& e, VerifyOutcome& out) {
    detail::Checker ck{out, e.name};
    GroupPtr g = detail::eval_catalog_entry(e, opts.size_limit);
    ck.expect_eq(g->order(), e.expected_order, "catalog-order");
    MarkedGroup m = default_marking(g);
    Subgroup whole = whole_group(g);

    ChainResult cent = longest_centralizer_chain(whole);
    ck.expect_eq(centralizer_rank(m, opts.node_budget), Ordinal::finite(cent.length + 1),
                 "centralizer_rank = centralizer_chain + 1");
    ck.expect(validate_chain_witness(cent, whole, TreeInvariant::centralizer),
              "centralizer-chain-witness", "valid", "invalid");

    ChainResult norm = longest_normal_chain(whole);
    ck.expect_eq(maxn_length(m, opts.node_budget), Ordinal::finite(norm.length + 1),
                 "maxn_length = normal_chain + 1");
    ck.expect(validate_chain_witness(norm, whole, TreeInvariant::maxn), "normal-chain-witness",
              "valid", "invalid");

    if (g->order() <= 96) {
      ChainResult sub = longest_subgroup_chain(whole);
      ck.expect_eq(subgroup_rank(m, opts.node_budget), Ordinal::finite(sub.length + 1),
                   "subgroup_rank = subgroup_chain + 1");
      ck.expect(validate_chain_witness(sub, whole, TreeInvariant::subgroup),
                "subgroup-chain-witness", "valid", "invalid");
    }

    if (g->order() <= 24) {
      for (auto [which, tag] : {std::pair{TreeInvariant::centralizer, "cent"},
                                {TreeInvariant::subgroup, "max"},
                                {TreeInvariant::maxn, "maxn"},
                                {TreeInvariant::decomposition, "decomposition"}})
        ck.expect(explicit_rank_crosscheck(m, which, 1, opts.node_budget),
                  std::string("explicit-vs-dedup:") + tag, "equal", "different");
    }
  });
}

// Every rank, xi and deg unchanged across seeded re-markings; centralizer
// tree states coincide as sets across enumerations.
inline VerifyOutcome run_marking_suite(const VerifyOptions& opts) {
  return detail::over_catalog(opts, "marking", [&](const CatalogEntry& e, VerifyOutcome& out) {
    detail::Checker ck{out, e.name};
    GroupPtr g = detail::eval_catalog_entry(e, opts.size_limit);
    MarkedGroup base = default_marking(g);
    Ordinal cent = centralizer_rank(base, opts.node_budget);
    Ordinal sub = subgroup_rank(base, opts.node_budget);
    Ordinal norm = maxn_length(base, opts.node_budget);
    XiDeg xd = decomposition_rank_and_degree(base, opts.node_budget);

    auto state_set = [&](const MarkedGroup& m) {
      CentralizerTreeSpec spec(m);
      std::vector<StateKey> keys;
      std::vector<StateKey> queue{spec.root()};
      std::unordered_set<StateKey> seen{queue[0]};
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (StateKey k : spec.children(queue[qi]))
          if (seen.insert(k).second) queue.push_back(std::move(k));
      keys.assign(seen.begin(), seen.end());
      std::sort(keys.begin(), keys.end());
      return keys;
    };
    std::vector<StateKey> base_states = state_set(base);

    for (std::size_t s = 1; s <= opts.remarkings; ++s) {
      MarkedGroup m = remark(base, opts.seed + s);
      ck.expect_eq(centralizer_rank(m, opts.node_budget), cent, "marking-invariance:centralizer");
      ck.expect_eq(subgroup_rank(m, opts.node_budget), sub, "marking-invariance:subgroup");
      ck.expect_eq(maxn_length(m, opts.node_budget), norm, "marking-invariance:maxn");
      XiDeg xd2 = decomposition_rank_and_degree(m, opts.node_budget);
      ck.expect_eq(xd2.xi, xd.xi, "marking-invariance:xi");
      ck.expect_eq(xd2.degree, xd.degree, "marking-invariance:deg");
      if (s <= 3)
        ck.expect(state_set(m) == base_states, "centralizer-states-enumeration-independent",
                  "equal state sets", "different state sets");
    }
  });
}

// The lemma battery over the catalog, with each lemma's own order budget.
inline VerifyOutcome run_lemma_suite(const VerifyOptions& opts) {
  VerifyOutcome out = detail::over_catalog(opts, "lemmas", [&](const CatalogEntry& e,
                                                               VerifyOutcome& slot) {
    detail::Checker ck{slot, e.name};
    GroupPtr g = detail::eval_catalog_entry(e, opts.size_limit);
    MarkedGroup m = default_marking(g);
    std::size_t order = g->order();

    // Subgroup monotonicity of the three ranks (embedding lemmas).
    if (order <= 48) {
      Ordinal cent_g = centralizer_rank(m, opts.node_budget);
      Ordinal sub_g = subgroup_rank(m, opts.node_budget);
      Ordinal xi_g = decomposition_rank_and_degree(m, opts.node_budget).xi;
      for (const Subgroup& h : all_subgroups(whole_group(g))) {
        MarkedGroup mh = marking_of(h);
        ck.expect(centralizer_rank(mh, opts.node_budget) <= cent_g, "subgroup-monotone:centralizer",
                  "<= " + cent_g.to_string(), "greater");
        ck.expect(subgroup_rank(mh, opts.node_budget) <= sub_g, "subgroup-monotone:subgroup",
                  "<= " + sub_g.to_string(), "greater");
        ck.expect(decomposition_rank_and_degree(mh, opts.node_budget).xi <= xi_g,
                  "subgroup-monotone:xi", "<= " + xi_g.to_string(), "greater");
      }
    }

    // Embeddings with mixed offsets: rho(T^l(H)) <= rho(T^k(G)) for H <= G
    // and l >= k >= 1.
    if (order <= 24) {
      std::vector<Ordinal> at_offset{Ordinal()};
      for (std::uint64_t k = 1; k <= 3; ++k)
        at_offset.push_back(decomposition_tree_rank(m, k, opts.node_budget));
      for (const Subgroup& h : all_subgroups(whole_group(g))) {
        MarkedGroup mh = marking_of(h);
        for (std::uint64_t k = 1; k <= 3; ++k)
          for (std::uint64_t l = k; l <= 3; ++l)
            ck.expect(decomposition_tree_rank(mh, l, opts.node_budget) <= at_offset[k],
                      "embedding-mixed-offset", "<= " + at_offset[k].to_string(), "greater");
      }
    }

    // Strict centralizer-rank growth under products with a nonabelian factor.
    if (order <= 12) {
      Ordinal cent_b = centralizer_rank(m, opts.node_budget);
      for (const char* a_expr : {"S(3)", "D(4)", "Q8"}) {
        GroupPtr a = eval_expression(*parse_expression(a_expr));
        GroupPtr prod = FinGroup::direct_product(a, g, opts.size_limit);
        ck.expect(cent_b < centralizer_rank(default_marking(prod), opts.node_budget),
                  std::string("product-strict:centralizer:") + a_expr,
                  "> " + cent_b.to_string(), "not greater");
      }
    }

    // Quotient behavior of the max-n length: equal for the trivial kernel,
    // strictly smaller for every nontrivial kernel.
    if (order <= 48) {
      Ordinal len_g = maxn_length(m, opts.node_budget);
      for (const Subgroup& n : normal_subgroups(whole_group(g))) {
        auto [q, mq] = induced_quotient_marking(m, n);
        Ordinal len_q = maxn_length(mq, opts.node_budget);
        if (n.is_trivial())
          ck.expect_eq(len_q, len_g, "quotient:trivial-kernel-preserves-length");
        else
          ck.expect(len_q < len_g, "quotient:strictly-shorter",
                    "< " + len_g.to_string(), len_q.to_string());
      }
    }

    // Finite analogue of strict growth under products (via the quotient lemma).
    if (order <= 24) {
      Ordinal len_g = maxn_length(m, opts.node_budget);
      for (const char* s_expr : {"C(2)", "C(3)", "S(3)"}) {
        GroupPtr s = eval_expression(*parse_expression(s_expr));
        GroupPtr prod = FinGroup::direct_product(g, s, opts.size_limit);
        ck.expect(len_g < maxn_length(default_marking(prod), opts.node_budget),
                  std::string("product-strict:maxn:") + s_expr, "> " + len_g.to_string(),
                  "not greater");
      }
    }

    // Wreath superadditivity of the max-n length over catalog pairs. Pairs
    // with a trivial factor are excluded: H wr 1 is H itself and the trivial
    // group already has length 1, so the inequality is meaningless there.
    if (order > 1) {
      Ordinal len_h = maxn_length(m, opts.node_budget);
      for (const CatalogEntry& ke : builtin_catalog()) {
        if (ke.expected_order > opts.max_order || ke.expected_order == 1) continue;
        GroupPtr k = detail::eval_catalog_entry(ke, opts.size_limit);
        double size = static_cast<double>(ke.expected_order);
        double total = size;
        bool fits = true;
        for (std::size_t i = 0; i < k->degree() && fits; ++i) {
          total *= static_cast<double>(order);
          if (total > 256.0) fits = false;
        }
        if (!fits) continue;
        GroupPtr w = FinGroup::wreath_product(g, k, opts.size_limit);
        Ordinal len_k = maxn_length(default_marking(k), opts.node_budget);
        Ordinal len_w = maxn_length(default_marking(w), opts.node_budget);
        ck.expect(len_w >= len_k + len_h, "wreath-superadditive:" + ke.name,
                  ">= " + (len_k + len_h).to_string(), len_w.to_string());
      }
    }

    // Decomposition-tree facts: rank at offset |G| at most 2; offset
    // monotonicity; subtree identity; finiteness at offset 1.
    {
      std::uint64_t m_off = std::max<std::uint64_t>(1, order);
      Ordinal at_order = decomposition_tree_rank(m, m_off, opts.node_budget);
      ck.expect(at_order <= Ordinal::finite(2), "offset-order-rank-at-most-2", "<= 2",
                at_order.to_string());

      Ordinal prev = decomposition_tree_rank(m, 1, opts.node_budget);
      ck.expect(prev.is_finite(), "offset-1-rank-finite", "finite", prev.to_string());
      ck.expect(prev <= Ordinal::omega(), "offset-1-rank-below-omega-bound", "<= w",
                prev.to_string());
      for (std::uint64_t l = 2; l <= m_off; ++l) {
        Ordinal cur = decomposition_tree_rank(m, l, opts.node_budget);
        if (!(cur <= prev)) {
          ck.expect(false, "offset-monotone", "non-increasing in the offset",
                    "increase at offset " + std::to_string(l));
          break;
        }
        prev = std::move(cur);
      }
      if (order > 0) ++slot.cases;  // offset-monotone counted once when it never fails

      DecompositionTreeSpec spec(m, 1);
      Dag dag = tree_to_dag(spec, opts.node_budget);
      std::size_t sampled = 0;
      for (std::size_t i = 1; i < dag.nodes.size() && sampled < 3; ++i) {
        const StateKey& key = dag.nodes[i].key;
        std::uint64_t d = spec.depth_of(key);
        if (d >= spec.depth_cap() && spec.depth_cap() > 0) continue;
        Subgroup sub{g, spec.members_of(key)};
        MarkedGroup ms = induced_subgroup_marking(m, sub);
        Ordinal direct = decomposition_tree_rank(ms, d + 1, opts.node_budget);
        ck.expect_eq(direct, Ordinal::finite(dag.nodes[i].node_rank + 1),
                     "subtree-identity-at-depth-" + std::to_string(d));
        ++sampled;
      }

      XiDeg xd = decomposition_rank_and_degree(m, opts.node_budget);
      ck.expect(Ordinal() <= Ordinal::finite(3) * xd.xi, "construction-rank-bound-wiring",
                "0 <= 3*xi", "violated");
    }
  });

  return out;
}

// Tree lemmas on random explicit trees: the monotone-map rank inequality and
// the depth bound.
inline VerifyOutcome run_tree_lemma_suite(const VerifyOptions& opts) {
  VerifyOutcome out;
  out.suite = "tree-lemmas";
  detail::Checker ck{out, "random-trees"};
  detail::TreeGen gen(opts.seed);
  for (std::size_t t = 0; t < opts.random_trees; ++t) {
    FiniteTree big = gen.tree(200);
    std::vector<std::uint64_t> big_rho = big.node_ranks();

    // Monotone injection from a random tree into `big`, built top-down.
    std::unordered_map<std::size_t, std::size_t> phi;  // small node index -> big node index
    std::vector<std::vector<unsigned>> small_nodes{{}};
    std::vector<bool> used(big.size(), false);
    std::size_t root_img = gen.next() % big.size();
    phi[0] = root_img;
    used[root_img] = true;
    struct Open {
      std::size_t small_idx;
      std::size_t big_idx;
    };
    std::vector<Open> frontier{{0, root_img}};
    std::vector<std::size_t> child_count{0};
    while (!frontier.empty() && small_nodes.size() < 64) {
      Open cur = frontier.back();
      frontier.pop_back();
      // strict descendants of the image still unused
      std::vector<std::size_t> desc;
      const auto& base_seq = big.nodes()[cur.big_idx];
      for (std::size_t j = 0; j < big.size(); ++j) {
        const auto& s = big.nodes()[j];
        if (!used[j] && s.size() > base_seq.size() &&
            std::equal(base_seq.begin(), base_seq.end(), s.begin()))
          desc.push_back(j);
      }
      if (desc.empty()) continue;
      std::size_t kids = 1 + gen.next() % std::min<std::size_t>(3, desc.size());
      for (std::size_t c = 0; c < kids && !desc.empty(); ++c) {
        std::size_t pick = gen.next() % desc.size();
        std::size_t img = desc[pick];
        desc.erase(desc.begin() + static_cast<std::ptrdiff_t>(pick));
        if (used[img]) continue;
        used[img] = true;
        std::vector<unsigned> seq = small_nodes[cur.small_idx];
        seq.push_back(static_cast<unsigned>(child_count[cur.small_idx]++));
        std::size_t idx = small_nodes.size();
        small_nodes.push_back(std::move(seq));
        child_count.push_back(0);
        phi[idx] = img;
        frontier.push_back({idx, img});
      }
    }
    FiniteTree small(small_nodes);
    std::vector<std::uint64_t> small_rho = small.node_ranks();
    bool monotone_ok = true;
    for (std::size_t i = 0; i < small.size(); ++i) {
      // positions survived sorting identically: rebuild the index map
      const auto& seq = small_nodes[i];
      std::size_t si = 0;
      for (std::size_t j = 0; j < small.size(); ++j)
        if (small.nodes()[j] == seq) {
          si = j;
          break;
        }
      if (small_rho[si] > big_rho[phi.at(i)]) monotone_ok = false;
    }
    ck.expect(monotone_ok, "monotone-map-rank-inequality", "rho_S(s) <= rho_T(phi(s))",
              "violated");

    // Depth bound: rho(T) <= sup_{|s|=k} rho(T_s) + k.
    Ordinal rank = big.rank();
    for (std::size_t k = 1; k <= big.depth(); ++k) {
      Ordinal sup;
      for (std::size_t j = 0; j < big.size(); ++j)
        if (big.nodes()[j].size() == k) {
          Ordinal sub = Ordinal::finite(big_rho[j] + 1);
          if (sub > sup) sup = sub;
        }
      if (!(rank <= sup + Ordinal::finite(k))) {
        ck.expect(false, "depth-bound", "rho(T) <= sup rho(T_s) + k",
                  "violated at depth " + std::to_string(k));
        break;
      }
    }
    ++out.cases;  // depth-bound counted once per tree when it never fails
  }

  return out;
}

inline VerifyOutcome run_all_suites(const VerifyOptions& opts) {
  VerifyOutcome all;
  all.suite = "all";
  all.merge(run_oracle_suite(opts));
  all.merge(run_marking_suite(opts));
  all.merge(run_lemma_suite(opts));
  all.merge(run_tree_lemma_suite(opts));
  return all;
}

}  // namespace chainrank
