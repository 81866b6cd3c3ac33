#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chainrank/bitset.hpp"
#include "chainrank/error.hpp"
#include "chainrank/perm.hpp"

namespace chainrank {

class FinGroup;
using GroupPtr = std::shared_ptr<const FinGroup>;
using Elem = std::uint32_t;

namespace detail {

// Lazily computed, memoized facts about one subgroup (keyed by membership
// bit-vector in the owning FinGroup's cache). Filled by the functions in
// subgroup.hpp under the group's cache mutex.
struct SubgroupData {
  std::optional<std::vector<Elem>> gens;
  std::optional<std::vector<std::vector<Elem>>> classes;  // conjugacy classes, canonical order
  std::optional<Bitset> commutator;
  std::optional<std::vector<Bitset>> normal_lattice;      // sorted by (order, key)
  std::optional<Bitset> center;
  std::map<std::uint64_t, Bitset> low_index_core;         // k -> [H,H] ∩ ⋂{N ⊴ H : |H:N| <= k+1}
  std::optional<std::vector<Bitset>> all_subgroups;
};

}  // namespace detail

// Finite permutation group with a canonical element order: breadth-first
// closure from the identity, expanding by the generator list in the given
// order. The canonical order makes markings, tree states and reports
// reproducible for a fixed generator list.
//
// Immutable after construction. The embedded cache of per-subgroup facts is
// memoization only; it is guarded by a recursive mutex so shared concurrent
// reads are safe.
class FinGroup {
 public:
  static constexpr std::size_t kDefaultSizeLimit = 5040;
  static constexpr Elem kIdentity = 0;

  static GroupPtr generate(std::size_t degree, std::vector<Permutation> generators,
                           std::size_t size_limit = kDefaultSizeLimit) {
    return GroupPtr(new FinGroup(degree, std::move(generators), size_limit));
  }

  static GroupPtr trivial() { return generate(1, {}); }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }

  const Permutation& element(Elem i) const { return elements_[i]; }

  Elem mul(Elem a, Elem b) const {
    if (!cayley_.empty()) return cayley_[static_cast<std::size_t>(a) * order() + b];
    return find(elements_[a].then(elements_[b])).value();
  }

  Elem inv(Elem a) const { return inverse_[a]; }

  // g^-1 * x * g
  Elem conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }

  // [a, b] = a^-1 b^-1 a b
  Elem commutator_elem(Elem a, Elem b) const { return mul(mul(mul(inv(a), inv(b)), a), b); }

  const std::vector<Elem>& generator_indices() const { return generator_indices_; }

  std::optional<Elem> find(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Word over generator indices discovered for each element during closure.
  const std::vector<std::vector<unsigned>>& element_words() const { return words_; }

  std::string word_string(Elem e) const {
    if (e == kIdentity) return "e";
    std::string s;
    for (unsigned gi : words_[e]) {
      if (!s.empty()) s += "*";
      s += "g" + std::to_string(gi);
    }
    return s;
  }

  const std::vector<std::vector<Elem>>& conjugacy_classes() const {
    std::lock_guard lk(mu_);
    if (classes_.empty()) build_classes();
    return classes_;
  }

  Elem class_index_of(Elem e) const {
    std::lock_guard lk(mu_);
    if (classes_.empty()) build_classes();
    return class_of_[e];
  }

  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b,
                                 std::size_t size_limit = kDefaultSizeLimit) {
    if (a->order() > size_limit / b->order())
      throw Error(errc::size_limit, "direct product order exceeds size limit");
    std::size_t deg = a->degree() + b->degree();
    std::vector<Permutation> gens;
    for (Elem gi : a->generator_indices()) {
      std::vector<Permutation::Point> im(deg);
      for (std::size_t p = 0; p < a->degree(); ++p) im[p] = a->element(gi).apply(static_cast<Permutation::Point>(p));
      for (std::size_t p = a->degree(); p < deg; ++p) im[p] = static_cast<Permutation::Point>(p);
      gens.emplace_back(std::move(im));
    }
    for (Elem gi : b->generator_indices()) {
      std::vector<Permutation::Point> im(deg);
      for (std::size_t p = 0; p < a->degree(); ++p) im[p] = static_cast<Permutation::Point>(p);
      for (std::size_t p = 0; p < b->degree(); ++p)
        im[a->degree() + p] = static_cast<Permutation::Point>(a->degree() + b->element(gi).apply(static_cast<Permutation::Point>(p)));
      gens.emplace_back(std::move(im));
    }
    GroupPtr g = generate(deg, std::move(gens), size_limit);
    if (g->order() != a->order() * b->order())
      throw std::logic_error("direct product closure produced wrong order");
    return g;
  }

  // Wreath product base ≀ top with the top group acting on its own point set
  // X: the result permutes |X| * degree(base) points, one base block per
  // point of the top group. Generator list: base generators placed in one
  // block per top-orbit, then the top generators permuting blocks.
  static GroupPtr wreath_product(const GroupPtr& base, const GroupPtr& top,
                                 std::size_t size_limit = kDefaultSizeLimit) {
    std::size_t x_count = top->degree();
    std::size_t expected = top->order();
    for (std::size_t i = 0; i < x_count; ++i) {
      if (base->order() != 0 && expected > size_limit / base->order())
        throw Error(errc::size_limit, "wreath product order exceeds size limit");
      expected *= base->order();
    }
    std::size_t deg = x_count * base->degree();
    std::vector<Permutation> gens;
    // Orbit representatives of the top action, in point order.
    std::vector<bool> seen(x_count, false);
    for (std::size_t x0 = 0; x0 < x_count; ++x0) {
      if (seen[x0]) continue;
      std::vector<std::size_t> orbit{x0};
      seen[x0] = true;
      for (std::size_t qi = 0; qi < orbit.size(); ++qi)
        for (Elem gi : top->generator_indices()) {
          std::size_t y = top->element(gi).apply(static_cast<Permutation::Point>(orbit[qi]));
          if (!seen[y]) {
            seen[y] = true;
            orbit.push_back(y);
          }
        }
      for (Elem gi : base->generator_indices()) {
        std::vector<Permutation::Point> im(deg);
        for (std::size_t p = 0; p < deg; ++p) im[p] = static_cast<Permutation::Point>(p);
        for (std::size_t p = 0; p < base->degree(); ++p)
          im[x0 * base->degree() + p] = static_cast<Permutation::Point>(
              x0 * base->degree() + base->element(gi).apply(static_cast<Permutation::Point>(p)));
        gens.emplace_back(std::move(im));
      }
    }
    for (Elem gi : top->generator_indices()) {
      std::vector<Permutation::Point> im(deg);
      for (std::size_t x = 0; x < x_count; ++x) {
        std::size_t y = top->element(gi).apply(static_cast<Permutation::Point>(x));
        for (std::size_t p = 0; p < base->degree(); ++p)
          im[x * base->degree() + p] = static_cast<Permutation::Point>(y * base->degree() + p);
      }
      gens.emplace_back(std::move(im));
    }
    GroupPtr g = generate(deg, std::move(gens), size_limit);
    if (g->order() != expected) throw std::logic_error("wreath product closure produced wrong order");
    return g;
  }

  // Memoized per-subgroup facts; callers must hold cache_mutex() while
  // reading or filling fields of the returned object.
  std::shared_ptr<detail::SubgroupData> subgroup_data(const Bitset& members) const {
    std::lock_guard lk(mu_);
    auto& slot = subdata_[members.bytes()];
    if (!slot) slot = std::make_shared<detail::SubgroupData>();
    return slot;
  }

  std::recursive_mutex& cache_mutex() const { return mu_; }

 private:
  FinGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t size_limit)
      : degree_(degree) {
    if (degree == 0 || degree > 65535) throw Error(errc::invalid_permutation, "degree out of range");
    for (const Permutation& p : generators)
      if (p.degree() != degree) throw Error(errc::invalid_permutation, "generator degree mismatch");

    elements_.push_back(Permutation::identity(degree));
    index_.emplace(elements_[0], 0);
    words_.push_back({});
    for (std::size_t at = 0; at < elements_.size(); ++at) {
      for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        Permutation next = elements_[at].then(generators[gi]);
        if (index_.contains(next)) continue;
        if (elements_.size() >= size_limit)
          throw Error(errc::size_limit, "group order exceeds size limit " + std::to_string(size_limit));
        Elem id = static_cast<Elem>(elements_.size());
        index_.emplace(next, id);
        words_.push_back(words_[at]);
        words_.back().push_back(static_cast<unsigned>(gi));
        elements_.push_back(std::move(next));
      }
    }

    generator_indices_.reserve(generators.size());
    for (const Permutation& p : generators) generator_indices_.push_back(index_.at(p));

    inverse_.resize(elements_.size());
    for (Elem i = 0; i < elements_.size(); ++i) inverse_[i] = index_.at(elements_[i].inverse());

    if (order() <= kCayleyLimit) {
      cayley_.resize(order() * order());
      for (Elem a = 0; a < order(); ++a)
        for (Elem b = 0; b < order(); ++b)
          cayley_[static_cast<std::size_t>(a) * order() + b] = index_.at(elements_[a].then(elements_[b]));
    }
  }

  void build_classes() const {
    class_of_.assign(order(), 0);
    std::vector<bool> seen(order(), false);
    for (Elem e = 0; e < order(); ++e) {
      if (seen[e]) continue;
      std::vector<Elem> orbit{e};
      seen[e] = true;
      for (std::size_t qi = 0; qi < orbit.size(); ++qi)
        for (Elem gi : generator_indices_) {
          Elem y = conj(orbit[qi], gi);
          if (!seen[y]) {
            seen[y] = true;
            orbit.push_back(y);
          }
        }
      Elem ci = static_cast<Elem>(classes_.size());
      for (Elem x : orbit) class_of_[x] = ci;
      classes_.push_back(std::move(orbit));
    }
  }

  static constexpr std::size_t kCayleyLimit = 1024;

  std::size_t degree_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Elem, PermutationHash> index_;
  std::vector<std::vector<unsigned>> words_;
  std::vector<Elem> generator_indices_;
  std::vector<Elem> inverse_;
  std::vector<Elem> cayley_;

  mutable std::recursive_mutex mu_;
  mutable std::vector<std::vector<Elem>> classes_;
  mutable std::vector<Elem> class_of_;
  mutable std::unordered_map<std::string, std::shared_ptr<detail::SubgroupData>> subdata_;
};

}  // namespace chainrank
