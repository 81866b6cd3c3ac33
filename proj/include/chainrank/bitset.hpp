#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace chainrank {

// Fixed-size dynamic bit vector used for subgroup membership sets.
// Comparison order (operator<=>) is the canonical key order used whenever
// subgroup lists must be sorted deterministically.
class Bitset {
 public:
  Bitset() = default;

  explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  static Bitset all_set(std::size_t n) {
    Bitset b(n);
    for (std::size_t i = 0; i < b.words_.size(); ++i) b.words_[i] = ~std::uint64_t{0};
    b.trim();
    return b;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  bool is_subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  Bitset operator&(const Bitset& other) const {
    Bitset r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & other.words_[i];
    return r;
  }

  Bitset operator|(const Bitset& other) const {
    Bitset r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | other.words_[i];
    return r;
  }

  Bitset& operator|=(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  bool operator==(const Bitset& other) const = default;

  std::strong_ordering operator<=>(const Bitset& other) const {
    if (auto c = size_ <=> other.size_; c != 0) return c;
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  // First set bit at position >= from, or size() if none.
  std::size_t next_set(std::size_t from) const {
    while (from < size_) {
      std::uint64_t w = words_[from >> 6] >> (from & 63);
      if (w) return from + static_cast<std::size_t>(std::countr_zero(w));
      from = (from | 63) + 1;
    }
    return size_;
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t i = next_set(0); i < size_; i = next_set(i + 1)) fn(i);
  }

  // Raw bytes, suitable as a canonical map key.
  std::string bytes() const {
    std::string s;
    s.reserve(words_.size() * 8);
    for (auto w : words_)
      for (int k = 0; k < 8; ++k) s.push_back(static_cast<char>((w >> (8 * k)) & 0xff));
    return s;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ size_);
  }

 private:
  void trim() {
    if (std::size_t extra = size_ & 63; extra != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << extra) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace chainrank
