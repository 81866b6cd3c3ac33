#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chainrank/error.hpp"

namespace chainrank {

// Permutation of {0, ..., degree-1}, stored as the image table.
// Composition is left-to-right: a.then(b) applies a first.
class Permutation {
 public:
  using Point = std::uint16_t;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p])
        throw Error(errc::invalid_permutation, "image table is not a bijection");
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> im(degree);
    for (std::size_t i = 0; i < degree; ++i) im[i] = static_cast<Point>(i);
    return Permutation(std::move(im));
  }

  // Cycle notation with 0-based points, e.g. "(0 1)(2 3)"; "()" is the
  // identity. Points may be separated by spaces or commas.
  static Permutation from_cycles(std::size_t degree, std::string_view text) {
    std::vector<Point> im(degree);
    for (std::size_t i = 0; i < degree; ++i) im[i] = static_cast<Point>(i);
    std::vector<bool> used(degree, false);
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ','))
        ++pos;
    };
    skip();
    while (pos < text.size()) {
      if (text[pos] != '(')
        throw Error(errc::invalid_permutation, "expected '(' in cycle notation");
      ++pos;
      std::vector<std::size_t> cycle;
      skip();
      while (pos < text.size() && text[pos] != ')') {
        if (text[pos] < '0' || text[pos] > '9')
          throw Error(errc::invalid_permutation, "expected point in cycle notation");
        std::size_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
          v = v * 10 + static_cast<std::size_t>(text[pos++] - '0');
        if (v >= degree) throw Error(errc::invalid_permutation, "point exceeds degree");
        if (used[v]) throw Error(errc::invalid_permutation, "point repeated across cycles");
        used[v] = true;
        cycle.push_back(v);
        skip();
      }
      if (pos >= text.size()) throw Error(errc::invalid_permutation, "unterminated cycle");
      ++pos;  // ')'
      for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
        im[cycle[i]] = static_cast<Point>(cycle[i + 1]);
      if (cycle.size() > 1) im[cycle.back()] = static_cast<Point>(cycle[0]);
      skip();
    }
    return Permutation(std::move(im));
  }

  std::size_t degree() const { return images_.size(); }

  Point apply(Point p) const { return images_[p]; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  // x -> next(this(x))
  Permutation then(const Permutation& next) const {
    std::vector<Point> im(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) im[i] = next.images_[images_[i]];
    return Permutation(std::move(im), unchecked{});
  }

  Permutation inverse() const {
    std::vector<Point> im(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(im), unchecked{});
  }

  const std::vector<Point>& images() const { return images_; }

  // Canonical cycle string: cycles ordered by least moved point, fixed points
  // omitted, identity rendered "()".
  std::string to_cycle_string() const {
    std::string s;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      s += "(";
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) s += " ";
        s += std::to_string(j);
        first = false;
        j = images_[j];
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (Point p : images_) {
      h ^= p;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  struct unchecked {};
  Permutation(std::vector<Point> images, unchecked) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace chainrank
