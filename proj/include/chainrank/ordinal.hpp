#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chainrank/error.hpp"

namespace chainrank {

// Ordinal below epsilon_0 in Cantor normal form: a sum of terms
// w^e1*c1 + w^e2*c2 + ... with exponents (themselves ordinals) strictly
// decreasing and coefficients positive. The empty sum is 0. Every value has
// exactly one representation, so structural equality is value equality.
//
// Addition and multiplication are the usual non-commutative ordinal
// operations (1 + w == w, but w + 1 != w).
class Ordinal {
 public:
  struct Term;
  using Terms = std::vector<Term>;

  struct Term {
    Terms exponent;  // CNF terms of the exponent ordinal
    std::uint64_t coefficient = 0;
  };

  Ordinal() = default;

  static Ordinal finite(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back(Term{{}, n});
    return o;
  }

  static Ordinal omega() { return omega_pow(finite(1), 1); }

  static Ordinal omega_pow(const Ordinal& exponent, std::uint64_t coefficient = 1) {
    Ordinal o;
    if (coefficient > 0) o.terms_.push_back(Term{exponent.terms_, coefficient});
    return o;
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.empty());
  }

  // The natural-number value, if the ordinal is finite.
  std::optional<std::uint64_t> as_finite() const {
    if (terms_.empty()) return 0;
    if (is_finite()) return terms_[0].coefficient;
    return std::nullopt;
  }

  bool operator==(const Ordinal& other) const { return cmp(terms_, other.terms_) == 0; }

  std::strong_ordering operator<=>(const Ordinal& other) const { return cmp(terms_, other.terms_); }

  Ordinal operator+(const Ordinal& rhs) const {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return rhs;
    const Terms& beta = rhs.terms_[0].exponent;
    Ordinal out;
    // Terms of the left operand below the right operand's leading exponent
    // are absorbed.
    for (const Term& t : terms_) {
      if (cmp(t.exponent, beta) > 0)
        out.terms_.push_back(t);
      else
        break;
    }
    std::size_t merge_from = 0;
    if (std::size_t kept = out.terms_.size();
        kept < terms_.size() && cmp(terms_[kept].exponent, beta) == 0) {
      out.terms_.push_back(
          Term{beta, checked_add(terms_[kept].coefficient, rhs.terms_[0].coefficient)});
      merge_from = 1;
    }
    for (std::size_t i = merge_from; i < rhs.terms_.size(); ++i) out.terms_.push_back(rhs.terms_[i]);
    return out;
  }

  Ordinal operator*(const Ordinal& rhs) const {
    Ordinal out;
    if (is_zero() || rhs.is_zero()) return out;
    const Terms& lead_exp = terms_[0].exponent;
    for (const Term& t : rhs.terms_) {
      if (!t.exponent.empty()) {
        // a * w^b*c == w^(a1+b)*c for b > 0: only a's leading exponent survives.
        Ordinal e;
        e.terms_ = lead_exp;
        Ordinal b;
        b.terms_ = t.exponent;
        out.terms_.push_back(Term{(e + b).terms_, t.coefficient});
      } else {
        // a * n multiplies the leading coefficient and keeps the tail.
        out.terms_.push_back(Term{lead_exp, checked_mul(terms_[0].coefficient, t.coefficient)});
        for (std::size_t i = 1; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
      }
    }
    return out;
  }

  Ordinal& operator+=(const Ordinal& rhs) { return *this = *this + rhs; }

  // Finite sup: the maximum of the list, 0 for the empty list.
  static Ordinal sup(std::span<const Ordinal> xs) {
    Ordinal m;
    for (const Ordinal& x : xs)
      if (x > m) m = x;
    return m;
  }

  std::string to_string() const { return render(terms_); }

  // Parses the textual format produced by to_string (whitespace tolerated).
  // Terms are folded with ordinal addition, so non-canonical inputs such as
  // "1+w" evaluate to their value (here w).
  static Ordinal parse(std::string_view text) {
    std::size_t pos = 0;
    Ordinal o = parse_sum(text, pos);
    skip_ws(text, pos);
    if (pos != text.size()) throw SyntaxError("trailing characters in ordinal", 1, pos + 1);
    return o;
  }

 private:
  static std::strong_ordering cmp(const Terms& a, const Terms& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = cmp(a[i].exponent, b[i].exponent); c != 0) return c;
      if (auto c = a[i].coefficient <=> b[i].coefficient; c != 0) return c;
    }
    return a.size() <=> b.size();
  }

  static std::string render(const Terms& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i > 0) s += "+";
      const Term& t = terms[i];
      if (t.exponent.empty()) {
        s += std::to_string(t.coefficient);
        continue;
      }
      s += "w";
      bool exp_is_one = t.exponent.size() == 1 && t.exponent[0].exponent.empty() &&
                        t.exponent[0].coefficient == 1;
      if (!exp_is_one) {
        s += "^";
        if (t.exponent.size() == 1 && t.exponent[0].exponent.empty())
          s += std::to_string(t.exponent[0].coefficient);
        else
          s += "(" + render(t.exponent) + ")";
      }
      if (t.coefficient != 1) s += "*" + std::to_string(t.coefficient);
    }
    return s;
  }

  static std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
      throw Error(errc::resource_limit, "ordinal coefficient overflow");
    return a + b;
  }

  static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
      throw Error(errc::resource_limit, "ordinal coefficient overflow");
    return a * b;
  }

  static void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  static std::uint64_t parse_nat(std::string_view s, std::size_t& pos) {
    skip_ws(s, pos);
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
      throw SyntaxError("expected number in ordinal", 1, pos + 1);
    std::uint64_t v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(s[pos] - '0'));
      ++pos;
    }
    return v;
  }

  static Ordinal parse_sum(std::string_view s, std::size_t& pos) {
    Ordinal acc = parse_term(s, pos);
    for (;;) {
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == '+') {
        ++pos;
        acc = acc + parse_term(s, pos);
      } else {
        return acc;
      }
    }
  }

  static Ordinal parse_term(std::string_view s, std::size_t& pos) {
    skip_ws(s, pos);
    if (pos >= s.size()) throw SyntaxError("expected ordinal term", 1, pos + 1);
    if (s[pos] != 'w') return finite(parse_nat(s, pos));
    ++pos;
    Ordinal exponent = finite(1);
    skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == '(') {
        ++pos;
        exponent = parse_sum(s, pos);
        skip_ws(s, pos);
        if (pos >= s.size() || s[pos] != ')')
          throw SyntaxError("expected ')' in ordinal", 1, pos + 1);
        ++pos;
      } else if (pos < s.size() && s[pos] == 'w') {
        ++pos;
        exponent = omega();
      } else {
        exponent = finite(parse_nat(s, pos));
      }
    }
    std::uint64_t coefficient = 1;
    skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      coefficient = parse_nat(s, pos);
      if (coefficient == 0) throw SyntaxError("zero coefficient in ordinal", 1, pos + 1);
    }
    return omega_pow(exponent, coefficient);
  }

  Terms terms_;
};

}  // namespace chainrank
