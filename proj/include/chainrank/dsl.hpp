#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chainrank/error.hpp"
#include "chainrank/group.hpp"
#include "chainrank/ordinal.hpp"
#include "chainrank/quotient.hpp"
#include "chainrank/subgroup.hpp"

namespace chainrank {

// ---------------------------------------------------------------------------
// Group-construction expression language.
//
//   expr   := wreath
//   wreath := prod ('wr' prod)*            left-associative
//   prod   := factor ('*' factor)*         binds tighter than 'wr'
//   factor := atom | '(' expr ')'
//           | 'quotient(' expr ';' words ')'
//           | 'subgroup(' expr ';' words ')'
//           | 'union(' ident ',' expr ')'
//   atom   := ('C'|'S'|'A'|'D') '(' arg ')' | 'Q8' | 'E(' arg ',' arg ')'
//           | 'perm(' nat ';' cycles ')'
//   arg    := operand ('^' operand)?       operand := nat | ident
//
// Words are strings over g0..g9 with inverses and parentheses, resolved
// against the evaluated group's generator list in declaration order.
// ---------------------------------------------------------------------------

struct ArgExpr {
  struct Operand {
    bool is_param = false;
    std::uint64_t value = 0;
    std::string name;
  };
  Operand base;
  std::optional<Operand> exponent;
};

struct GroupExpr;
using ExprPtr = std::shared_ptr<const GroupExpr>;

struct GroupExpr {
  enum class Kind { atom, product, wreath, quotient, subgroup_of, union_family };
  enum class AtomKind { cyclic, symmetric, alternating, dihedral, quaternion, elementary, perm };

  Kind kind = Kind::atom;

  // atom
  AtomKind atom = AtomKind::cyclic;
  std::vector<ArgExpr> args;
  std::size_t perm_degree = 0;
  std::vector<std::string> perm_cycles;

  // product / wreath
  ExprPtr left, right;

  // quotient / subgroup_of
  ExprPtr inner;
  std::vector<std::string> words;

  // union_family
  std::string param;
  ExprPtr body;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = parse_wreath();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    std::size_t after = pos_ + w.size();
    if (after < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
      return false;
    pos_ = after;
    return true;
  }

  std::uint64_t parse_nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  std::string parse_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail("expected identifier");
    std::string s;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      s += text_[pos_++];
    return s;
  }

  ArgExpr::Operand parse_operand() {
    skip_ws();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return {false, parse_nat(), {}};
    return {true, 0, parse_ident()};
  }

  ArgExpr parse_arg() {
    ArgExpr a;
    a.base = parse_operand();
    skip_ws();
    if (eat('^')) a.exponent = parse_operand();
    return a;
  }

  // Raw text until the matching close paren at depth 0, split on top-level
  // commas; used for word lists and cycle lists.
  std::vector<std::string> parse_raw_list() {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (;;) {
      if (pos_ >= text_.size()) fail("unterminated argument list");
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) {
        out.push_back(cur);
        cur.clear();
        ++pos_;
        continue;
      }
      cur += c;
      ++pos_;
    }
    out.push_back(cur);
    return out;
  }

  ExprPtr parse_wreath() {
    ExprPtr e = parse_prod();
    while (eat_word("wr")) {
      auto node = std::make_shared<GroupExpr>();
      node->kind = GroupExpr::Kind::wreath;
      node->left = e;
      node->right = parse_prod();
      e = node;
    }
    return e;
  }

  ExprPtr parse_prod() {
    ExprPtr e = parse_factor();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        auto node = std::make_shared<GroupExpr>();
        node->kind = GroupExpr::Kind::product;
        node->left = e;
        node->right = parse_factor();
        e = node;
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_factor() {
    skip_ws();
    if (eat('(')) {
      ExprPtr e = parse_wreath();
      expect(')');
      return e;
    }
    if (eat_word("quotient") || eat_word("subgroup")) {
      bool is_quot = text_[pos_ - 1] == 't';  // "quotient" ends in 't'
      auto node = std::make_shared<GroupExpr>();
      node->kind = is_quot ? GroupExpr::Kind::quotient : GroupExpr::Kind::subgroup_of;
      expect('(');
      node->inner = parse_wreath();
      expect(';');
      for (std::string& w : parse_raw_list()) node->words.push_back(trim(w));
      expect(')');
      return node;
    }
    if (eat_word("union")) {
      auto node = std::make_shared<GroupExpr>();
      node->kind = GroupExpr::Kind::union_family;
      expect('(');
      node->param = parse_ident();
      expect(',');
      node->body = parse_wreath();
      expect(')');
      return node;
    }
    if (eat_word("perm")) {
      auto node = std::make_shared<GroupExpr>();
      node->kind = GroupExpr::Kind::atom;
      node->atom = GroupExpr::AtomKind::perm;
      expect('(');
      node->perm_degree = static_cast<std::size_t>(parse_nat());
      expect(';');
      for (std::string& c : parse_raw_list()) node->perm_cycles.push_back(trim(c));
      expect(')');
      return node;
    }
    if (eat_word("Q8")) {
      auto node = std::make_shared<GroupExpr>();
      node->kind = GroupExpr::Kind::atom;
      node->atom = GroupExpr::AtomKind::quaternion;
      return node;
    }
    skip_ws();
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      GroupExpr::AtomKind ak;
      std::size_t arity = 1;
      switch (c) {
        case 'C': ak = GroupExpr::AtomKind::cyclic; break;
        case 'S': ak = GroupExpr::AtomKind::symmetric; break;
        case 'A': ak = GroupExpr::AtomKind::alternating; break;
        case 'D': ak = GroupExpr::AtomKind::dihedral; break;
        case 'E':
          ak = GroupExpr::AtomKind::elementary;
          arity = 2;
          break;
        default: fail("expected group expression");
      }
      ++pos_;
      auto node = std::make_shared<GroupExpr>();
      node->kind = GroupExpr::Kind::atom;
      node->atom = ak;
      expect('(');
      node->args.push_back(parse_arg());
      for (std::size_t i = 1; i < arity; ++i) {
        expect(',');
        node->args.push_back(parse_arg());
      }
      expect(')');
      return node;
    }
    fail("expected group expression");
  }

  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\n");
    std::size_t b = s.find_last_not_of(" \t\n");
    if (a == std::string::npos) return {};
    return s.substr(a, b - a + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

// Canonical pretty-printer; parse(render(e)) reproduces the tree.
inline std::string render_expression(const GroupExpr& e) {
  auto arg_str = [](const ArgExpr& a) {
    auto op = [](const ArgExpr::Operand& o) { return o.is_param ? o.name : std::to_string(o.value); };
    std::string s = op(a.base);
    if (a.exponent) s += "^" + op(*a.exponent);
    return s;
  };
  switch (e.kind) {
    case GroupExpr::Kind::atom:
      switch (e.atom) {
        case GroupExpr::AtomKind::cyclic: return "C(" + arg_str(e.args[0]) + ")";
        case GroupExpr::AtomKind::symmetric: return "S(" + arg_str(e.args[0]) + ")";
        case GroupExpr::AtomKind::alternating: return "A(" + arg_str(e.args[0]) + ")";
        case GroupExpr::AtomKind::dihedral: return "D(" + arg_str(e.args[0]) + ")";
        case GroupExpr::AtomKind::quaternion: return "Q8";
        case GroupExpr::AtomKind::elementary:
          return "E(" + arg_str(e.args[0]) + "," + arg_str(e.args[1]) + ")";
        case GroupExpr::AtomKind::perm: {
          std::string s = "perm(" + std::to_string(e.perm_degree) + "; ";
          for (std::size_t i = 0; i < e.perm_cycles.size(); ++i) {
            if (i) s += ", ";
            s += e.perm_cycles[i];
          }
          return s + ")";
        }
      }
      break;
    case GroupExpr::Kind::product: {
      auto wrap = [](const GroupExpr& c) {
        std::string s = render_expression(c);
        return c.kind == GroupExpr::Kind::wreath ? "(" + s + ")" : s;
      };
      return wrap(*e.left) + "*" + wrap(*e.right);
    }
    case GroupExpr::Kind::wreath: {
      std::string l = render_expression(*e.left);
      std::string r = render_expression(*e.right);
      if (e.right->kind == GroupExpr::Kind::wreath) r = "(" + r + ")";
      return l + " wr " + r;
    }
    case GroupExpr::Kind::quotient:
    case GroupExpr::Kind::subgroup_of: {
      std::string s = e.kind == GroupExpr::Kind::quotient ? "quotient(" : "subgroup(";
      s += render_expression(*e.inner) + "; ";
      for (std::size_t i = 0; i < e.words.size(); ++i) {
        if (i) s += ", ";
        s += e.words[i];
      }
      return s + ")";
    }
    case GroupExpr::Kind::union_family:
      return "union(" + e.param + ", " + render_expression(*e.body) + ")";
  }
  throw std::logic_error("unhandled expression kind");
}

struct EvalOptions {
  std::size_t size_limit = FinGroup::kDefaultSizeLimit;
  std::map<std::string, std::uint64_t> params;  // instantiation for union parameters
};

namespace detail {

inline std::uint64_t eval_operand(const ArgExpr::Operand& o, const EvalOptions& opts) {
  if (!o.is_param) return o.value;
  auto it = opts.params.find(o.name);
  if (it == opts.params.end())
    throw Error(errc::unbound_parameter, "unbound parameter '" + o.name + "'");
  return it->second;
}

inline std::uint64_t eval_arg(const ArgExpr& a, const EvalOptions& opts) {
  std::uint64_t v = eval_operand(a.base, opts);
  if (!a.exponent) return v;
  std::uint64_t e = eval_operand(*a.exponent, opts);
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (v != 0 && out > std::uint64_t{1} << 40)
      throw Error(errc::size_limit, "argument power too large");
    out *= v;
  }
  return out;
}

inline Permutation rotation(std::size_t n) {
  std::vector<Permutation::Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Permutation::Point>((i + 1) % n);
  return Permutation(std::move(im));
}

inline GroupPtr quaternion_group() {
  // Elements ±1, ±i, ±j, ±k indexed unit + 4*sign; generators are the right
  // translations by i and j in the regular representation.
  static constexpr int unit_mul[4][4][2] = {
      {{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}},
      {{+1, 1}, {-1, 0}, {+1, 3}, {-1, 2}},
      {{+1, 2}, {-1, 3}, {-1, 0}, {+1, 1}},
      {{+1, 3}, {+1, 2}, {-1, 1}, {-1, 0}},
  };
  auto right_mul = [&](int unit) {
    std::vector<Permutation::Point> im(8);
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 4; ++u) {
        int sign = unit_mul[u][unit][0];
        int v = unit_mul[u][unit][1];
        int out_sign = (sign < 0) ^ (s == 1) ? 1 : 0;
        im[static_cast<std::size_t>(s * 4 + u)] = static_cast<Permutation::Point>(out_sign * 4 + v);
      }
    return Permutation(std::move(im));
  };
  return FinGroup::generate(8, {right_mul(1), right_mul(2)});
}

inline std::vector<Elem> resolve_words(const GroupPtr& g, const std::vector<std::string>& words);

}  // namespace detail

inline GroupPtr eval_expression(const GroupExpr& e, const EvalOptions& opts = {}) {
  using Kind = GroupExpr::Kind;
  using Atom = GroupExpr::AtomKind;
  switch (e.kind) {
    case Kind::atom:
      switch (e.atom) {
        case Atom::cyclic: {
          std::uint64_t n = detail::eval_arg(e.args[0], opts);
          if (n == 0) throw Error(errc::invalid_input, "C(n) requires n >= 1");
          if (n == 1) return FinGroup::trivial();
          if (n > opts.size_limit) throw Error(errc::size_limit, "cyclic group beyond size limit");
          return FinGroup::generate(static_cast<std::size_t>(n), {detail::rotation(n)}, opts.size_limit);
        }
        case Atom::symmetric: {
          std::uint64_t n = detail::eval_arg(e.args[0], opts);
          if (n == 0) throw Error(errc::invalid_input, "S(n) requires n >= 1");
          if (n == 1) return FinGroup::trivial();
          return FinGroup::generate(
              static_cast<std::size_t>(n),
              {Permutation::from_cycles(n, "(0 1)"), detail::rotation(n)}, opts.size_limit);
        }
        case Atom::alternating: {
          std::uint64_t n = detail::eval_arg(e.args[0], opts);
          if (n == 0) throw Error(errc::invalid_input, "A(n) requires n >= 1");
          if (n <= 2) return FinGroup::trivial();
          if (n == 3)
            return FinGroup::generate(3, {Permutation::from_cycles(3, "(0 1 2)")}, opts.size_limit);
          std::vector<Permutation::Point> im(n);
          if (n % 2 == 1) {
            for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Permutation::Point>((i + 1) % n);
          } else {
            im[0] = 0;
            for (std::size_t i = 1; i < n; ++i)
              im[i] = static_cast<Permutation::Point>(i % (n - 1) + 1);
          }
          return FinGroup::generate(
              static_cast<std::size_t>(n),
              {Permutation::from_cycles(n, "(0 1 2)"), Permutation(std::move(im))}, opts.size_limit);
        }
        case Atom::dihedral: {
          std::uint64_t n = detail::eval_arg(e.args[0], opts);
          if (n == 0) throw Error(errc::invalid_input, "D(n) requires n >= 1");
          if (n == 1) return FinGroup::generate(2, {Permutation::from_cycles(2, "(0 1)")}, opts.size_limit);
          if (n == 2)
            return FinGroup::generate(
                4, {Permutation::from_cycles(4, "(0 1)"), Permutation::from_cycles(4, "(2 3)")},
                opts.size_limit);
          std::vector<Permutation::Point> refl(n);
          for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Permutation::Point>((n - i) % n);
          return FinGroup::generate(static_cast<std::size_t>(n),
                                    {detail::rotation(n), Permutation(std::move(refl))},
                                    opts.size_limit);
        }
        case Atom::quaternion: return detail::quaternion_group();
        case Atom::elementary: {
          std::uint64_t p = detail::eval_arg(e.args[0], opts);
          std::uint64_t k = detail::eval_arg(e.args[1], opts);
          bool prime = p >= 2;
          for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
          if (!prime || k == 0) throw Error(errc::invalid_input, "E(p,k) requires prime p and k >= 1");
          std::uint64_t ord = 1;
          for (std::uint64_t i = 0; i < k; ++i) {
            if (ord > opts.size_limit / p) throw Error(errc::size_limit, "E(p,k) beyond size limit");
            ord *= p;
          }
          std::size_t deg = static_cast<std::size_t>(p * k);
          std::vector<Permutation> gens;
          for (std::uint64_t c = 0; c < k; ++c) {
            std::vector<Permutation::Point> im(deg);
            for (std::size_t i = 0; i < deg; ++i) im[i] = static_cast<Permutation::Point>(i);
            for (std::uint64_t i = 0; i < p; ++i)
              im[c * p + i] = static_cast<Permutation::Point>(c * p + (i + 1) % p);
            gens.emplace_back(std::move(im));
          }
          return FinGroup::generate(deg, std::move(gens), opts.size_limit);
        }
        case Atom::perm: {
          std::vector<Permutation> gens;
          for (const std::string& c : e.perm_cycles)
            gens.push_back(Permutation::from_cycles(e.perm_degree, c));
          return FinGroup::generate(e.perm_degree, std::move(gens), opts.size_limit);
        }
      }
      break;
    case Kind::product:
      return FinGroup::direct_product(eval_expression(*e.left, opts), eval_expression(*e.right, opts),
                                      opts.size_limit);
    case Kind::wreath:
      return FinGroup::wreath_product(eval_expression(*e.left, opts), eval_expression(*e.right, opts),
                                      opts.size_limit);
    case Kind::quotient: {
      GroupPtr g = eval_expression(*e.inner, opts);
      Subgroup n = normal_closure(whole_group(g), detail::resolve_words(g, e.words));
      return quotient(g, n).group;
    }
    case Kind::subgroup_of: {
      GroupPtr g = eval_expression(*e.inner, opts);
      std::vector<Permutation> gens;
      for (Elem x : detail::resolve_words(g, e.words)) gens.push_back(g->element(x));
      return FinGroup::generate(g->degree(), std::move(gens), opts.size_limit);
    }
    case Kind::union_family: {
      if (!opts.params.contains(e.param))
        throw Error(errc::unbound_parameter,
                    "symbolic union requires an instantiation for '" + e.param + "'");
      return eval_expression(*e.body, opts);
    }
  }
  throw std::logic_error("unhandled expression kind");
}

namespace detail {

// word := factor ('*' factor)* ; factor := ('g' digit+ | '(' word ')') ('^' '-'? digit+)?
inline Elem eval_word(const FinGroup& g, std::string_view w, std::size_t& pos);

inline Elem eval_word_factor(const FinGroup& g, std::string_view w, std::size_t& pos) {
  auto skip = [&] {
    while (pos < w.size() && (w[pos] == ' ' || w[pos] == '\t')) ++pos;
  };
  skip();
  Elem base;
  if (pos < w.size() && w[pos] == '(') {
    ++pos;
    base = eval_word(g, w, pos);
    skip();
    if (pos >= w.size() || w[pos] != ')')
      throw Error(errc::word_resolution, "unbalanced parentheses in word");
    ++pos;
  } else if (pos < w.size() && w[pos] == 'g') {
    ++pos;
    if (pos >= w.size() || !std::isdigit(static_cast<unsigned char>(w[pos])))
      throw Error(errc::word_resolution, "expected generator index after 'g'");
    std::size_t idx = 0;
    while (pos < w.size() && std::isdigit(static_cast<unsigned char>(w[pos])))
      idx = idx * 10 + static_cast<std::size_t>(w[pos++] - '0');
    if (idx >= g.generator_indices().size())
      throw Error(errc::word_resolution, "word references generator g" + std::to_string(idx) +
                                             " but the group has only " +
                                             std::to_string(g.generator_indices().size()));
    base = g.generator_indices()[idx];
  } else {
    throw Error(errc::word_resolution, "expected 'g<k>' or '(' in word");
  }
  skip();
  if (pos < w.size() && w[pos] == '^') {
    ++pos;
    skip();
    bool neg = false;
    if (pos < w.size() && w[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= w.size() || !std::isdigit(static_cast<unsigned char>(w[pos])))
      throw Error(errc::word_resolution, "expected exponent in word");
    std::uint64_t k = 0;
    while (pos < w.size() && std::isdigit(static_cast<unsigned char>(w[pos])))
      k = k * 10 + static_cast<std::uint64_t>(w[pos++] - '0');
    Elem acc = FinGroup::kIdentity;
    for (std::uint64_t i = 0; i < k % (2 * g.order()); ++i) acc = g.mul(acc, base);
    base = neg ? g.inv(acc) : acc;
  }
  return base;
}

inline Elem eval_word(const FinGroup& g, std::string_view w, std::size_t& pos) {
  Elem acc = eval_word_factor(g, w, pos);
  for (;;) {
    while (pos < w.size() && (w[pos] == ' ' || w[pos] == '\t')) ++pos;
    if (pos < w.size() && w[pos] == '*') {
      ++pos;
      acc = g.mul(acc, eval_word_factor(g, w, pos));
    } else {
      return acc;
    }
  }
}

inline std::vector<Elem> resolve_words(const GroupPtr& g, const std::vector<std::string>& words) {
  std::vector<Elem> out;
  for (const std::string& w : words) {
    std::size_t pos = 0;
    Elem e = eval_word(*g, w, pos);
    while (pos < w.size() && (w[pos] == ' ' || w[pos] == '\t')) ++pos;
    if (pos != w.size()) throw Error(errc::word_resolution, "trailing characters in word");
    out.push_back(e);
  }
  return out;
}

}  // namespace detail

// Structural upper bound on the construction rank: atoms are stage 0 (finite
// groups), products and wreaths add extension steps, symbolic unions add the
// union step; the subgroup and quotient operators do not raise the stage.
// For expressions with no symbolic union the exact value is also reported:
// every evaluable expression is a finite group, hence stage 0.
struct RkBound {
  Ordinal bound;
  std::optional<Ordinal> exact;
};

inline RkBound rk_bound(const GroupExpr& e) {
  using Kind = GroupExpr::Kind;
  auto structural = [](const GroupExpr& x, auto&& self) -> Ordinal {
    switch (x.kind) {
      case Kind::atom: return Ordinal();
      case Kind::product:
        return std::max(self(*x.left, self), self(*x.right, self)) + Ordinal::finite(1);
      case Kind::wreath:
        return std::max(self(*x.left, self), self(*x.right, self)) + Ordinal::finite(2);
      case Kind::quotient:
      case Kind::subgroup_of: return self(*x.inner, self);
      case Kind::union_family: return self(*x.body, self) + Ordinal::finite(1);
    }
    throw std::logic_error("unhandled expression kind");
  };
  auto symbolic = [](const GroupExpr& x, auto&& self) -> bool {
    switch (x.kind) {
      case Kind::atom: return false;
      case Kind::product:
      case Kind::wreath: return self(*x.left, self) || self(*x.right, self);
      case Kind::quotient:
      case Kind::subgroup_of: return self(*x.inner, self);
      case Kind::union_family: return true;
    }
    return false;
  };
  RkBound r{structural(e, structural), std::nullopt};
  if (!symbolic(e, symbolic)) r.exact = Ordinal();
  return r;
}

// w * (rk_bound + 1), the decomposition-rank bound transported through the
// construction-rank bound.
inline Ordinal xi_bound(const GroupExpr& e) {
  return Ordinal::omega() * (rk_bound(e).bound + Ordinal::finite(1));
}

}  // namespace chainrank
