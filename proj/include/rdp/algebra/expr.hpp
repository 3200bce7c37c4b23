#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "rdp/algebra/biform.hpp"
#include "rdp/algebra/mpoly.hpp"

namespace rdp {

/// Monomial in named symbols, exponents > 0.
using SymMono = std::map<std::string, unsigned>;

/// Polynomial with integer coefficients in named symbols. Used for table
/// expressions with free parameters and for user input before reduction.
class SymPoly {
public:
  SymPoly() = default;
  static auto constant(std::int64_t c) -> SymPoly {
    SymPoly r;
    if (c) r.terms_[{}] = c;
    return r;
  }
  static auto symbol(const std::string &name) -> SymPoly {
    SymPoly r;
    r.terms_[{{name, 1}}] = 1;
    return r;
  }

  [[nodiscard]] auto terms() const -> const std::map<SymMono, std::int64_t> & { return terms_; }
  [[nodiscard]] auto is_zero() const -> bool { return terms_.empty(); }

  friend auto operator+(SymPoly a, const SymPoly &b) -> SymPoly {
    for (auto &[m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend auto operator-(SymPoly a, const SymPoly &b) -> SymPoly {
    for (auto &[m, c] : b.terms_) a.add(m, checked_mul(c, -1));
    return a;
  }
  friend auto operator*(const SymPoly &a, const SymPoly &b) -> SymPoly {
    SymPoly r;
    for (auto &[ma, ca] : a.terms_)
      for (auto &[mb, cb] : b.terms_) {
        SymMono m = ma;
        for (auto &[v, e] : mb) m[v] += e;
        r.add(m, checked_mul(ca, cb));
      }
    return r;
  }
  friend auto operator==(const SymPoly &, const SymPoly &) -> bool = default;

  [[nodiscard]] auto pow(unsigned e) const -> SymPoly {
    SymPoly r = constant(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  [[nodiscard]] auto symbols() const -> std::set<std::string> {
    std::set<std::string> out;
    for (auto &[m, c] : terms_)
      for (auto &[v, e] : m) out.insert(v);
    return out;
  }

  /// Exponent of `v` in every term must be the key; returns the coefficient
  /// polynomials, i.e. the expansion in powers of v.
  [[nodiscard]] auto split(const std::string &v) const -> std::map<unsigned, SymPoly> {
    std::map<unsigned, SymPoly> out;
    for (auto &[m, c] : terms_) {
      SymMono rest = m;
      unsigned e = 0;
      if (auto it = rest.find(v); it != rest.end()) {
        e = it->second;
        rest.erase(it);
      }
      out[e].add(rest, c);
    }
    return out;
  }

  static auto mono_string(const SymMono &m) -> std::string {
    std::string out;
    for (auto &[v, e] : m) {
      if (!out.empty()) out += "*";
      out += v;
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }
  static auto term_string(const SymMono &m, std::int64_t c) -> std::string {
    if (m.empty()) return std::to_string(c);
    if (c == 1) return mono_string(m);
    if (c == -1) return "-" + mono_string(m);
    return std::to_string(c) + "*" + mono_string(m);
  }
  [[nodiscard]] auto to_string() const -> std::string {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto &[m, c] : terms_) {
      std::string t = term_string(m, c);
      if (out.empty()) out = t;
      else if (t[0] == '-') out += " - " + t.substr(1);
      else out += " + " + t;
    }
    return out;
  }

private:
  static auto checked_mul(std::int64_t a, std::int64_t b) -> std::int64_t {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer coefficient overflow");
    return r;
  }
  void add(const SymMono &m, std::int64_t c) {
    std::int64_t &slot = terms_[m];
    if (__builtin_add_overflow(slot, c, &slot)) throw Error("integer coefficient overflow");
    if (slot == 0) terms_.erase(m);
  }

  std::map<SymMono, std::int64_t> terms_;
};

namespace detail {

// expr   := ["+"|"-"] term (("+"|"-") term)*
// term   := factor (["*"] factor)*
// factor := primary ["^" integer]
// primary:= integer | symbol | "(" expr ")"
// Symbols are one letter followed by digits or underscores ("t", "a65");
// the word "Delta" is a single symbol. Letters juxtapose: "ts" is t*s.
class ExprParser {
public:
  ExprParser(std::string text, std::function<bool(const std::string &)> allowed)
      : s_(std::move(text)), allowed_(std::move(allowed)) {}

  auto parse_all() -> SymPoly {
    SymPoly r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }
  auto expr() -> SymPoly {
    skip();
    bool neg = false;
    if (peek('+') || peek('-')) neg = s_[i_++] == '-';
    SymPoly r = term();
    if (neg) r = SymPoly() - r;
    for (;;) {
      skip();
      if (peek('+')) {
        ++i_;
        r = r + term();
      } else if (peek('-')) {
        ++i_;
        r = r - term();
      } else {
        return r;
      }
    }
  }
  [[nodiscard]] auto position() const -> std::size_t { return i_; }
  void seek(std::size_t i) { i_ = i; }
  [[nodiscard]] auto at_end() -> bool {
    skip();
    return i_ == s_.size();
  }
  auto accept(char c) -> bool {
    skip();
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  [[noreturn]] void fail(const std::string &why) const {
    throw Error("parse error at position " + std::to_string(i_ + 1) + ": " + why);
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[nodiscard]] auto peek(char c) const -> bool { return i_ < s_.size() && s_[i_] == c; }
  [[nodiscard]] auto starts_primary() -> bool {
    skip();
    return i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '(');
  }
  auto term() -> SymPoly {
    SymPoly r = factor();
    for (;;) {
      skip();
      if (peek('*')) {
        ++i_;
        r = r * factor();
      } else if (starts_primary()) {
        r = r * factor();
      } else {
        return r;
      }
    }
  }
  auto factor() -> SymPoly {
    SymPoly b = primary();
    skip();
    if (!peek('^')) return b;
    ++i_;
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected an exponent");
    return b.pow(static_cast<unsigned>(integer()));
  }
  auto integer() -> std::int64_t {
    std::int64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s_[i_] - '0', &v))
        fail("integer too large");
      ++i_;
    }
    return v;
  }
  auto primary() -> SymPoly {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) return SymPoly::constant(integer());
    if (c == '(') {
      ++i_;
      SymPoly r = expr();
      skip();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return r;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = i_;
      std::string name;
      if (s_.compare(i_, 5, "Delta") == 0) {
        name = "Delta";
        i_ += 5;
      } else {
        name = std::string(1, c);
        ++i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
          if (s_[i_] != '_') name += s_[i_];
          ++i_;
        }
      }
      if (!allowed_(name)) {
        i_ = start;
        fail("unknown symbol '" + name + "'");
      }
      return SymPoly::symbol(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::function<bool(const std::string &)> allowed_;
  std::size_t i_ = 0;
};

} // namespace detail

inline auto parse_expression(const std::string &text, const std::function<bool(const std::string &)> &allowed)
    -> SymPoly {
  detail::ExprParser P(text, allowed);
  return P.parse_all();
}

/// Substitutes every symbol from `env`; t and s are the form variables.
/// Any other symbol is an error.
inline auto eval_form(const SymPoly &f, const Field &F, const std::map<std::string, BiPoly> &env) -> BiPoly {
  BiPoly out(F);
  for (auto &[m, c] : f.terms()) {
    BiPoly term = BiPoly::constant(Fq::from_int(F, c));
    for (auto &[v, e] : m) {
      if (v == "t") term *= BiPoly::t(F).pow(e);
      else if (v == "s") term *= BiPoly::s(F).pow(e);
      else if (auto it = env.find(v); it != env.end()) term *= it->second.pow(e);
      else throw Error("unbound symbol '" + v + "'");
    }
    out += term;
  }
  return out;
}

/// Generator of F over its prime field, the symbol "a" in printed elements.
inline auto field_generator(const Field &F) -> Fq { return Fq(F, F.characteristic()); }

/// Polynomial in x, y, z (and the generator "a" of a non-prime field).
inline auto parse_local_polynomial(const std::string &text, const Field &F) -> MPoly {
  const SymPoly f = parse_expression(
      text, [&](const std::string &v) { return v == "x" || v == "y" || v == "z" || (v == "a" && F.degree() > 1); });
  MPoly out(F, 3);
  for (auto &[m, c] : f.terms()) {
    Fq k = Fq::from_int(F, c);
    std::array<unsigned, 4> e{0, 0, 0, 0};
    for (auto &[v, n] : m) {
      if (v == "a") k = k * field_generator(F).pow(n);
      else e[static_cast<std::size_t>(v[0] - 'x')] = n;
    }
    out += MPoly::monomial(k, 3, e);
  }
  return out;
}

} // namespace rdp
