#pragma once

#include <array>
#include <set>
#include <string>

#include "rdp/algebra/expr.hpp"
#include "rdp/weierstrass/weierstrass.hpp"

namespace rdp {

/// Weierstrass equation whose coefficients a1, a2, a3, a4, a6 are forms in
/// t, s with coefficients polynomial in named parameters.
struct SymEquation {
  std::uint64_t p = 0;
  std::array<SymPoly, 5> a;

  [[nodiscard]] auto parameters() const -> std::set<std::string> {
    std::set<std::string> out;
    for (auto &c : a)
      for (auto &v : c.symbols())
        if (v != "t" && v != "s") out.insert(v);
    return out;
  }

  /// Every parameter must be bound; "a" is the generator of F if used.
  [[nodiscard]] auto instantiate(const Field &F, const std::map<std::string, Fq> &values) const -> WeierstrassEq {
    if (F.characteristic() != p) throw Error("field of the wrong characteristic");
    std::map<std::string, BiPoly> env;
    for (auto &[k, v] : values) env.emplace(k, BiPoly::constant(v));
    if (F.degree() > 1 && !env.count("a")) env.emplace("a", BiPoly::constant(field_generator(F)));
    std::array<BiPoly, 5> c;
    for (std::size_t i = 0; i < 5; ++i) c[i] = eval_form(a[i], F, env);
    return {F, c[0], c[1], c[2], c[3], c[4]};
  }
};

namespace detail {

inline auto zero_mod(const SymPoly &f, std::uint64_t p) -> bool {
  const auto P = static_cast<std::int64_t>(p);
  for (auto &[m, c] : f.terms())
    if (c % P != 0) return false;
  return true;
}

inline auto is_constant_mod(const SymPoly &f, std::int64_t want, std::uint64_t p) -> bool {
  const auto P = static_cast<std::int64_t>(p);
  std::int64_t c = 0;
  for (auto &[m, k] : f.terms()) {
    if (!m.empty()) {
      if (k % P != 0) return false;
      continue;
    }
    c = k;
  }
  return ((c - want) % P + P) % P == 0;
}

// t, s weigh 1, x weighs 2, y weighs 3; parameters weigh 0.
inline void check_weights(const SymPoly &side) {
  for (auto &[m, c] : side.terms()) {
    unsigned w = 0;
    for (auto &[v, e] : m) {
      if (v == "t" || v == "s") w += e;
      else if (v == "x") w += 2 * e;
      else if (v == "y") w += 3 * e;
    }
    if (w != 6) {
      std::string term = SymPoly::term_string(m, c);
      if (term[0] == '-') term = term.substr(1);
      throw Error("inhomogeneous term " + term + " (weighted degree " + std::to_string(w) + " ≠ 6)");
    }
  }
}

} // namespace detail

/// Parses "lhs = rhs" into the shape y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
/// Integer coefficients are read modulo p.
inline auto parse_symbolic_equation(const std::string &text, std::uint64_t p, const std::set<std::string> &params,
                                    bool allow_generator = false) -> SymEquation {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw Error("parse error: expected '='");
  if (text.find('=', eq + 1) != std::string::npos)
    throw Error("parse error at position " + std::to_string(text.find('=', eq + 1) + 1) + ": unexpected '='");
  auto allowed = [&](const std::string &v) {
    return v == "t" || v == "s" || v == "x" || v == "y" || params.count(v) || (allow_generator && v == "a");
  };
  SymPoly lhs, rhs;
  lhs = parse_expression(text.substr(0, eq), allowed);
  try {
    rhs = parse_expression(text.substr(eq + 1), allowed);
  } catch (const Error &e) {
    // report positions in the full text
    const std::string w = e.what();
    const std::string tag = "parse error at position ";
    if (w.rfind(tag, 0) != 0) throw;
    const auto colon = w.find(':');
    const auto pos = std::stoul(w.substr(tag.size(), colon - tag.size())) + eq + 1;
    throw Error(tag + std::to_string(pos) + w.substr(colon));
  }
  detail::check_weights(lhs);
  detail::check_weights(rhs);

  const auto bad = [] { return Error("not a Weierstraß sextic"); };
  const SymPoly G = lhs - rhs;
  SymEquation out;
  out.p = p;
  for (auto &[ey, cy] : G.split("y")) {
    for (auto &[ex, c] : cy.split("x")) {
      if (detail::zero_mod(c, p)) continue;
      if (ey == 2 && ex == 0) {
        if (!detail::is_constant_mod(c, 1, p)) throw bad();
      } else if (ey == 1 && ex == 1) {
        out.a[0] = c;
      } else if (ey == 1 && ex == 0) {
        out.a[2] = c;
      } else if (ey == 0 && ex == 3) {
        if (!detail::is_constant_mod(c, -1, p)) throw bad();
      } else if (ey == 0 && ex <= 2) {
        out.a[ex == 2 ? 1 : (ex == 1 ? 3 : 4)] = SymPoly() - c;
      } else {
        throw bad();
      }
    }
  }
  auto has = [&](unsigned ey, unsigned ex) {
    auto Y = G.split("y");
    if (!Y.count(ey)) return false;
    auto X = Y.at(ey).split("x");
    return X.count(ex) && !detail::zero_mod(X.at(ex), p);
  };
  if (!has(2, 0) || !has(0, 3)) throw bad();
  return out;
}

/// Equation over F; integer coefficients are reduced mod p and, for a
/// non-prime field, "a" denotes the generator as in printed elements.
inline auto parse_equation(const std::string &text, const Field &F) -> WeierstrassEq {
  return parse_symbolic_equation(text, F.characteristic(), {}, F.degree() > 1).instantiate(F, {});
}

} // namespace rdp
