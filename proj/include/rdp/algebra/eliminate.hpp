#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "rdp/algebra/resultant.hpp"
#include "rdp/algebra/tower.hpp"

namespace rdp {

/// One Galois orbit of solutions: a representative point with coordinates in
/// tower.top(), and the orbit size over the tower base.
struct AlgebraicPoint {
  FieldTower tower;
  std::vector<Fq> coords;
  unsigned orbit = 1;
};

struct EliminationResult {
  bool positive_dimensional = false;
  std::vector<AlgebraicPoint> points;
};

namespace detail {

inline auto lift_poly(const MPoly &f, const FieldTower &T) -> MPoly {
  if (&f.field() == &T.top()) return f;
  return f.map_coefficients([&](const Fq &c) { return T.lift(c); }, T.top());
}

inline auto drop_zeros(std::vector<MPoly> S) -> std::vector<MPoly> {
  std::vector<MPoly> out;
  for (auto &f : S)
    if (!f.is_zero()) out.push_back(std::move(f));
  // identical generators add nothing to the projection
  std::sort(out.begin(), out.end(), [](const MPoly &a, const MPoly &b) { return a.terms() < b.terms(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Solutions in variables 0..nv-1 of a system over T.top(). nullopt means the
// solution set is positive-dimensional.
inline auto solve(std::vector<MPoly> S, unsigned nv, const FieldTower &T)
    -> std::optional<std::vector<AlgebraicPoint>> {
  S = drop_zeros(std::move(S));
  for (auto &f : S)
    if (f.is_constant()) return std::vector<AlgebraicPoint>{};
  if (nv == 0) return std::vector<AlgebraicPoint>{{T, {}, T.relative_degree()}};
  if (S.empty()) return std::nullopt;

  const unsigned i = nv - 1;
  std::vector<MPoly> Q, R;
  for (auto &f : S) (f.involves(i) ? Q : R).push_back(f);

  std::optional<std::vector<AlgebraicPoint>> sub;
  if (Q.empty()) {
    sub = solve(R, nv - 1, T);
    if (sub && sub->empty()) return sub;
    return std::nullopt; // x_i is free over a nonempty base
  }
  {
    std::size_t piv = 0;
    for (std::size_t k = 1; k < Q.size(); ++k) {
      int dk = Q[k].degree_in(i), dp = Q[piv].degree_in(i);
      if (dk < dp || (dk == dp && Q[k].size() < Q[piv].size())) piv = k;
    }
    std::vector<MPoly> P = R;
    for (std::size_t k = 0; k < Q.size(); ++k)
      if (k != piv) P.push_back(resultant(Q[piv], Q[k], i));
    sub = solve(P, nv - 1, T);
  }
  if (!sub && Q.size() > 2) {
    std::vector<MPoly> P = R;
    for (std::size_t a = 0; a < Q.size(); ++a)
      for (std::size_t b = a + 1; b < Q.size(); ++b) P.push_back(resultant(Q[a], Q[b], i));
    sub = solve(P, nv - 1, T);
  }
  if (!sub) return std::nullopt;

  std::vector<AlgebraicPoint> out;
  for (auto &pt : *sub) {
    const Field &K = pt.tower.top();
    FPoly g(Fq::zero(K));
    bool any = false;
    for (auto &q : Q) {
      MPoly h = lift_poly(q, pt.tower);
      for (unsigned j = 0; j < i; ++j) h = h.substitute(j, pt.coords[j]);
      FPoly u = h.to_fpoly(i);
      g = any ? gcd(g, u) : u;
      any = true;
    }
    if (g.is_zero()) return std::nullopt;
    if (g.degree() <= 0) continue;
    for (auto &[h, mult] : factor_univariate(g).factors) {
      (void)mult;
      const auto d = static_cast<unsigned>(h.degree());
      FieldTower T2 = pt.tower.extended(d);
      FPoly hl = h.map([&](const Fq &c) { return T2.lift(c); }, Fq::zero(T2.top()));
      auto roots = roots_in_field(hl);
      if (roots.empty()) throw Error("factor has no root in its splitting level");
      AlgebraicPoint np{T2, {}, T2.relative_degree()};
      for (auto &c : pt.coords) np.coords.push_back(T2.lift(c));
      np.coords.push_back(roots.front());
      out.push_back(std::move(np));
    }
  }
  return out;
}

} // namespace detail

/// Common zeros over the algebraic closure of a system in the variables of
/// its polynomials, as Galois-orbit representatives. Variables are
/// eliminated from the last one down by resultants, then recovered by gcd,
/// factorization and tower extension.
inline auto eliminate(const std::vector<MPoly> &system) -> EliminationResult {
  if (system.empty()) throw Error("empty system");
  const Field &K = system.front().field();
  const unsigned nv = system.front().nvars();
  for (auto &f : system)
    if (&f.field() != &K || f.nvars() != nv) throw Error("polynomial ring mismatch");
  EliminationResult res;
  auto sol = detail::solve(system, nv, FieldTower(K));
  if (!sol) {
    res.positive_dimensional = true;
    return res;
  }
  for (auto &pt : *sol) {
    for (auto &f : system) {
      MPoly h = detail::lift_poly(f, pt.tower);
      if (!h.evaluate(pt.coords).is_zero()) throw Error("internal: eliminate produced a non-solution");
    }
  }
  res.points = std::move(*sol);
  return res;
}

} // namespace rdp
