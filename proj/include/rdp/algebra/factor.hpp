#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "rdp/algebra/poly.hpp"

namespace rdp {

struct Factorization {
  Fq unit;
  std::vector<std::pair<FPoly, int>> factors; // monic irreducible, sorted
};

namespace detail {

inline auto pth_root_poly(const FPoly &f) -> FPoly {
  const auto p = field_of(f).characteristic();
  std::vector<Fq> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
    c.push_back(f.coeff(static_cast<std::size_t>(i)).pth_root());
  return FPoly(std::move(c), f.zero_elem());
}

inline void squarefree_into(const FPoly &f, int mult,
                            std::vector<std::pair<FPoly, int>> &out) {
  if (f.degree() <= 0) return;
  const auto p = static_cast<int>(field_of(f).characteristic());
  FPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_into(pth_root_poly(f), mult * p, out);
    return;
  }
  FPoly c = gcd(f, d);
  FPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    FPoly y = gcd(w, c);
    FPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(monic(z), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_into(pth_root_poly(c), mult * p, out);
}

/// X^(q^n) mod f via repeated q-th powers.
inline auto frobenius_power(const FPoly &h, unsigned n, const FPoly &f) -> FPoly {
  const auto q = field_of(f).size();
  FPoly r = h;
  for (unsigned i = 0; i < n; ++i) r = powmod(r, q, f);
  return r;
}

inline auto random_poly(const Field &F, int deg, std::mt19937_64 &rng) -> FPoly {
  std::uniform_int_distribution<std::uint64_t> dist(0, F.size() - 1);
  std::vector<Fq> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(F, dist(rng));
  return FPoly(std::move(c), Fq::zero(F));
}

/// Split a squarefree monic f whose irreducible factors all have degree d.
inline void equal_degree_split(const FPoly &f, unsigned d, std::mt19937_64 &rng,
                               std::vector<FPoly> &out) {
  const int n = f.degree();
  if (n <= 0) return;
  if (static_cast<unsigned>(n) == d) {
    out.push_back(f);
    return;
  }
  const Field &F = field_of(f);
  const auto q = F.size();
  const auto p = F.characteristic();
  for (int attempt = 0; attempt < 400; ++attempt) {
    FPoly a = random_poly(F, n - 1, rng);
    if (a.degree() <= 0) continue;
    FPoly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
    FPoly b(Fq::zero(F));
    if (p == 2) {
      // absolute trace to GF(2): a + a^2 + ... + a^(2^(kd-1))
      const unsigned m = F.degree() * d;
      FPoly t = a % f, s = t;
      for (unsigned i = 1; i < m; ++i) {
        t = mulmod(t, t, f);
        s = s + t;
      }
      b = s;
    } else {
      // a^((q^d - 1)/2) = (a^(1+q+...+q^(d-1)))^((q-1)/2)
      FPoly norm = a % f, t = a % f;
      for (unsigned i = 1; i < d; ++i) {
        t = powmod(t, q, f);
        norm = mulmod(norm, t, f);
      }
      b = powmod(norm, (q - 1) / 2, f) - FPoly::constant(Fq::one(F));
    }
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
  throw Error("equal-degree splitting failed");
}

inline auto distinct_degree(FPoly f) -> std::vector<std::pair<FPoly, unsigned>> {
  std::vector<std::pair<FPoly, unsigned>> out;
  const Field &F = field_of(f);
  const FPoly x = FPoly::x(Fq::zero(F));
  FPoly h = x % f;
  unsigned d = 0;
  while (f.degree() >= 2 * static_cast<int>(d + 1)) {
    ++d;
    h = powmod(h, F.size(), f);
    FPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
  return out;
}

} // namespace detail

/// Complete factorization into monic irreducibles over the coefficient field.
inline auto factor_univariate(const FPoly &f) -> Factorization {
  if (f.is_zero()) throw Error("zero polynomial");
  Factorization out{f.lc(), {}};
  std::vector<std::pair<FPoly, int>> sqf;
  detail::squarefree_into(monic(f), 1, sqf);
  std::mt19937_64 rng(0x5eed1234u);
  for (auto &[g, m] : sqf) {
    for (auto &[part, d] : detail::distinct_degree(g)) {
      std::vector<FPoly> irr;
      detail::equal_degree_split(part, d, rng, irr);
      for (auto &h : irr) out.factors.emplace_back(monic(h), m);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto &a, const auto &b) {
    if (canonical_less(a.first, b.first)) return true;
    if (canonical_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  // merge repeated factors coming from different squarefree layers
  std::vector<std::pair<FPoly, int>> merged;
  for (auto &fm : out.factors) {
    if (!merged.empty() && merged.back().first == fm.first)
      merged.back().second += fm.second;
    else
      merged.push_back(fm);
  }
  out.factors = std::move(merged);
  return out;
}

inline auto is_irreducible(const FPoly &f) -> bool {
  if (f.degree() <= 0) return false;
  auto fac = factor_univariate(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

/// Distinct roots lying in the coefficient field, ascending by index.
inline auto roots_in_field(const FPoly &f) -> std::vector<Fq> {
  if (f.is_zero()) throw Error("zero polynomial");
  std::vector<Fq> out;
  if (f.degree() <= 0) return out;
  const Field &F = field_of(f);
  const FPoly x = FPoly::x(Fq::zero(F));
  FPoly m = monic(f);
  FPoly g = gcd(m, powmod(x, F.size(), m) - x);
  if (g.degree() <= 0) return out;
  std::mt19937_64 rng(0x900dbeefu);
  std::vector<FPoly> lin;
  detail::equal_degree_split(g, 1, rng, lin);
  for (auto &l : lin) out.push_back(-monic(l).coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace rdp
