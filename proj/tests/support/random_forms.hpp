#pragma once

#include <random>

#include "rdp/weierstrass/weierstrass.hpp"

namespace rdp::testing {

inline auto random_elem(const Field &F, std::mt19937_64 &rng) -> Fq { return Fq(F, rng() % F.size()); }

inline auto random_unit(const Field &F, std::mt19937_64 &rng) -> Fq { return Fq(F, 1 + rng() % (F.size() - 1)); }

/// Random binary form of degree d; zero with probability 1/zero_odds.
inline auto random_form(const Field &F, int d, std::mt19937_64 &rng, unsigned zero_odds = 5) -> BiPoly {
  if (zero_odds && rng() % zero_odds == 0) return BiPoly(F);
  std::vector<Fq> c;
  for (int i = 0; i <= d; ++i) c.push_back(random_elem(F, rng));
  c.back() = random_unit(F, rng); // keep the degree exact
  return BiPoly(F, d, c);
}

inline auto random_equation(const Field &F, std::mt19937_64 &rng, std::array<bool, 5> allowed) -> WeierstrassEq {
  static constexpr std::array<int, 5> deg{1, 2, 3, 4, 6};
  std::array<BiPoly, 5> a{BiPoly(F), BiPoly(F), BiPoly(F), BiPoly(F), BiPoly(F)};
  for (std::size_t i = 0; i < 5; ++i)
    if (allowed[i]) a[i] = random_form(F, deg[i], rng);
  return WeierstrassEq(F, a[0], a[1], a[2], a[3], a[4]);
}

} // namespace rdp::testing
