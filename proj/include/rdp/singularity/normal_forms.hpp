#pragma once

#include <optional>
#include <vector>

#include "rdp/algebra/mpoly.hpp"
#include "rdp/lattice/ade.hpp"

namespace rdp {

/// A normal form in variables (x, y, z), as (coefficient, exponents) terms.
struct NormalForm {
  RdpClass cls;
  std::vector<std::pair<int, std::array<unsigned, 3>>> terms;
  std::optional<unsigned> m; // Tjurina dimension when tabulated

  [[nodiscard]] auto polynomial(const Field &F) const -> MPoly {
    MPoly f(F, 3);
    for (auto &[c, e] : terms) f += MPoly::monomial(Fq::from_int(F, c), 3, {e[0], e[1], e[2], 0});
    return f;
  }
};

namespace detail {

inline auto nf(Letter l, int rank, int k, std::vector<std::array<unsigned, 3>> monos, std::optional<unsigned> m)
    -> NormalForm {
  NormalForm n{{{l, rank}, k}, {}, m};
  for (auto &e : monos) n.terms.push_back({1, e});
  return n;
}

} // namespace detail

/// Artin's non-taut normal forms with their deformation dimensions m, for
/// every class of rank <= 8 in characteristic p (empty unless p is 2, 3 or 5).
inline auto non_taut_forms(std::uint64_t p) -> std::vector<NormalForm> {
  using detail::nf;
  using L = Letter;
  std::vector<NormalForm> v;
  const std::array<unsigned, 3> z2{0, 0, 2}, x3{3, 0, 0};
  if (p == 5) {
    v.push_back(nf(L::E, 8, 0, {z2, x3, {0, 5, 0}}, 10));
    v.push_back(nf(L::E, 8, 1, {z2, x3, {0, 5, 0}, {1, 4, 0}}, 8));
  } else if (p == 3) {
    v.push_back(nf(L::E, 6, 0, {z2, x3, {0, 4, 0}}, 9));
    v.push_back(nf(L::E, 6, 1, {z2, x3, {0, 4, 0}, {2, 2, 0}}, 7));
    v.push_back(nf(L::E, 7, 0, {z2, x3, {1, 3, 0}}, 9));
    v.push_back(nf(L::E, 7, 1, {z2, x3, {1, 3, 0}, {2, 2, 0}}, 7));
    v.push_back(nf(L::E, 8, 0, {z2, x3, {0, 5, 0}}, 12));
    v.push_back(nf(L::E, 8, 1, {z2, x3, {0, 5, 0}, {2, 3, 0}}, 10));
    v.push_back(nf(L::E, 8, 2, {z2, x3, {0, 5, 0}, {2, 2, 0}}, 8));
  } else if (p == 2) {
    // D_{2n}^r: z^2 + x^2 y + x y^n + x y^(n-r) z, m = 4n - 2r
    // D_{2n+1}^r: z^2 + x^2 y + y^n z + x y^(n-r) z, m = 4n - 2r
    for (unsigned n = 2; 2 * n <= 8; ++n)
      for (unsigned r = 0; r <= n - 1; ++r) {
        std::vector<std::array<unsigned, 3>> even{z2, {2, 1, 0}, {1, n, 0}};
        if (r > 0) even.push_back({1, n - r, 1});
        v.push_back(nf(L::D, static_cast<int>(2 * n), static_cast<int>(r), even, 4 * n - 2 * r));
        if (2 * n + 1 > 8) continue;
        std::vector<std::array<unsigned, 3>> odd{z2, {2, 1, 0}, {0, n, 1}};
        if (r > 0) odd.push_back({1, n - r, 1});
        v.push_back(nf(L::D, static_cast<int>(2 * n + 1), static_cast<int>(r), odd, 4 * n - 2 * r));
      }
    v.push_back(nf(L::E, 6, 0, {z2, x3, {0, 2, 1}}, 8));
    v.push_back(nf(L::E, 6, 1, {z2, x3, {0, 2, 1}, {1, 1, 1}}, 6));
    v.push_back(nf(L::E, 7, 0, {z2, x3, {1, 3, 0}}, 14));
    v.push_back(nf(L::E, 7, 1, {z2, x3, {1, 3, 0}, {2, 1, 1}}, 12));
    v.push_back(nf(L::E, 7, 2, {z2, x3, {1, 3, 0}, {0, 3, 1}}, 10));
    v.push_back(nf(L::E, 7, 3, {z2, x3, {1, 3, 0}, {1, 1, 1}}, 8));
    v.push_back(nf(L::E, 8, 0, {z2, x3, {0, 5, 0}}, 16));
    v.push_back(nf(L::E, 8, 1, {z2, x3, {0, 5, 0}, {1, 3, 1}}, 14));
    v.push_back(nf(L::E, 8, 2, {z2, x3, {0, 5, 0}, {1, 2, 1}}, 12));
    v.push_back(nf(L::E, 8, 3, {z2, x3, {0, 5, 0}, {0, 3, 1}}, 10));
    v.push_back(nf(L::E, 8, 4, {z2, x3, {0, 5, 0}, {1, 1, 1}}, 8));
  }
  return v;
}

/// Normal forms of the taut classes of rank <= 8 in characteristic p:
/// A_n as xy + z^(n+1); D_n as z^2 + x^2 y + y^(n-1); E_6, E_7, E_8 as
/// z^2 + x^3 + y^4, z^2 + x^3 + x y^3, z^2 + x^3 + y^5.
inline auto taut_forms(std::uint64_t p) -> std::vector<NormalForm> {
  using detail::nf;
  using L = Letter;
  std::vector<NormalForm> v;
  for (unsigned n = 1; n <= 8; ++n) v.push_back(nf(L::A, static_cast<int>(n), 0, {{1, 1, 0}, {0, 0, n + 1}}, {}));
  const std::array<unsigned, 3> z2{0, 0, 2}, x3{3, 0, 0};
  for (unsigned n = 4; n <= 8; ++n)
    if (is_taut({L::D, static_cast<int>(n)}, p)) v.push_back(nf(L::D, static_cast<int>(n), 0, {z2, {2, 1, 0}, {0, n - 1, 0}}, {}));
  if (is_taut({L::E, 6}, p)) v.push_back(nf(L::E, 6, 0, {z2, x3, {0, 4, 0}}, {}));
  if (is_taut({L::E, 7}, p)) v.push_back(nf(L::E, 7, 0, {z2, x3, {1, 3, 0}}, {}));
  if (is_taut({L::E, 8}, p)) v.push_back(nf(L::E, 8, 0, {z2, x3, {0, 5, 0}}, {}));
  return v;
}

/// Coindex of a non-taut type with deformation dimension m, from the table.
inline auto coindex_from_m(const AdeComponent &type, unsigned m, std::uint64_t p) -> std::optional<int> {
  for (auto &n : non_taut_forms(p))
    if (n.cls.type == type && n.m == m) return n.cls.coindex;
  return std::nullopt;
}

} // namespace rdp
