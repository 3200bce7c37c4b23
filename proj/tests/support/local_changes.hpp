#pragma once

#include <array>
#include <random>

#include "rdp/algebra/mpoly.hpp"
#include "random_forms.hpp"

namespace rdp::testing {

/// Local coordinates x, y, z over GF(p^k).
struct Loc {
  const Field &F;
  MPoly x, y, z;
  explicit Loc(std::uint64_t p, unsigned k = 1)
      : F(Field::get(p, k)), x(MPoly::variable(F, 3, 0)), y(MPoly::variable(F, 3, 1)), z(MPoly::variable(F, 3, 2)) {}
  [[nodiscard]] auto c(std::int64_t n) const -> MPoly { return MPoly::constant(Fq::from_int(F, n), 3); }
  [[nodiscard]] auto k(const Fq &a) const -> MPoly { return MPoly::constant(a, 3); }
};

/// f(img0, img1, img2), truncated below degree N.
inline auto compose(const MPoly &f, const std::array<MPoly, 3> &img, unsigned N) -> MPoly {
  MPoly out(f.field(), 3);
  for (auto &[key, c] : f.terms()) {
    auto e = MPoly::exps(key);
    MPoly m = MPoly::constant(c, 3);
    for (unsigned i = 0; i < 3; ++i) m = (m * img[i].pow(e[i])).truncated(N);
    out += m;
  }
  return out.truncated(N);
}

inline auto random_linear(const Loc &L, std::mt19937_64 &rng) -> std::array<MPoly, 3> {
  for (;;) {
    std::array<std::array<Fq, 3>, 3> M;
    for (auto &r : M)
      for (auto &v : r) v = random_elem(L.F, rng);
    const Fq det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                   M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                   M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    if (det.is_zero()) continue;
    std::array<MPoly, 3> img;
    for (unsigned i = 0; i < 3; ++i) img[i] = L.k(M[i][0]) * L.x + L.k(M[i][1]) * L.y + L.k(M[i][2]) * L.z;
    return img;
  }
}

// x -> x + h(y, z), y -> y + g(z), z -> z with h, g of order >= 2
inline auto random_triangular(const Loc &L, std::mt19937_64 &rng) -> std::array<MPoly, 3> {
  auto r = [&] { return L.k(random_elem(L.F, rng)); };
  MPoly h = r() * L.y * L.y + r() * L.y * L.z + r() * L.z * L.z + r() * L.y * L.z * L.z + r() * L.z.pow(3);
  MPoly g = r() * L.z * L.z + r() * L.z.pow(3);
  return {L.x + h, L.y + g, L.z};
}

} // namespace rdp::testing
