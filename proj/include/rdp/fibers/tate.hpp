#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rdp/algebra/eliminate.hpp"
#include "rdp/algebra/factor.hpp"
#include "rdp/lattice/ade.hpp"
#include "rdp/weierstrass/weierstrass.hpp"

namespace rdp {

/// A closed point of P^1 where the discriminant vanishes, with one
/// representative root. Finite places t = root * s are studied in the chart
/// s = 1 with uniformizer T = t - root; the place [s] in the chart t = 1
/// with uniformizer T = s.
struct Place {
  BiPoly form;
  unsigned degree = 1;
  int v_delta = 0;
  bool at_infinity = false;
  FieldTower tower{Field::get(2)};
  Fq root; // in tower.top(); zero for [s]

  [[nodiscard]] auto name() const -> std::string { return "[" + form.to_string() + "]"; }
};

/// Places of a nonzero discriminant, [s] last.
inline auto places_of_discriminant(const SurfaceInvariants &inv) -> std::vector<Place> {
  if (inv.delta.is_zero()) throw Error("quasi-elliptic or invalid");
  std::vector<Place> out;
  for (auto &f : factor_binary_form(inv.delta)) {
    Place pl;
    pl.form = f.form;
    pl.degree = f.degree;
    pl.v_delta = f.multiplicity;
    pl.at_infinity = f.at_infinity;
    pl.tower = f.tower;
    pl.root = f.at_infinity ? Fq::zero(f.tower.top()) : f.roots.front();
    out.push_back(std::move(pl));
  }
  return out;
}

struct KodairaType {
  enum class Symbol { I0, In, II, III, IV, InStar, IVStar, IIIStar, IIStar };
  Symbol symbol = Symbol::I0;
  int n = 0; // for In (n >= 1) and In* (n >= 0)

  friend auto operator==(const KodairaType &, const KodairaType &) -> bool = default;

  [[nodiscard]] auto to_string() const -> std::string {
    switch (symbol) {
    case Symbol::I0: return "I0";
    case Symbol::In: return "I" + std::to_string(n);
    case Symbol::II: return "II";
    case Symbol::III: return "III";
    case Symbol::IV: return "IV";
    case Symbol::InStar: return "I" + std::to_string(n) + "*";
    case Symbol::IVStar: return "IV*";
    case Symbol::IIIStar: return "III*";
    case Symbol::IIStar: return "II*";
    }
    return "";
  }

  [[nodiscard]] auto components() const -> int {
    switch (symbol) {
    case Symbol::I0: return 1;
    case Symbol::In: return n;
    case Symbol::II: return 1;
    case Symbol::III: return 2;
    case Symbol::IV: return 3;
    case Symbol::InStar: return n + 5;
    case Symbol::IVStar: return 7;
    case Symbol::IIIStar: return 8;
    case Symbol::IIStar: return 9;
    }
    return 0;
  }

  /// Root lattice spanned by the components missing the zero section.
  [[nodiscard]] auto rdp() const -> std::optional<AdeComponent> {
    switch (symbol) {
    case Symbol::I0:
    case Symbol::II: return std::nullopt;
    case Symbol::In: return n >= 2 ? std::optional<AdeComponent>({Letter::A, n - 1}) : std::nullopt;
    case Symbol::III: return AdeComponent{Letter::A, 1};
    case Symbol::IV: return AdeComponent{Letter::A, 2};
    case Symbol::InStar: return AdeComponent{Letter::D, n + 4};
    case Symbol::IVStar: return AdeComponent{Letter::E, 6};
    case Symbol::IIIStar: return AdeComponent{Letter::E, 7};
    case Symbol::IIStar: return AdeComponent{Letter::E, 8};
    }
    return std::nullopt;
  }
};

namespace detail {

/// Weierstrass coefficients over the local ring L[T] at a place.
struct LocalModel {
  const Field *L = nullptr;
  std::array<FPoly, 7> a; // a[1], a[2], a[3], a[4], a[6]; others unused

  [[nodiscard]] auto c(std::int64_t n) const -> Fq { return Fq::from_int(*L, n); }
  [[nodiscard]] auto zero() const -> FPoly { return FPoly(Fq::zero(*L)); }

  [[nodiscard]] auto b2() const -> FPoly { return a[1] * a[1] + c(4) * a[2]; }
  [[nodiscard]] auto b4() const -> FPoly { return c(2) * a[4] + a[1] * a[3]; }
  [[nodiscard]] auto b6() const -> FPoly { return a[3] * a[3] + c(4) * a[6]; }
  [[nodiscard]] auto b8() const -> FPoly {
    return a[1] * a[1] * a[6] + c(4) * a[2] * a[6] - a[1] * a[3] * a[4] + a[2] * a[3] * a[3] - a[4] * a[4];
  }
  [[nodiscard]] auto delta() const -> FPoly {
    const FPoly B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - c(8) * B4 * B4 * B4 - c(27) * B6 * B6 + c(9) * B2 * B4 * B6;
  }

  /// x = x' + r, y = y' + s x' + t.
  void rst(const FPoly &r, const FPoly &s, const FPoly &t) {
    const auto A1 = a[1], A2 = a[2], A3 = a[3], A4 = a[4], A6 = a[6];
    a[1] = A1 + c(2) * s;
    a[2] = A2 - s * A1 + c(3) * r - s * s;
    a[3] = A3 + r * A1 + c(2) * t;
    a[4] = A4 - s * A3 + c(2) * r * A2 - (t + r * s) * A1 + c(3) * r * r - c(2) * s * t;
    a[6] = A6 + r * A4 + r * r * A2 + r * r * r - t * A3 - t * t - r * t * A1;
  }
};

inline auto val(const FPoly &f) -> int { return f.is_zero() ? 1 << 20 : f.valuation(); }

/// f / T^k, exact.
inline auto div_t(const FPoly &f, int k) -> FPoly {
  if (f.is_zero()) return f;
  if (val(f) < k) throw Error("internal: inexact division by the uniformizer");
  std::vector<Fq> c(f.coeffs().begin() + k, f.coeffs().end());
  return FPoly(std::move(c), f.zero_elem());
}

/// Residue of f / T^k.
inline auto res(const FPoly &f, int k) -> Fq {
  if (!f.is_zero() && val(f) < k) throw Error("internal: inexact division by the uniformizer");
  return f.coeff(static_cast<std::size_t>(k));
}

inline auto cst(const Fq &x) -> FPoly { return FPoly::constant(x); }
inline auto mono(const Fq &x, int k) -> FPoly { return FPoly::monomial(x, static_cast<std::size_t>(k)); }

/// The unique square root in a finite field of characteristic 2.
inline auto sqrt2(const Fq &x) -> Fq { return x.pow(x.field().size() / 2); }

/// Double root of c2 X^2 + c1 X + c0 (c2 != 0) over the residue field, or
/// nullopt when the roots are distinct.
inline auto double_root(const Fq &c2, const Fq &c1, const Fq &c0) -> std::optional<Fq> {
  const Field &F = c2.field();
  if (F.characteristic() == 2) {
    if (!c1.is_zero()) return std::nullopt;
    return sqrt2(c0 / c2);
  }
  if (!(c1 * c1 - Fq::from_int(F, 4) * c2 * c0).is_zero()) return std::nullopt;
  return -c1 / (Fq::from_int(F, 2) * c2);
}

/// Taylor expansion of f at t = alpha, as a polynomial in T = t - alpha.
inline auto expand_at(const FPoly &f, const Fq &alpha) -> FPoly {
  const FPoly lin({alpha, Fq::one(alpha.field())}, Fq::zero(alpha.field()));
  FPoly acc(Fq::zero(alpha.field()));
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * lin + cst(f.coeffs()[i]);
  return acc;
}

inline auto localize(const WeierstrassEq &e, const Place &pl) -> LocalModel {
  LocalModel M;
  M.L = &pl.tower.top();
  for (int i : {1, 2, 3, 4, 6}) {
    const BiPoly &ai = e.a(i);
    FPoly u = ai.is_zero() ? FPoly(Fq::zero(e.field())) : (pl.at_infinity ? ai.at_t1() : ai.at_s1());
    FPoly lifted = u.map([&](const Fq &x) { return pl.tower.lift(x); }, Fq::zero(*M.L));
    M.a[static_cast<std::size_t>(i)] = pl.at_infinity ? lifted : expand_at(lifted, pl.root);
  }
  return M;
}

/// Move the singular point of the reduced cubic to (0, 0).
inline void translate_singular_point(LocalModel &M) {
  const Field &L = *M.L;
  std::array<Fq, 7> r{};
  for (int i : {1, 2, 3, 4, 6}) r[static_cast<std::size_t>(i)] = res(M.a[static_cast<std::size_t>(i)], 0);
  auto cst2 = [&](const Fq &c) { return MPoly::constant(c, 2); };
  const MPoly x = MPoly::variable(L, 2, 0), y = MPoly::variable(L, 2, 1);
  const MPoly F = y * y + cst2(r[1]) * x * y + cst2(r[3]) * y - x * x * x - cst2(r[2]) * x * x - cst2(r[4]) * x - cst2(r[6]);
  auto sol = eliminate({F, F.derivative(0), F.derivative(1)});
  if (sol.positive_dimensional || sol.points.size() != 1 || sol.points[0].orbit != 1 ||
      sol.points[0].tower.height() != 1)
    throw Error("internal: reduced cubic has no unique rational singular point");
  const auto &pt = sol.points[0].coords;
  M.rst(cst(pt[0]), M.zero(), cst(pt[1]));
}

} // namespace detail

struct FiberResult {
  Place place;
  KodairaType type;
  int components = 1;
  int v_delta = 0;
};

/// Kodaira type of the fiber at a place, by Tate's algorithm over L[T].
inline auto tate_classify(const WeierstrassEq &e, const Place &pl) -> FiberResult {
  using S = KodairaType::Symbol;
  using namespace detail;
  LocalModel M = localize(e, pl);
  const Field &L = *M.L;
  const bool two = L.characteristic() == 2;
  const Fq one = Fq::one(L);
  FiberResult out;
  out.place = pl;
  auto done = [&](S s, int n = 0) {
    out.type = {s, n};
    out.components = out.type.components();
    return out;
  };

  for (int restart = 0; restart <= 5; ++restart) {
    if (restart == 5) throw Error("not a rational elliptic surface");
    const int vd = val(M.delta());
    out.v_delta = vd;
    if (vd == 0) return done(S::I0);
    translate_singular_point(M);
    if (val(M.b2()) == 0) return done(S::In, vd);
    if (val(M.a[6]) < 2) return done(S::II);
    if (val(M.b8()) < 3) return done(S::III);
    if (val(M.b6()) < 3) return done(S::IV);

    // now arrange T | a1, a2; T^2 | a3, a4; T^3 | a6
    if (two) {
      M.rst(M.zero(), cst(sqrt2(res(M.a[2], 0))), M.zero());
      M.rst(M.zero(), M.zero(), mono(sqrt2(res(M.a[6], 2)), 1));
    } else {
      const Fq half = one / Fq::from_int(L, 2);
      M.rst(M.zero(), -(half * M.a[1]), -(half * M.a[3]));
    }
    if (val(M.a[1]) < 1 || val(M.a[2]) < 1 || val(M.a[3]) < 2 || val(M.a[4]) < 2 || val(M.a[6]) < 3)
      throw Error("internal: Tate normalization failed");

    // P(X) = X^3 + a21 X^2 + a42 X + a63
    const FPoly P({res(M.a[6], 3), res(M.a[4], 2), res(M.a[2], 1), one}, Fq::zero(L));
    int maxmult = 1;
    std::optional<Fq> multiple;
    for (auto &[h, m] : factor_univariate(P).factors)
      if (m > 1) {
        maxmult = m;
        multiple = -h.coeff(0); // h is monic linear
      }
    if (maxmult == 1) return done(S::InStar, 0);

    if (maxmult == 2) {
      M.rst(mono(*multiple, 1), M.zero(), M.zero());
      // I_m^* loop; u, w are the exponents of the y and x scalings
      int m = 1, u = 2, w = 2;
      const Fq a21 = res(M.a[2], 1);
      for (int guard = 0; guard < 16; ++guard) {
        // Y^2 + a3,u Y - a6,(u+w)
        auto yr = double_root(one, res(M.a[3], u), -res(M.a[6], u + w));
        if (!yr) return done(S::InStar, m);
        M.rst(M.zero(), M.zero(), mono(*yr, u));
        ++m;
        ++u;
        // a21 X^2 + a4,(w+1) X + a6,(u+w)
        auto xr = double_root(a21, res(M.a[4], w + 1), res(M.a[6], u + w));
        if (!xr) return done(S::InStar, m);
        M.rst(mono(*xr, w), M.zero(), M.zero());
        ++m;
        ++w;
      }
      throw Error("internal: I_n* loop did not terminate");
    }

    // triple root
    M.rst(mono(*multiple, 1), M.zero(), M.zero());
    auto yr = double_root(one, res(M.a[3], 2), -res(M.a[6], 4));
    if (!yr) return done(S::IVStar);
    M.rst(M.zero(), M.zero(), mono(*yr, 2));
    if (val(M.a[4]) < 4) return done(S::IIIStar);
    if (val(M.a[6]) < 6) return done(S::IIStar);
    // non-minimal: (x, y) -> (T^2 x, T^3 y)
    for (int i : {1, 2, 3, 4, 6}) M.a[static_cast<std::size_t>(i)] = div_t(M.a[static_cast<std::size_t>(i)], i);
  }
  throw Error("not a rational elliptic surface");
}

struct FiberConfiguration {
  std::vector<FiberResult> fibers; // one per place; a place of degree d stands for d fibers
  AdeType gamma;
  int mw_rank = 0;
  int total_v_delta = 0;
};

inline auto fiber_configuration(const WeierstrassEq &e) -> FiberConfiguration {
  const auto inv = compute_invariants(e);
  FiberConfiguration C;
  std::vector<AdeComponent> comps;
  for (auto &pl : places_of_discriminant(inv)) {
    auto r = tate_classify(e, pl);
    if (r.v_delta != pl.v_delta) throw Error("Weierstrass model is not minimal at " + pl.name());
    C.total_v_delta += r.v_delta * static_cast<int>(pl.degree);
    if (auto t = r.type.rdp())
      for (unsigned k = 0; k < pl.degree; ++k) comps.push_back(*t);
    C.fibers.push_back(std::move(r));
  }
  C.gamma = AdeType(std::move(comps));
  C.mw_rank = 8 - C.gamma.rank();
  return C;
}

} // namespace rdp
