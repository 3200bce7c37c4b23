#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "rdp/algebra/biform.hpp"
#include "rdp/algebra/mpoly.hpp"

namespace rdp {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 in P(1,1,2,3), with a_i a
/// binary form of degree i (or zero).
class WeierstrassEq {
public:
  WeierstrassEq(const Field &F, BiPoly a1, BiPoly a2, BiPoly a3, BiPoly a4, BiPoly a6)
      : F_(&F), a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    static constexpr std::array<int, 5> deg{1, 2, 3, 4, 6};
    for (std::size_t i = 0; i < 5; ++i) {
      if (a_[i].is_zero()) {
        a_[i] = BiPoly(F);
        continue;
      }
      if (&a_[i].field() != &F) throw Error("field mismatch");
      if (a_[i].degree() != deg[i])
        throw Error("coefficient a" + std::to_string(deg[i]) + " must have degree " + std::to_string(deg[i]));
    }
  }
  explicit WeierstrassEq(const Field &F) : WeierstrassEq(F, BiPoly(F), BiPoly(F), BiPoly(F), BiPoly(F), BiPoly(F)) {}

  [[nodiscard]] auto field() const -> const Field & { return *F_; }
  [[nodiscard]] auto characteristic() const -> std::uint64_t { return F_->characteristic(); }
  [[nodiscard]] auto a1() const -> const BiPoly & { return a_[0]; }
  [[nodiscard]] auto a2() const -> const BiPoly & { return a_[1]; }
  [[nodiscard]] auto a3() const -> const BiPoly & { return a_[2]; }
  [[nodiscard]] auto a4() const -> const BiPoly & { return a_[3]; }
  [[nodiscard]] auto a6() const -> const BiPoly & { return a_[4]; }
  /// a_i for i in {1,2,3,4,6}.
  [[nodiscard]] auto a(int i) const -> const BiPoly & { return a_[slot(i)]; }

  [[nodiscard]] auto with(int i, BiPoly v) const -> WeierstrassEq {
    WeierstrassEq e = *this;
    e.a_[slot(i)] = std::move(v);
    return WeierstrassEq(*F_, e.a_[0], e.a_[1], e.a_[2], e.a_[3], e.a_[4]);
  }

  friend auto operator==(const WeierstrassEq &a, const WeierstrassEq &b) -> bool {
    return a.F_ == b.F_ && a.a_ == b.a_;
  }

  /// The affine equation F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
  /// in the chart s = 1 (variables t, x, y) or t = 1 (variables s, x, y).
  [[nodiscard]] auto chart_polynomial(bool t_chart) const -> MPoly {
    const Field &F = *F_;
    auto coef = [&](int i) {
      const BiPoly &c = a(i);
      FPoly u = t_chart ? c.at_t1() : c.at_s1();
      return MPoly::from_fpoly(u, 3, 0);
    };
    MPoly x = MPoly::variable(F, 3, 1), y = MPoly::variable(F, 3, 2);
    return y * y + coef(1) * x * y + coef(3) * y - x * x * x - coef(2) * x * x - coef(4) * x - coef(6);
  }

  /// Printed in the input grammar, e.g. "y^2 + t*x*y = x^3 + t^5*s".
  [[nodiscard]] auto to_string() const -> std::string {
    auto term = [](const BiPoly &c, const std::string &mono) -> std::string {
      std::string cs = c.to_string();
      const bool single = cs.find(" + ") == std::string::npos && cs.find(" - ") == std::string::npos;
      if (single && cs == "1") return mono;
      if (single && cs == "-1") return "-" + mono;
      return (single ? cs : "(" + cs + ")") + "*" + mono;
    };
    auto join = [](std::string acc, const std::string &t) {
      if (acc.empty()) return t;
      if (t[0] == '-') return acc + " - " + t.substr(1);
      return acc + " + " + t;
    };
    std::string lhs = "y^2";
    if (!a1().is_zero()) lhs = join(lhs, term(a1(), "x*y"));
    if (!a3().is_zero()) lhs = join(lhs, term(a3(), "y"));
    std::string rhs = "x^3";
    if (!a2().is_zero()) rhs = join(rhs, term(a2(), "x^2"));
    if (!a4().is_zero()) rhs = join(rhs, term(a4(), "x"));
    if (!a6().is_zero()) {
      std::string cs = a6().to_string();
      rhs = cs[0] == '-' ? rhs + " - " + cs.substr(1) : rhs + " + " + cs;
    }
    return lhs + " = " + rhs;
  }

private:
  static auto slot(int i) -> std::size_t {
    switch (i) {
    case 1: return 0;
    case 2: return 1;
    case 3: return 2;
    case 4: return 3;
    case 6: return 4;
    default: throw Error("no coefficient a" + std::to_string(i));
    }
  }

  const Field *F_;
  std::array<BiPoly, 5> a_;
};

inline auto operator<<(std::ostream &os, const WeierstrassEq &e) -> std::ostream & { return os << e.to_string(); }

// ---------------------------------------------------------------------------
// binary-form helpers

/// gcd of two nonzero forms, monic in the sense that its s-free part is monic in t.
inline auto form_gcd(const BiPoly &a, const BiPoly &b) -> BiPoly {
  const int e = std::min(a.s_valuation(), b.s_valuation());
  FPoly g = gcd(a.at_s1(), b.at_s1());
  return BiPoly::homogenize(g, g.degree() + e);
}

/// a / b for forms, exact division required.
inline auto form_divexact(const BiPoly &a, const BiPoly &b) -> BiPoly {
  if (b.is_zero()) throw Error("division by the zero form");
  if (a.is_zero()) return a;
  auto [q, r] = divrem(a.at_s1(), b.at_s1());
  const int d = a.degree() - b.degree();
  if (!r.is_zero() || d < 0 || q.degree() > d) throw Error("inexact form division");
  return BiPoly::homogenize(q, d);
}

/// A ratio of forms of equal degree, kept reduced; the first nonzero
/// coefficient of the denominator (highest power of t first) is 1.
struct FormRatio {
  BiPoly num, den;

  static auto make(BiPoly n, BiPoly d) -> FormRatio {
    if (d.is_zero()) throw Error("zero denominator");
    const Field &F = d.field();
    if (n.is_zero()) return {BiPoly(F), BiPoly::constant(Fq::one(F))};
    BiPoly g = form_gcd(n, d);
    n = form_divexact(n, g);
    d = form_divexact(d, g);
    Fq lead = Fq::zero(F);
    for (int i = d.degree(); i >= 0 && lead.is_zero(); --i) lead = d.coeff(i);
    const Fq u = lead.inv();
    return {u * n, u * d};
  }
  [[nodiscard]] auto is_zero() const -> bool { return num.is_zero(); }
  friend auto operator==(const FormRatio &a, const FormRatio &b) -> bool {
    return a.num * b.den == b.num * a.den;
  }
  [[nodiscard]] auto to_string() const -> std::string {
    if (num.is_zero()) return "0";
    auto wrap = [](const BiPoly &f) {
      std::string s = f.to_string();
      return s.find(' ') == std::string::npos ? s : "(" + s + ")";
    };
    if (den.degree() == 0) return num.to_string();
    return wrap(num) + "/" + wrap(den);
  }
};

struct SurfaceInvariants {
  BiPoly b2, b4, b6, b8, c4, delta;
  bool j_defined = false;
  FormRatio j; // c4^3 / delta, reduced; meaningful when j_defined

  [[nodiscard]] auto j_string() const -> std::string { return j_defined ? j.to_string() : "undefined"; }
};

/// b2, b4, b6, b8, c4, delta and j from the integral Weierstrass formulary.
/// The formulas have integer coefficients, so evaluating them with the
/// integers mapped into the field agrees with evaluation over Z followed by
/// reduction; no division occurs.
inline auto compute_invariants(const WeierstrassEq &e) -> SurfaceInvariants {
  const auto &a1 = e.a1(), &a2 = e.a2(), &a3 = e.a3(), &a4 = e.a4(), &a6 = e.a6();
  SurfaceInvariants I;
  I.b2 = a1 * a1 + a2.times_int(4);
  I.b4 = a4.times_int(2) + a1 * a3;
  I.b6 = a3 * a3 + a6.times_int(4);
  I.b8 = a1 * a1 * a6 + (a2 * a6).times_int(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  I.c4 = I.b2 * I.b2 - I.b4.times_int(24);
  I.delta = -(I.b2 * I.b2 * I.b8) - (I.b4 * I.b4 * I.b4).times_int(8) - (I.b6 * I.b6).times_int(27) +
            (I.b2 * I.b4 * I.b6).times_int(9);
  if (I.b8.times_int(4) != I.b2 * I.b6 - I.b4 * I.b4) throw Error("internal: Weierstrass syzygy violated");
  if (!I.delta.is_zero()) {
    if (I.delta.degree() != 12) throw Error("internal: discriminant degree is not 12");
    I.j_defined = true;
    I.j = FormRatio::make(I.c4 * I.c4 * I.c4, I.delta);
  }
  return I;
}

// ---------------------------------------------------------------------------
// substitutions

enum class SubstitutionKind { W0, W3, W2, W2prime, Mobius };

inline auto kind_name(SubstitutionKind k) -> std::string {
  switch (k) {
  case SubstitutionKind::W0: return "W0";
  case SubstitutionKind::W3: return "W3";
  case SubstitutionKind::W2: return "W2";
  case SubstitutionKind::W2prime: return "W2'";
  case SubstitutionKind::Mobius: return "Mobius";
  }
  return "";
}

/// Coordinate change over P^1 (or a Mobius transformation of (t,s)).
///   W0:  x -> l^2 x,     y -> l^3 y                   (p != 2,3)
///   W3:  x -> l^2 x + f, y -> l^3 y                   (p = 3, deg f = 2)
///   W2:  x -> l^2 x,     y -> l^3 y + f x + g         (p = 2, deg f = 1, deg g = 3)
///   W2': x -> l^2 x + f, y -> l^3 y + g x + h         (p = 2, degrees 2, 1, 3)
///   Mobius: (t, s) -> (m00 t + m01 s, m10 t + m11 s)
struct Substitution {
  SubstitutionKind kind = SubstitutionKind::W0;
  Fq lambda;
  BiPoly f, g, h;
  std::array<Fq, 4> m{};
};

namespace detail {

inline void require_form(const BiPoly &b, int d, const char *name) {
  if (!b.is_zero() && b.degree() != d)
    throw Error(std::string("substitution datum ") + name + " must have degree " + std::to_string(d));
}

inline void check_substitution(const WeierstrassEq &e, const Substitution &s) {
  const auto p = e.characteristic();
  auto mismatch = [] { throw Error("form mismatch"); };
  switch (s.kind) {
  case SubstitutionKind::W0:
    if (p == 2 || p == 3 || !e.a1().is_zero() || !e.a2().is_zero() || !e.a3().is_zero()) mismatch();
    break;
  case SubstitutionKind::W3:
    if (p != 3 || !e.a1().is_zero() || !e.a3().is_zero()) mismatch();
    require_form(s.f, 2, "f");
    break;
  case SubstitutionKind::W2:
    if (p != 2 || !e.a3().is_zero()) mismatch();
    require_form(s.f, 1, "f");
    require_form(s.g, 3, "g");
    break;
  case SubstitutionKind::W2prime:
    if (p != 2 || !e.a1().is_zero()) mismatch();
    require_form(s.f, 2, "f");
    require_form(s.g, 1, "g");
    require_form(s.h, 3, "h");
    break;
  case SubstitutionKind::Mobius:
    if ((s.m[0] * s.m[3] - s.m[1] * s.m[2]).is_zero()) throw Error("Mobius matrix is singular");
    return;
  }
  if (s.lambda.field_ptr() != &e.field() || s.lambda.is_zero()) throw Error("lambda must be a unit of the field");
}

inline auto zero_if_unset(const BiPoly &b, const Field &F) -> BiPoly {
  return b.field_ptr() ? b : BiPoly(F);
}

} // namespace detail

/// Apply an admissible substitution using the closed coefficient formulas.
inline auto apply_substitution(const WeierstrassEq &e, const Substitution &s) -> WeierstrassEq {
  detail::check_substitution(e, s);
  const Field &F = e.field();
  if (s.kind == SubstitutionKind::Mobius) {
    auto mo = [&](const BiPoly &b) { return b.mobius(s.m[0], s.m[1], s.m[2], s.m[3]); };
    return WeierstrassEq(F, mo(e.a1()), mo(e.a2()), mo(e.a3()), mo(e.a4()), mo(e.a6()));
  }
  const BiPoly f = detail::zero_if_unset(s.f, F), g = detail::zero_if_unset(s.g, F),
               h = detail::zero_if_unset(s.h, F);
  const Fq l = s.lambda, li = l.inv();
  const Fq l2 = l * l, l4 = l2 * l2;
  const Fq i1 = li, i2 = li.pow(2), i3 = li.pow(3), i4 = li.pow(4), i6 = li.pow(6);
  const auto &a1 = e.a1(), &a2 = e.a2(), &a3 = e.a3(), &a4 = e.a4(), &a6 = e.a6();
  switch (s.kind) {
  case SubstitutionKind::W0:
    return WeierstrassEq(F, BiPoly(F), BiPoly(F), BiPoly(F), i4 * a4, i6 * a6);
  case SubstitutionKind::W3:
    return WeierstrassEq(F, BiPoly(F), i2 * a2, BiPoly(F), i4 * (a4 + (a2 * f).times_int(2)),
                         i6 * (a6 + a4 * f + a2 * f * f + f * f * f));
  case SubstitutionKind::W2:
    return WeierstrassEq(F, i1 * a1, i6 * (l4 * a2 + l2 * (a1 * f) + f * f), BiPoly(F), i4 * (a4 + a1 * g),
                         i6 * (a6 + g * g));
  case SubstitutionKind::W2prime:
    return WeierstrassEq(F, BiPoly(F), i6 * (l4 * a2 + g * g + l4 * f), i3 * a3,
                         i6 * (l2 * a4 + a3 * g + l2 * (f * f)),
                         i6 * (a6 + a4 * f + a3 * h + a2 * f * f + f * f * f + h * h));
  case SubstitutionKind::Mobius: break;
  }
  throw Error("unreachable");
}

/// Independent route: substitute into the sextic itself, collect the
/// coefficient of every monomial x^i y^j, divide by lambda^6 and read the
/// result back. Throws if the outcome is not in Weierstrass shape.
inline auto expand_substitution(const WeierstrassEq &e, const Substitution &s) -> WeierstrassEq {
  detail::check_substitution(e, s);
  const Field &F = e.field();
  if (s.kind == SubstitutionKind::Mobius) {
    // coefficientwise composition with the linear map on (t,s)
    auto mo = [&](const BiPoly &b) {
      if (b.is_zero()) return b;
      BiPoly T = BiPoly::monomial(s.m[0], 1, 0) + BiPoly::monomial(s.m[1], 0, 1);
      BiPoly S = BiPoly::monomial(s.m[2], 1, 0) + BiPoly::monomial(s.m[3], 0, 1);
      BiPoly acc(F);
      for (int i = 0; i <= b.degree(); ++i)
        if (!b.coeff(i).is_zero())
          acc += b.coeff(i) * (T.pow(static_cast<unsigned>(i)) * S.pow(static_cast<unsigned>(b.degree() - i)));
      return acc;
    };
    return WeierstrassEq(F, mo(e.a1()), mo(e.a2()), mo(e.a3()), mo(e.a4()), mo(e.a6()));
  }
  // polynomials in x, y with binary-form coefficients
  using XY = std::map<std::pair<int, int>, BiPoly>;
  auto add = [&](XY a, const XY &b) {
    for (auto &[k, v] : b) {
      auto it = a.find(k);
      if (it == a.end()) a.emplace(k, v);
      else it->second += v;
    }
    return a;
  };
  auto mul = [&](const XY &a, const XY &b) {
    XY r;
    for (auto &[ka, va] : a)
      for (auto &[kb, vb] : b) r = add(r, XY{{{ka.first + kb.first, ka.second + kb.second}, va * vb}});
    return r;
  };
  auto scal = [&](const BiPoly &c, const XY &a) {
    XY r;
    for (auto &[k, v] : a) r.emplace(k, c * v);
    return r;
  };
  auto cst = [&](const Fq &c) { return BiPoly::constant(c); };
  const BiPoly f = detail::zero_if_unset(s.f, F), g = detail::zero_if_unset(s.g, F),
               h = detail::zero_if_unset(s.h, F);
  const Fq l = s.lambda;
  XY X, Y;
  // images of x and y
  X[{1, 0}] = cst(l * l);
  Y[{0, 1}] = cst(l * l * l);
  switch (s.kind) {
  case SubstitutionKind::W3: X[{0, 0}] = f; break;
  case SubstitutionKind::W2:
    Y[{1, 0}] = f;
    Y[{0, 0}] = g;
    break;
  case SubstitutionKind::W2prime:
    X[{0, 0}] = f;
    Y[{1, 0}] = g;
    Y[{0, 0}] = h;
    break;
  default: break;
  }
  const BiPoly one = cst(Fq::one(F));
  XY lhs = add(add(mul(Y, Y), scal(e.a1(), mul(X, Y))), scal(e.a3(), Y));
  XY rhs = add(add(add(mul(mul(X, X), X), scal(e.a2(), mul(X, X))), scal(e.a4(), X)), XY{{{0, 0}, e.a6()}});
  XY G = add(lhs, scal(cst(-Fq::one(F)), rhs));
  const Fq i6 = l.inv().pow(6);
  std::map<std::pair<int, int>, BiPoly> c;
  for (auto &[k, v] : G)
    if (!v.is_zero()) c[k] = i6 * v;
  auto take = [&](int i, int j) {
    auto it = c.find({i, j});
    if (it == c.end()) return BiPoly(F);
    BiPoly v = it->second;
    c.erase(it);
    return v;
  };
  if (take(0, 2) != one) throw Error("internal: substituted equation lost its y^2 term");
  if (take(3, 0) != -one) throw Error("internal: substituted equation lost its x^3 term");
  BiPoly a1 = take(1, 1), a3 = take(0, 1);
  BiPoly a2 = -take(2, 0), a4 = -take(1, 0), a6 = -take(0, 0);
  if (!c.empty()) throw Error("internal: substituted equation is not in Weierstrass shape");
  return WeierstrassEq(F, a1, a2, a3, a4, a6);
}

} // namespace rdp
