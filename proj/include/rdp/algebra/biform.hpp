#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdp/algebra/tower.hpp"

namespace rdp {

/// Homogeneous binary form in (t, s). Stored densely as the coefficients of
/// t^i s^(d-i), i = 0..d. The zero form has no degree.
class BiPoly {
public:
  BiPoly() = default;
  /// The zero form over F.
  explicit BiPoly(const Field &F) : F_(&F), c_() {}
  /// Form of degree d with c[i] the coefficient of t^i s^(d-i).
  BiPoly(const Field &F, int d, std::vector<Fq> c) : F_(&F), d_(d), c_(std::move(c)) {
    if (d < 0) throw Error("negative degree");
    c_.resize(static_cast<std::size_t>(d) + 1, Fq::zero(F));
    normalize();
  }

  static auto monomial(const Fq &c, int i, int j) -> BiPoly {
    std::vector<Fq> v(static_cast<std::size_t>(i + j) + 1, Fq::zero(c.field()));
    v[static_cast<std::size_t>(i)] = c;
    return {c.field(), i + j, std::move(v)};
  }
  static auto t(const Field &F) -> BiPoly { return monomial(Fq::one(F), 1, 0); }
  static auto s(const Field &F) -> BiPoly { return monomial(Fq::one(F), 0, 1); }
  static auto constant(const Fq &c) -> BiPoly { return monomial(c, 0, 0); }

  [[nodiscard]] auto field() const -> const Field & { return *F_; }
  /// Null for a default-constructed form.
  [[nodiscard]] auto field_ptr() const -> const Field * { return F_; }
  [[nodiscard]] auto is_zero() const -> bool { return c_.empty(); }
  /// Degree; throws for the zero form.
  [[nodiscard]] auto degree() const -> int {
    if (is_zero()) throw Error("zero form has no degree");
    return d_;
  }
  /// Coefficient of t^i s^(deg-i).
  [[nodiscard]] auto coeff(int i) const -> Fq {
    if (is_zero() || i < 0 || i > d_) return Fq::zero(*F_);
    return c_[static_cast<std::size_t>(i)];
  }
  [[nodiscard]] auto coeffs() const -> const std::vector<Fq> & { return c_; }

  friend auto operator+(const BiPoly &a, const BiPoly &b) -> BiPoly {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.d_ != b.d_) throw Error("sum of forms of different degrees");
    std::vector<Fq> c(a.c_.size(), Fq::zero(*a.F_));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return {*a.F_, a.d_, std::move(c)};
  }
  auto operator-() const -> BiPoly {
    if (is_zero()) return *this;
    std::vector<Fq> c = c_;
    for (auto &x : c) x = -x;
    return {*F_, d_, std::move(c)};
  }
  friend auto operator-(const BiPoly &a, const BiPoly &b) -> BiPoly { return a + (-b); }
  friend auto operator*(const BiPoly &a, const BiPoly &b) -> BiPoly {
    if (a.F_ != b.F_) throw Error("field mismatch");
    if (a.is_zero() || b.is_zero()) return BiPoly(*a.F_);
    std::vector<Fq> c(a.c_.size() + b.c_.size() - 1, Fq::zero(*a.F_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return {*a.F_, a.d_ + b.d_, std::move(c)};
  }
  friend auto operator*(const Fq &k, const BiPoly &a) -> BiPoly {
    if (a.is_zero() || k.is_zero()) return BiPoly(*a.F_);
    std::vector<Fq> c = a.c_;
    for (auto &x : c) x = k * x;
    return {*a.F_, a.d_, std::move(c)};
  }
  auto operator+=(const BiPoly &b) -> BiPoly & { return *this = *this + b; }
  auto operator-=(const BiPoly &b) -> BiPoly & { return *this = *this - b; }
  auto operator*=(const BiPoly &b) -> BiPoly & { return *this = *this * b; }

  friend auto operator==(const BiPoly &a, const BiPoly &b) -> bool {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.d_ == b.d_ && a.c_ == b.c_;
  }
  friend auto operator!=(const BiPoly &a, const BiPoly &b) -> bool { return !(a == b); }

  [[nodiscard]] auto pow(unsigned e) const -> BiPoly {
    BiPoly r = constant(Fq::one(*F_));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  [[nodiscard]] auto times_int(std::int64_t n) const -> BiPoly {
    return Fq::from_int(*F_, n) * *this;
  }

  [[nodiscard]] auto eval(const Fq &t, const Fq &s) const -> Fq {
    if (is_zero()) return Fq::zero(t.field());
    Fq acc = Fq::zero(t.field());
    for (int i = 0; i <= d_; ++i) {
      const Fq &c = c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (&c.field() != &t.field() && !c.in_prime_field())
        throw Error("field mismatch");
      acc += Fq(t.field(), c.index()) * t.pow(static_cast<std::uint64_t>(i)) *
             s.pow(static_cast<std::uint64_t>(d_ - i));
    }
    return acc;
  }

  /// Dehomogenize at s = 1: a polynomial in t.
  [[nodiscard]] auto at_s1() const -> FPoly { return FPoly(c_, Fq::zero(*F_)); }
  /// Dehomogenize at t = 1: a polynomial in s.
  [[nodiscard]] auto at_t1() const -> FPoly { return swapped().at_s1(); }
  /// Exchange the roles of t and s.
  [[nodiscard]] auto swapped() const -> BiPoly {
    if (is_zero()) return *this;
    std::vector<Fq> c(c_.rbegin(), c_.rend());
    return {*F_, d_, std::move(c)};
  }
  /// Homogenize a polynomial in t to degree d (needs deg f <= d).
  static auto homogenize(const FPoly &f, int d) -> BiPoly {
    const Field &F = field_of(f);
    if (f.is_zero()) return BiPoly(F);
    if (f.degree() > d) throw Error("degree exceeds homogenization degree");
    return {F, d, f.coeffs()};
  }

  /// Exponent of s dividing the form.
  [[nodiscard]] auto s_valuation() const -> int {
    for (int i = d_; i >= 0; --i)
      if (!c_[static_cast<std::size_t>(i)].is_zero()) return d_ - i;
    return -1;
  }
  [[nodiscard]] auto t_valuation() const -> int { return swapped().s_valuation(); }

  /// Substitute (t, s) -> (m00 t + m01 s, m10 t + m11 s).
  [[nodiscard]] auto mobius(const Fq &m00, const Fq &m01, const Fq &m10, const Fq &m11) const
      -> BiPoly {
    if (is_zero()) return *this;
    const Field &F = *F_;
    BiPoly T = monomial(m00, 1, 0) + monomial(m01, 0, 1);
    BiPoly S = monomial(m10, 1, 0) + monomial(m11, 0, 1);
    BiPoly acc(F);
    for (int i = 0; i <= d_; ++i) {
      const Fq &c = c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      acc += c * (safe_pow(T, i, F) * safe_pow(S, d_ - i, F));
    }
    return acc;
  }

  /// Map coefficients into another field (an embedding).
  template <class Fn> [[nodiscard]] auto map(Fn &&fn, const Field &target) const -> BiPoly {
    if (is_zero()) return BiPoly(target);
    std::vector<Fq> c;
    for (auto &x : c_) c.push_back(fn(x));
    return {target, d_, std::move(c)};
  }

  /// Printed with t before s, highest power of t first, e.g. "t^10*s^2 - 2*s^12".
  [[nodiscard]] auto to_string() const -> std::string {
    if (is_zero()) return "0";
    std::string out;
    for (int i = d_; i >= 0; --i) {
      const Fq &c = c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      std::string cs = c.to_string();
      bool neg = cs[0] == '-';
      if (neg) cs = cs.substr(1);
      bool compound = cs.find('+') != std::string::npos;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      std::string mono;
      auto var = [](const char *v, int e) -> std::string {
        if (e == 0) return "";
        return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e);
      };
      std::string tt = var("t", i), ss = var("s", d_ - i);
      mono = tt;
      if (!ss.empty()) mono += (mono.empty() ? "" : "*") + ss;
      if (compound) cs = "(" + cs + ")";
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else out += cs + "*" + mono;
    }
    return out;
  }

private:
  static auto safe_pow(const BiPoly &b, int e, const Field &F) -> BiPoly {
    BiPoly r = constant(Fq::one(F));
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  }
  void normalize() {
    bool all_zero = true;
    for (auto &x : c_)
      if (!x.is_zero()) all_zero = false;
    if (all_zero) {
      c_.clear();
      d_ = 0;
    }
  }

  const Field *F_ = nullptr;
  int d_ = 0;
  std::vector<Fq> c_;
};

inline auto operator<<(std::ostream &os, const BiPoly &f) -> std::ostream & {
  return os << f.to_string();
}

/// An irreducible factor of a binary form: the form itself (monic in t, or
/// the form s), its multiplicity and the extension over which it splits
/// into linear places t = root * s.
struct BinaryFactor {
  BiPoly form;
  int multiplicity = 0;
  unsigned degree = 0;
  bool at_infinity = false; // the place [s]
  FieldTower tower{Field::get(2)};
  std::vector<Fq> roots; // in tower.top(); empty for [s]
};

/// Factor a nonzero binary form over its coefficient field. Finite places
/// come first in canonical order, the place [s] last.
inline auto factor_binary_form(const BiPoly &F) -> std::vector<BinaryFactor> {
  if (F.is_zero()) throw Error("identically zero");
  const Field &K = F.field();
  std::vector<BinaryFactor> out;
  const int e = F.s_valuation();
  FPoly g = F.at_s1();
  if (g.degree() > 0) {
    auto fac = factor_univariate(g);
    for (auto &[h, m] : fac.factors) {
      BinaryFactor bf;
      bf.form = BiPoly::homogenize(h, h.degree());
      bf.multiplicity = m;
      bf.degree = static_cast<unsigned>(h.degree());
      bf.tower = FieldTower(K).extended(bf.degree);
      FPoly lifted = h.map([&](const Fq &c) { return bf.tower.lift(c); }, Fq::zero(bf.tower.top()));
      bf.roots = roots_in_field(lifted);
      if (bf.roots.size() != bf.degree) throw Error("binary form did not split");
      out.push_back(std::move(bf));
    }
  }
  if (e > 0) {
    BinaryFactor bf;
    bf.form = BiPoly::s(K);
    bf.multiplicity = e;
    bf.degree = 1;
    bf.at_infinity = true;
    bf.tower = FieldTower(K);
    out.push_back(std::move(bf));
  }
  return out;
}

} // namespace rdp
