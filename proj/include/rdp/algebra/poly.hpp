#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rdp/algebra/field.hpp"

namespace rdp {

/// Dense univariate polynomial over a commutative ring R (Fq, MPoly, or a
/// nested Poly). `zero_` carries the ring context so that empty polynomials
/// still know their coefficient domain.
template <class R> class Poly {
public:
  Poly() = default;
  explicit Poly(const R &like) : zero_(ring_zero(like)) {}
  Poly(std::vector<R> coeffs, const R &like)
      : c_(std::move(coeffs)), zero_(ring_zero(like)) {
    trim();
  }

  static auto constant(const R &c) -> Poly { return Poly({c}, c); }
  static auto monomial(const R &c, std::size_t n) -> Poly {
    std::vector<R> v(n + 1, ring_zero(c));
    v[n] = c;
    return Poly(std::move(v), c);
  }
  /// The polynomial X.
  static auto x(const R &like) -> Poly {
    return monomial(ring_one(like), 1);
  }

  [[nodiscard]] auto degree() const -> int { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] auto is_zero() const -> bool { return c_.empty(); }
  [[nodiscard]] auto coeff(std::size_t i) const -> const R & {
    return i < c_.size() ? c_[i] : zero_;
  }
  [[nodiscard]] auto lc() const -> const R & { return c_.empty() ? zero_ : c_.back(); }
  [[nodiscard]] auto coeffs() const -> const std::vector<R> & { return c_; }
  [[nodiscard]] auto zero_elem() const -> const R & { return zero_; }
  [[nodiscard]] auto is_constant() const -> bool { return c_.size() <= 1; }

  void set_coeff(std::size_t i, const R &v) {
    if (i >= c_.size()) c_.resize(i + 1, zero_);
    c_[i] = v;
    trim();
  }

  friend auto operator+(const Poly &a, const Poly &b) -> Poly {
    std::vector<R> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(r), a.zero_);
  }
  friend auto operator-(const Poly &a, const Poly &b) -> Poly {
    std::vector<R> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(r), a.zero_);
  }
  auto operator-() const -> Poly {
    std::vector<R> r(c_.size(), zero_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = zero_ - c_[i];
    return Poly(std::move(r), zero_);
  }
  friend auto operator*(const Poly &a, const Poly &b) -> Poly {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<R> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ring_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.zero_);
  }
  friend auto operator*(const R &s, const Poly &a) -> Poly {
    std::vector<R> r(a.c_.size(), a.zero_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s * a.c_[i];
    return Poly(std::move(r), a.zero_);
  }
  auto operator+=(const Poly &b) -> Poly & { return *this = *this + b; }
  auto operator-=(const Poly &b) -> Poly & { return *this = *this - b; }
  auto operator*=(const Poly &b) -> Poly & { return *this = *this * b; }

  friend auto operator==(const Poly &a, const Poly &b) -> bool {
    return a.c_ == b.c_;
  }
  friend auto operator!=(const Poly &a, const Poly &b) -> bool { return !(a == b); }

  /// Multiply by X^n.
  [[nodiscard]] auto shift(std::size_t n) const -> Poly {
    if (is_zero()) return *this;
    std::vector<R> r(n, zero_);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(std::move(r), zero_);
  }

  [[nodiscard]] auto eval(const R &x) const -> R {
    R acc = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  [[nodiscard]] auto derivative() const -> Poly {
    if (c_.size() <= 1) return Poly(zero_);
    std::vector<R> r(c_.size() - 1, zero_);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r[i - 1] = ring_mul_int(c_[i], static_cast<std::int64_t>(i));
    return Poly(std::move(r), zero_);
  }

  /// Lowest index with a nonzero coefficient (the X-adic valuation).
  [[nodiscard]] auto valuation() const -> int {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!ring_is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  template <class F> [[nodiscard]] auto map(F &&f, const R &like) const -> Poly {
    std::vector<R> r;
    r.reserve(c_.size());
    for (const auto &c : c_) r.push_back(f(c));
    return Poly(std::move(r), like);
  }

private:
  void trim() {
    while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
  R zero_{};
};

template <class R> auto ring_zero(const Poly<R> &like) -> Poly<R> {
  return Poly<R>(like.zero_elem());
}
template <class R> auto ring_one(const Poly<R> &like) -> Poly<R> {
  return Poly<R>::constant(ring_one(like.zero_elem()));
}
template <class R> auto ring_is_zero(const Poly<R> &x) -> bool { return x.is_zero(); }
template <class R> auto ring_mul_int(const Poly<R> &x, std::int64_t n) -> Poly<R> {
  return x.map([n](const R &c) { return ring_mul_int(c, n); }, x.zero_elem());
}

/// Pseudo-remainder: lc(B)^(deg A - deg B + 1) A mod B, without division.
template <class R> auto prem(Poly<R> A, const Poly<R> &B) -> Poly<R> {
  if (B.is_zero()) throw Error("division by zero polynomial");
  const int db = B.degree();
  if (A.degree() < db) return A;
  int e = A.degree() - db + 1;
  const R &b = B.lc();
  while (!A.is_zero() && A.degree() >= db) {
    const int sh = A.degree() - db;
    R a = A.lc();
    A = b * A - (Poly<R>::monomial(a, static_cast<std::size_t>(sh)) * B);
    --e;
  }
  R f = ring_one(b);
  for (int i = 0; i < e; ++i) f = f * b;
  return f * A;
}

/// Exact quotient A / B; throws if B does not divide A.
template <class R> auto divexact(Poly<R> A, const Poly<R> &B) -> Poly<R> {
  if (B.is_zero()) throw Error("division by zero polynomial");
  const int db = B.degree();
  std::vector<R> q(A.degree() >= db ? static_cast<std::size_t>(A.degree() - db + 1) : 0,
                   B.zero_elem());
  while (!A.is_zero()) {
    if (A.degree() < db) throw Error("inexact polynomial division");
    const auto sh = static_cast<std::size_t>(A.degree() - db);
    R c = ring_divexact(A.lc(), B.lc());
    q[sh] = c;
    A = A - Poly<R>::monomial(c, sh) * B;
  }
  return Poly<R>(std::move(q), B.zero_elem());
}

template <class R> auto ring_divexact(const Poly<R> &a, const Poly<R> &b) -> Poly<R> {
  return divexact(a, b);
}

template <class R> auto pow(Poly<R> a, std::uint64_t e) -> Poly<R> {
  Poly<R> r = ring_one(a);
  while (e) {
    if (e & 1) r = r * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over a finite field.

using FPoly = Poly<Fq>;

inline auto fpoly(const Field &F, const std::vector<std::int64_t> &low_first) -> FPoly {
  std::vector<Fq> c;
  for (auto v : low_first) c.push_back(Fq::from_int(F, v));
  return FPoly(std::move(c), Fq::zero(F));
}

inline auto field_of(const FPoly &f) -> const Field & { return f.zero_elem().field(); }

inline auto monic(const FPoly &f) -> FPoly {
  if (f.is_zero()) return f;
  return f.lc().inv() * f;
}

/// Quotient and remainder for a nonzero divisor.
inline auto divrem(const FPoly &A, const FPoly &B) -> std::pair<FPoly, FPoly> {
  if (B.is_zero()) throw Error("division by zero polynomial");
  const Fq z = B.zero_elem();
  const int db = B.degree();
  if (A.degree() < db) return {FPoly(z), A};
  std::vector<Fq> r = A.coeffs();
  std::vector<Fq> q(static_cast<std::size_t>(A.degree() - db + 1), z);
  const Fq binv = B.lc().inv();
  for (int i = A.degree(); i >= db; --i) {
    const Fq c = r[static_cast<std::size_t>(i)] * binv;
    if (c.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i - db + j)] -= c * B.coeff(static_cast<std::size_t>(j));
  }
  r.resize(static_cast<std::size_t>(db));
  return {FPoly(std::move(q), z), FPoly(std::move(r), z)};
}

inline auto operator%(const FPoly &a, const FPoly &b) -> FPoly { return divrem(a, b).second; }
inline auto operator/(const FPoly &a, const FPoly &b) -> FPoly { return divrem(a, b).first; }

/// Monic gcd (zero when both inputs vanish).
inline auto gcd(FPoly a, FPoly b) -> FPoly {
  while (!b.is_zero()) {
    FPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline auto mulmod(const FPoly &a, const FPoly &b, const FPoly &m) -> FPoly {
  return (a * b) % m;
}

inline auto powmod(FPoly a, std::uint64_t e, const FPoly &m) -> FPoly {
  FPoly r = FPoly::constant(Fq::one(field_of(m))) % m;
  a = a % m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    e >>= 1;
    if (e) a = mulmod(a, a, m);
  }
  return r;
}

/// Canonical comparison: degree first, then coefficients from the top.
inline auto canonical_less(const FPoly &a, const FPoly &b) -> bool {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto ai = a.coeff(static_cast<std::size_t>(i)).index();
    auto bi = b.coeff(static_cast<std::size_t>(i)).index();
    if (ai != bi) return ai < bi;
  }
  return false;
}

inline auto to_string(const FPoly &f, const std::string &var = "u") -> std::string {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    const Fq &c = f.coeff(static_cast<std::size_t>(i));
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool neg = cs[0] == '-';
    if (neg) cs = cs.substr(1);
    bool compound = cs.find('+') != std::string::npos;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty()) out += compound ? "(" + cs + ")" : cs;
    else if (cs == "1") out += mono;
    else out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
  }
  return out;
}

inline auto operator<<(std::ostream &os, const FPoly &f) -> std::ostream & {
  return os << to_string(f);
}

} // namespace rdp
