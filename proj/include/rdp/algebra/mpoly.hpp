#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rdp/algebra/poly.hpp"

namespace rdp {

/// Sparse polynomial in up to four variables over a finite field. Terms are
/// kept sorted by packed exponent key (lex with variable 0 most significant),
/// with no zero coefficients. Three-variable instances are the local
/// polynomials of the singularity code.
class MPoly {
public:
  static constexpr unsigned kMaxVars = 4;
  using Exps = std::array<unsigned, kMaxVars>;
  using Term = std::pair<std::uint64_t, Fq>;

  MPoly() = default;
  MPoly(const Field &F, unsigned nvars) : F_(&F), n_(nvars) {
    if (nvars > kMaxVars) throw Error("too many variables");
  }

  static auto key(const Exps &e) -> std::uint64_t {
    std::uint64_t k = 0;
    for (unsigned i = 0; i < kMaxVars; ++i) {
      if (e[i] > 0xffff) throw Error("exponent overflow");
      k = (k << 16) | e[i];
    }
    return k;
  }
  static auto exps(std::uint64_t k) -> Exps {
    Exps e{};
    for (unsigned i = kMaxVars; i-- > 0;) {
      e[i] = static_cast<unsigned>(k & 0xffff);
      k >>= 16;
    }
    return e;
  }
  static auto key_degree(std::uint64_t k) -> unsigned {
    unsigned d = 0;
    for (unsigned i = 0; i < kMaxVars; ++i) {
      d += static_cast<unsigned>(k & 0xffff);
      k >>= 16;
    }
    return d;
  }

  static auto constant(const Fq &c, unsigned nvars) -> MPoly {
    MPoly r(c.field(), nvars);
    if (!c.is_zero()) r.t_.emplace_back(0, c);
    return r;
  }
  static auto variable(const Field &F, unsigned nvars, unsigned i) -> MPoly {
    Exps e{};
    e[i] = 1;
    return monomial(Fq::one(F), nvars, e);
  }
  static auto monomial(const Fq &c, unsigned nvars, const Exps &e) -> MPoly {
    MPoly r(c.field(), nvars);
    if (!c.is_zero()) r.t_.emplace_back(key(e), c);
    return r;
  }
  /// Build from arbitrary (possibly repeated, possibly zero) terms.
  static auto from_terms(const Field &F, unsigned nvars, std::vector<Term> terms) -> MPoly {
    MPoly r(F, nvars);
    r.t_ = std::move(terms);
    r.normalize();
    return r;
  }

  [[nodiscard]] auto field() const -> const Field & { return *F_; }
  [[nodiscard]] auto nvars() const -> unsigned { return n_; }
  [[nodiscard]] auto terms() const -> const std::vector<Term> & { return t_; }
  [[nodiscard]] auto is_zero() const -> bool { return t_.empty(); }
  [[nodiscard]] auto size() const -> std::size_t { return t_.size(); }
  [[nodiscard]] auto is_constant() const -> bool {
    return t_.empty() || (t_.size() == 1 && t_[0].first == 0);
  }
  [[nodiscard]] auto constant_term() const -> Fq {
    if (!t_.empty() && t_[0].first == 0) return t_[0].second;
    return Fq::zero(*F_);
  }
  [[nodiscard]] auto coeff(const Exps &e) const -> Fq {
    auto k = key(e);
    auto it = std::lower_bound(t_.begin(), t_.end(), k,
                               [](const Term &t, std::uint64_t v) { return t.first < v; });
    if (it != t_.end() && it->first == k) return it->second;
    return Fq::zero(*F_);
  }
  [[nodiscard]] auto leading() const -> const Term & { return t_.back(); }

  [[nodiscard]] auto total_degree() const -> int {
    int d = -1;
    for (auto &t : t_) d = std::max(d, static_cast<int>(key_degree(t.first)));
    return d;
  }
  /// Lowest total degree of a term (-1 for zero).
  [[nodiscard]] auto order() const -> int {
    int d = -1;
    for (auto &t : t_) {
      int k = static_cast<int>(key_degree(t.first));
      if (d < 0 || k < d) d = k;
    }
    return d;
  }
  [[nodiscard]] auto weighted_degree(const Exps &w) const -> int {
    int d = -1;
    for (auto &t : t_) {
      auto e = exps(t.first);
      int s = 0;
      for (unsigned i = 0; i < n_; ++i) s += static_cast<int>(e[i] * w[i]);
      d = std::max(d, s);
    }
    return d;
  }
  [[nodiscard]] auto degree_in(unsigned i) const -> int {
    int d = -1;
    for (auto &t : t_) d = std::max(d, static_cast<int>(exps(t.first)[i]));
    return d;
  }
  [[nodiscard]] auto involves(unsigned i) const -> bool { return degree_in(i) > 0; }

  [[nodiscard]] auto homogeneous_part(unsigned d) const -> MPoly {
    MPoly r(*F_, n_);
    for (auto &t : t_)
      if (key_degree(t.first) == d) r.t_.push_back(t);
    return r;
  }
  /// Drop all terms of total degree >= N.
  [[nodiscard]] auto truncated(unsigned N) const -> MPoly {
    MPoly r(*F_, n_);
    for (auto &t : t_)
      if (key_degree(t.first) < N) r.t_.push_back(t);
    return r;
  }

  friend auto operator+(const MPoly &a, const MPoly &b) -> MPoly {
    check(a, b);
    MPoly r(*a.F_, a.n_);
    r.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
        r.t_.push_back(a.t_[i++]);
      } else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first) {
        r.t_.push_back(b.t_[j++]);
      } else {
        Fq s = a.t_[i].second + b.t_[j].second;
        if (!s.is_zero()) r.t_.emplace_back(a.t_[i].first, s);
        ++i;
        ++j;
      }
    }
    return r;
  }
  auto operator-() const -> MPoly {
    MPoly r = *this;
    for (auto &t : r.t_) t.second = -t.second;
    return r;
  }
  friend auto operator-(const MPoly &a, const MPoly &b) -> MPoly { return a + (-b); }
  friend auto operator*(const MPoly &a, const MPoly &b) -> MPoly {
    check(a, b);
    if (a.is_zero() || b.is_zero()) return MPoly(*a.F_, a.n_);
    if (b.t_.size() == 1 && b.t_[0].first == 0) return b.t_[0].second * a;
    if (a.t_.size() == 1 && a.t_[0].first == 0) return a.t_[0].second * b;
    std::vector<Term> prod;
    prod.reserve(a.t_.size() * b.t_.size());
    for (auto &x : a.t_)
      for (auto &y : b.t_) prod.emplace_back(x.first + y.first, x.second * y.second);
    return from_terms(*a.F_, a.n_, std::move(prod));
  }
  friend auto operator*(const Fq &c, const MPoly &a) -> MPoly {
    MPoly r(*a.F_, a.n_);
    if (c.is_zero()) return r;
    r.t_.reserve(a.t_.size());
    for (auto &t : a.t_) r.t_.emplace_back(t.first, c * t.second);
    return r;
  }
  auto operator+=(const MPoly &b) -> MPoly & { return *this = *this + b; }
  auto operator-=(const MPoly &b) -> MPoly & { return *this = *this - b; }
  auto operator*=(const MPoly &b) -> MPoly & { return *this = *this * b; }

  friend auto operator==(const MPoly &a, const MPoly &b) -> bool {
    return a.F_ == b.F_ && a.n_ == b.n_ && a.t_ == b.t_;
  }
  friend auto operator!=(const MPoly &a, const MPoly &b) -> bool { return !(a == b); }

  [[nodiscard]] auto pow(unsigned e) const -> MPoly {
    MPoly r = constant(Fq::one(*F_), n_), a = *this;
    while (e) {
      if (e & 1) r = r * a;
      e >>= 1;
      if (e) a = a * a;
    }
    return r;
  }

  [[nodiscard]] auto derivative(unsigned i) const -> MPoly {
    std::vector<Term> out;
    for (auto &t : t_) {
      auto e = exps(t.first);
      if (e[i] == 0) continue;
      Fq c = t.second.times(e[i]);
      if (c.is_zero()) continue;
      --e[i];
      out.emplace_back(key(e), c);
    }
    return from_terms(*F_, n_, std::move(out));
  }

  [[nodiscard]] auto evaluate(const std::vector<Fq> &pt) const -> Fq {
    Fq acc = Fq::zero(*F_);
    for (auto &t : t_) {
      auto e = exps(t.first);
      Fq m = t.second;
      for (unsigned i = 0; i < n_; ++i)
        if (e[i]) m *= pt[i].pow(e[i]);
      acc += m;
    }
    return acc;
  }

  /// Substitute a value for variable i (the variable stays, with exponent 0).
  [[nodiscard]] auto substitute(unsigned i, const Fq &v) const -> MPoly {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto &t : t_) {
      auto e = exps(t.first);
      Fq c = t.second;
      if (e[i]) c *= v.pow(e[i]);
      e[i] = 0;
      out.emplace_back(key(e), c);
    }
    return from_terms(*F_, n_, std::move(out));
  }

  /// Apply a monomial map: variable i's exponent vector contributes e[i]*img[i].
  [[nodiscard]] auto monomial_substitution(const std::array<Exps, kMaxVars> &img) const -> MPoly {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto &t : t_) {
      auto e = exps(t.first);
      Exps r{};
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) r[j] += e[i] * img[i][j];
      out.emplace_back(key(r), t.second);
    }
    return from_terms(*F_, n_, std::move(out));
  }

  /// Divide every term by the monomial with exponents e (must divide).
  [[nodiscard]] auto divide_monomial(const Exps &d) const -> MPoly {
    MPoly r(*F_, n_);
    r.t_.reserve(t_.size());
    for (auto &t : t_) {
      auto e = exps(t.first);
      for (unsigned i = 0; i < n_; ++i) {
        if (e[i] < d[i]) throw Error("monomial does not divide");
        e[i] -= d[i];
      }
      r.t_.emplace_back(key(e), t.second);
    }
    r.normalize();
    return r;
  }

  /// Replace each variable x_i by x_i + s_i.
  [[nodiscard]] auto translated(const std::vector<Fq> &s) const -> MPoly {
    MPoly cur = *this;
    for (unsigned i = 0; i < n_; ++i) {
      if (i >= s.size() || s[i].is_zero()) continue;
      cur = cur.shift_variable(i, s[i]);
    }
    return cur;
  }

  template <class Fn> [[nodiscard]] auto map_coefficients(Fn &&fn, const Field &target) const -> MPoly {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto &t : t_) out.emplace_back(t.first, fn(t.second));
    return from_terms(target, n_, std::move(out));
  }

  /// View as a polynomial in variable i with coefficients free of x_i.
  [[nodiscard]] auto as_univariate(unsigned i) const -> Poly<MPoly> {
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(0, degree_in(i)) + 1));
    for (auto &t : t_) {
      auto e = exps(t.first);
      unsigned d = e[i];
      e[i] = 0;
      buckets[d].emplace_back(key(e), t.second);
    }
    std::vector<MPoly> c;
    for (auto &b : buckets) c.push_back(from_terms(*F_, n_, std::move(b)));
    return Poly<MPoly>(std::move(c), MPoly(*F_, n_));
  }

  static auto from_univariate(const Poly<MPoly> &p, unsigned i) -> MPoly {
    const MPoly &z = p.zero_elem();
    MPoly r(z.field(), z.nvars());
    for (int d = 0; d <= p.degree(); ++d) {
      Exps e{};
      e[i] = static_cast<unsigned>(d);
      r = r + p.coeff(static_cast<std::size_t>(d)) * monomial(Fq::one(z.field()), z.nvars(), e);
    }
    return r;
  }

  /// Univariate polynomial in variable i; all other exponents must vanish.
  [[nodiscard]] auto to_fpoly(unsigned i) const -> FPoly {
    std::vector<Fq> c(static_cast<std::size_t>(std::max(0, degree_in(i)) + 1), Fq::zero(*F_));
    for (auto &t : t_) {
      auto e = exps(t.first);
      for (unsigned j = 0; j < n_; ++j)
        if (j != i && e[j]) throw Error("polynomial is not univariate");
      c[e[i]] = t.second;
    }
    return FPoly(std::move(c), Fq::zero(*F_));
  }

  static auto from_fpoly(const FPoly &f, unsigned nvars, unsigned i) -> MPoly {
    std::vector<Term> out;
    for (int d = 0; d <= f.degree(); ++d) {
      Exps e{};
      e[i] = static_cast<unsigned>(d);
      out.emplace_back(key(e), f.coeff(static_cast<std::size_t>(d)));
    }
    return from_terms(field_of(f), nvars, std::move(out));
  }

  /// Exact quotient; throws when b does not divide a.
  friend auto divexact(MPoly a, const MPoly &b) -> MPoly {
    if (b.is_zero()) throw Error("division by zero polynomial");
    if (b.is_constant()) return b.constant_term().inv() * a;
    const Term lb = b.leading();
    const auto eb = exps(lb.first);
    const Fq binv = lb.second.inv();
    std::vector<Term> q;
    while (!a.is_zero()) {
      const Term la = a.leading();
      auto ea = exps(la.first);
      for (unsigned i = 0; i < kMaxVars; ++i) {
        if (ea[i] < eb[i]) throw Error("inexact polynomial division");
        ea[i] -= eb[i];
      }
      Fq c = la.second * binv;
      MPoly m = monomial(c, a.n_, ea);
      q.emplace_back(key(ea), c);
      a = a - m * b;
    }
    return from_terms(b.field(), b.nvars(), std::move(q));
  }

  [[nodiscard]] auto to_string(const std::vector<std::string> &names) const -> std::string {
    if (t_.empty()) return "0";
    std::string out;
    for (std::size_t idx = t_.size(); idx-- > 0;) {
      auto &t = t_[idx];
      auto e = exps(t.first);
      std::string cs = t.second.to_string();
      bool neg = cs[0] == '-';
      if (neg) cs = cs.substr(1);
      bool compound = cs.find('+') != std::string::npos;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      std::string mono;
      for (unsigned i = 0; i < n_; ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (compound) cs = "(" + cs + ")";
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else out += cs + "*" + mono;
    }
    return out;
  }

private:
  static void check(const MPoly &a, const MPoly &b) {
    if (a.F_ != b.F_ || a.n_ != b.n_) throw Error("polynomial ring mismatch");
  }

  void normalize() {
    std::sort(t_.begin(), t_.end(),
              [](const Term &a, const Term &b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto &t : t_) {
      if (!out.empty() && out.back().first == t.first) out.back().second += t.second;
      else out.push_back(t);
    }
    t_.clear();
    for (auto &t : out)
      if (!t.second.is_zero()) t_.push_back(t);
  }

  // Taylor shift x_i -> x_i + c, one univariate slice at a time.
  [[nodiscard]] auto shift_variable(unsigned i, const Fq &c) const -> MPoly {
    const int D = degree_in(i);
    if (D <= 0) return *this;
    // binomials mod p and powers of c
    std::vector<std::vector<Fq>> binom(static_cast<std::size_t>(D) + 1);
    for (int n = 0; n <= D; ++n) {
      binom[n].assign(static_cast<std::size_t>(n) + 1, Fq::one(*F_));
      for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }
    std::vector<Fq> cp(static_cast<std::size_t>(D) + 1, Fq::one(*F_));
    for (int k = 1; k <= D; ++k) cp[k] = cp[k - 1] * c;
    std::vector<Term> out;
    out.reserve(t_.size() * 2);
    for (auto &t : t_) {
      auto e = exps(t.first);
      const unsigned n = e[i];
      for (unsigned k = 0; k <= n; ++k) {
        // x^n -> sum binom(n,k) c^(n-k) x^k
        Fq coef = t.second * binom[n][k] * cp[n - k];
        if (coef.is_zero()) continue;
        auto f = e;
        f[i] = k;
        out.emplace_back(key(f), coef);
      }
    }
    return from_terms(*F_, n_, std::move(out));
  }

  const Field *F_ = nullptr;
  unsigned n_ = 0;
  std::vector<Term> t_;
};

inline auto ring_zero(const MPoly &like) -> MPoly { return MPoly(like.field(), like.nvars()); }
inline auto ring_one(const MPoly &like) -> MPoly {
  return MPoly::constant(Fq::one(like.field()), like.nvars());
}
inline auto ring_is_zero(const MPoly &x) -> bool { return x.is_zero(); }
inline auto ring_divexact(const MPoly &a, const MPoly &b) -> MPoly { return divexact(a, b); }
inline auto ring_mul_int(const MPoly &x, std::int64_t n) -> MPoly {
  return Fq::from_int(x.field(), n) * x;
}

inline auto operator<<(std::ostream &os, const MPoly &f) -> std::ostream & {
  return os << f.to_string({"x0", "x1", "x2", "x3"});
}

/// Local polynomials live in three variables (u, v, w).
using LocalPoly = MPoly;

} // namespace rdp
