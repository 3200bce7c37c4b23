#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rdp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Total degree of any field over its prime field.
inline constexpr unsigned kMaxExtensionDegree = 12;

namespace detail {

inline auto mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
    -> std::uint64_t {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline auto powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
    -> std::uint64_t {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline auto is_prime(std::uint64_t n) -> bool {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline auto prime_divisors(std::uint64_t n) -> std::vector<std::uint64_t> {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over Z/p, lowest degree first; only used to pick moduli.
using ZpPoly = std::vector<std::uint64_t>;

inline void zp_trim(ZpPoly &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline auto zp_mulmod(const ZpPoly &a, const ZpPoly &b, const ZpPoly &m,
                      std::uint64_t p) -> ZpPoly {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  const std::size_t k = m.size() - 1; // m monic
  for (std::size_t i = r.size(); i-- > k;) {
    std::uint64_t c = r[i];
    if (!c) continue;
    for (std::size_t j = 0; j <= k; ++j)
      r[i - k + j] = (r[i - k + j] + (p - mulmod(c, m[j], p))) % p;
  }
  r.resize(std::min(r.size(), k));
  zp_trim(r);
  return r;
}

inline auto zp_powmod(ZpPoly a, std::uint64_t e, const ZpPoly &m,
                      std::uint64_t p) -> ZpPoly {
  ZpPoly r{1};
  while (e) {
    if (e & 1) r = zp_mulmod(r, a, m, p);
    a = zp_mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

inline auto zp_gcd(ZpPoly a, ZpPoly b, std::uint64_t p) -> ZpPoly {
  zp_trim(a);
  zp_trim(b);
  while (!b.empty()) {
    // a mod b
    std::uint64_t inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      std::uint64_t c = mulmod(a.back(), inv, p);
      std::size_t sh = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[sh + j] = (a[sh + j] + (p - mulmod(c, b[j], p))) % p;
      zp_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Rabin's test for a monic m of degree k over Z/p.
inline auto zp_irreducible(const ZpPoly &m, std::uint64_t p) -> bool {
  const std::size_t k = m.size() - 1;
  if (k == 1) return true;
  auto x_pow_pk = [&](std::size_t j) {
    ZpPoly x{0, 1};
    for (std::size_t i = 0; i < j; ++i) x = zp_powmod(x, p, m, p);
    return x;
  };
  ZpPoly top = x_pow_pk(k);
  ZpPoly x{0, 1};
  zp_trim(top);
  if (top != x) return false;
  for (std::uint64_t r : prime_divisors(k)) {
    ZpPoly h = x_pow_pk(k / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    zp_trim(h);
    ZpPoly g = zp_gcd(m, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

} // namespace detail

/// GF(p^k) = GF(p)[a]/(m(a)) with m the lexicographically smallest monic
/// irreducible of degree k. Elements are indices sum c_i p^i for sum c_i a^i,
/// so GF(p) sits inside every level as the indices 0..p-1.
class Field {
public:
  static auto get(std::uint64_t p, unsigned k = 1) -> const Field & {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<Field>>
        registry;
    if (k == 0 || k > kMaxExtensionDegree)
      throw Error("extension budget exceeded");
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = registry[{p, k}];
    if (!slot) {
      if (!detail::is_prime(p))
        throw Error("characteristic must be prime, got " + std::to_string(p));
      slot.reset(new Field(p, k));
    }
    return *slot;
  }

  [[nodiscard]] auto characteristic() const -> std::uint64_t { return p_; }
  [[nodiscard]] auto degree() const -> unsigned { return k_; }
  [[nodiscard]] auto size() const -> std::uint64_t { return q_; }
  /// Monic defining polynomial over GF(p), lowest coefficient first.
  [[nodiscard]] auto modulus() const -> const std::vector<std::uint64_t> & {
    return mod_;
  }

  [[nodiscard]] auto from_int(std::int64_t n) const -> std::uint64_t {
    auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  }

  [[nodiscard]] auto add(std::uint64_t a, std::uint64_t b) const
      -> std::uint64_t {
    if (k_ == 1) {
      std::uint64_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (!zech_.empty()) {
      if (a == 0) return b;
      if (b == 0) return a;
      std::uint64_t la = log_[a], lb = log_[b];
      std::uint64_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
      std::int64_t z = zech_[d];
      if (z < 0) return 0;
      return exp_[la + static_cast<std::uint64_t>(z)];
    }
    return slow_add(a, b);
  }

  [[nodiscard]] auto neg(std::uint64_t a) const -> std::uint64_t {
    if (a == 0 || p_ == 2) return a;
    if (k_ == 1) return p_ - a;
    if (!zech_.empty()) {
      std::uint64_t l = log_[a] + (q_ - 1) / 2;
      return exp_[l];
    }
    auto d = digits(a);
    for (auto &x : d) x = x ? p_ - x : 0;
    return from_digits(d);
  }

  [[nodiscard]] auto sub(std::uint64_t a, std::uint64_t b) const
      -> std::uint64_t {
    return add(a, neg(b));
  }

  [[nodiscard]] auto mul(std::uint64_t a, std::uint64_t b) const
      -> std::uint64_t {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return detail::mulmod(a, b, p_);
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
  }

  [[nodiscard]] auto inv(std::uint64_t a) const -> std::uint64_t {
    if (a == 0) throw Error("division by zero");
    if (k_ == 1) return detail::powmod(a, p_ - 2, p_);
    if (!log_.empty()) return exp_[(q_ - 1) - log_[a]];
    return pow(a, q_ - 2);
  }

  [[nodiscard]] auto pow(std::uint64_t a, std::uint64_t e) const
      -> std::uint64_t {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!log_.empty()) {
      auto l = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(log_[a]) * e % (q_ - 1));
      return exp_[l];
    }
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Base-p digits (coefficients of 1, a, a^2, ...), length k.
  [[nodiscard]] auto digits(std::uint64_t a) const -> std::vector<std::uint64_t> {
    std::vector<std::uint64_t> d(k_);
    for (unsigned i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  [[nodiscard]] auto from_digits(const std::vector<std::uint64_t> &d) const
      -> std::uint64_t {
    std::uint64_t a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i] % p_;
    return a;
  }

  /// Index of the generator a (a itself when k > 1).
  [[nodiscard]] auto generator() const -> std::uint64_t {
    return k_ == 1 ? 1 % q_ : p_;
  }

  Field(const Field &) = delete;
  auto operator=(const Field &) -> Field & = delete;

private:
  Field(std::uint64_t p, unsigned k) : p_(p), k_(k) {
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (q_ > (std::uint64_t{1} << 62) / p) throw Error("extension budget exceeded");
      q_ *= p;
    }
    pick_modulus();
    if (k_ > 1 && q_ <= (std::uint64_t{1} << 20)) build_tables();
  }

  void pick_modulus() {
    if (k_ == 1) {
      mod_ = {0, 1};
      return;
    }
    for (std::uint64_t code = 0; code < q_; ++code) {
      detail::ZpPoly m(k_ + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < k_; ++i) {
        m[i] = c % p_;
        c /= p_;
      }
      m[k_] = 1;
      if (m[0] == 0) continue;
      if (detail::zp_irreducible(m, p_)) {
        mod_ = m;
        return;
      }
    }
    throw Error("no irreducible polynomial found");
  }

  [[nodiscard]] auto slow_add(std::uint64_t a, std::uint64_t b) const
      -> std::uint64_t {
    std::uint64_t r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }

  [[nodiscard]] auto slow_mul(std::uint64_t a, std::uint64_t b) const
      -> std::uint64_t {
    auto da = digits(a), db = digits(b);
    detail::ZpPoly pa(da.begin(), da.end()), pb(db.begin(), db.end());
    detail::zp_trim(pa);
    detail::zp_trim(pb);
    auto r = detail::zp_mulmod(pa, pb, mod_, p_);
    r.resize(k_, 0);
    return from_digits(r);
  }

  void build_tables() {
    // smallest primitive element
    auto order_divs = detail::prime_divisors(q_ - 1);
    std::uint64_t g = 0;
    auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
      std::uint64_t r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    for (std::uint64_t c = 2; c < q_; ++c) {
      bool ok = true;
      for (auto r : order_divs)
        if (slow_pow(c, (q_ - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = c;
        break;
      }
    }
    if (q_ == 2) g = 1;
    exp_.assign(2 * (q_ - 1) + 1, 0);
    log_.assign(q_, 0);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = static_cast<std::uint32_t>(x);
      log_[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, g);
    }
    for (std::uint64_t i = q_ - 1; i < exp_.size(); ++i)
      exp_[i] = exp_[i - (q_ - 1)];
    if (p_ != 2) {
      zech_.assign(q_ - 1, -1);
      for (std::uint64_t n = 0; n < q_ - 1; ++n) {
        std::uint64_t s = slow_add(1, exp_[n]);
        zech_[n] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
      }
    }
  }

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> mod_;
  std::vector<std::uint32_t> log_, exp_;
  std::vector<std::int64_t> zech_;
};

/// Element of a Field. The field pointer is part of the value; mixing fields
/// is an error (callers embed explicitly through a tower).
class Fq {
public:
  Fq() = default;
  Fq(const Field &F, std::uint64_t v) : F_(&F), v_(v) {}

  static auto zero(const Field &F) -> Fq { return {F, 0}; }
  static auto one(const Field &F) -> Fq { return {F, 1}; }
  static auto from_int(const Field &F, std::int64_t n) -> Fq {
    return {F, F.from_int(n)};
  }

  [[nodiscard]] auto field() const -> const Field & { return *F_; }
  [[nodiscard]] auto field_ptr() const -> const Field * { return F_; }
  [[nodiscard]] auto index() const -> std::uint64_t { return v_; }
  [[nodiscard]] auto is_zero() const -> bool { return v_ == 0; }
  [[nodiscard]] auto is_one() const -> bool { return v_ == 1; }
  [[nodiscard]] auto in_prime_field() const -> bool {
    return v_ < F_->characteristic();
  }

  friend auto operator+(const Fq &a, const Fq &b) -> Fq {
    check(a, b);
    return {*a.F_, a.F_->add(a.v_, b.v_)};
  }
  friend auto operator-(const Fq &a, const Fq &b) -> Fq {
    check(a, b);
    return {*a.F_, a.F_->sub(a.v_, b.v_)};
  }
  friend auto operator*(const Fq &a, const Fq &b) -> Fq {
    check(a, b);
    return {*a.F_, a.F_->mul(a.v_, b.v_)};
  }
  friend auto operator/(const Fq &a, const Fq &b) -> Fq {
    check(a, b);
    return {*a.F_, a.F_->mul(a.v_, a.F_->inv(b.v_))};
  }
  auto operator-() const -> Fq { return {*F_, F_->neg(v_)}; }
  auto operator+=(const Fq &b) -> Fq & { return *this = *this + b; }
  auto operator-=(const Fq &b) -> Fq & { return *this = *this - b; }
  auto operator*=(const Fq &b) -> Fq & { return *this = *this * b; }
  auto operator/=(const Fq &b) -> Fq & { return *this = *this / b; }

  friend auto operator==(const Fq &a, const Fq &b) -> bool {
    return a.F_ == b.F_ && a.v_ == b.v_;
  }
  friend auto operator!=(const Fq &a, const Fq &b) -> bool { return !(a == b); }
  friend auto operator<(const Fq &a, const Fq &b) -> bool { return a.v_ < b.v_; }

  [[nodiscard]] auto inv() const -> Fq { return {*F_, F_->inv(v_)}; }
  [[nodiscard]] auto pow(std::uint64_t e) const -> Fq {
    return {*F_, F_->pow(v_, e)};
  }
  [[nodiscard]] auto frobenius() const -> Fq {
    return pow(F_->characteristic());
  }
  /// Unique p-th root (finite fields are perfect).
  [[nodiscard]] auto pth_root() const -> Fq {
    return pow(F_->size() / F_->characteristic());
  }
  [[nodiscard]] auto times(std::int64_t n) const -> Fq {
    return *this * from_int(*F_, n);
  }

  /// Prime-field values print as symmetric integers, others as polynomials
  /// in the generator `a`.
  [[nodiscard]] auto to_string() const -> std::string {
    const auto p = F_->characteristic();
    if (v_ < p) {
      if (p != 2 && v_ > p / 2)
        return "-" + std::to_string(p - v_);
      return std::to_string(v_);
    }
    auto d = F_->digits(v_);
    std::string out;
    for (std::size_t i = d.size(); i-- > 0;) {
      if (!d[i]) continue;
      if (!out.empty()) out += "+";
      if (i == 0 || d[i] != 1) out += std::to_string(d[i]);
      if (i >= 1) out += "a";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

private:
  static void check(const Fq &a, const Fq &b) {
    if (a.F_ != b.F_) throw Error("field mismatch");
  }

  const Field *F_ = nullptr;
  std::uint64_t v_ = 0;
};

// Ring interface used by the generic polynomial templates.
inline auto ring_zero(const Fq &like) -> Fq { return Fq::zero(like.field()); }
inline auto ring_one(const Fq &like) -> Fq { return Fq::one(like.field()); }
inline auto ring_is_zero(const Fq &x) -> bool { return x.is_zero(); }
inline auto ring_divexact(const Fq &a, const Fq &b) -> Fq { return a / b; }
inline auto ring_mul_int(const Fq &x, std::int64_t n) -> Fq { return x.times(n); }

inline auto operator<<(std::ostream &os, const Fq &x) -> std::ostream & { return os << x.to_string(); }

} // namespace rdp

template <> struct std::hash<rdp::Fq> {
  auto operator()(const rdp::Fq &x) const noexcept -> std::size_t {
    return std::hash<std::uint64_t>{}(x.index()) ^
           (std::hash<const void *>{}(x.field_ptr()) << 1);
  }
};
