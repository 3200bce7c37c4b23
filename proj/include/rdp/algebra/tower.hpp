#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "rdp/algebra/factor.hpp"

namespace rdp {

/// Image of the generator of GF(p^a) in GF(p^b) (a | b): the smallest root
/// of the defining polynomial of GF(p^a) inside GF(p^b).
inline auto canonical_embedding(const Field &from, const Field &to) -> Fq {
  if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0)
    throw Error("no embedding between these fields");
  static std::mutex mu;
  static std::map<std::pair<const Field *, const Field *>, std::uint64_t> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({&from, &to});
    if (it != cache.end()) return {to, it->second};
  }
  Fq image;
  if (from.degree() == 1) {
    image = Fq::zero(to); // root of X; unused since prime-field indices map to themselves
  } else {
    std::vector<Fq> c;
    for (auto m : from.modulus()) c.push_back(Fq::from_int(to, static_cast<std::int64_t>(m)));
    auto r = roots_in_field(FPoly(std::move(c), Fq::zero(to)));
    if (r.empty()) throw Error("embedding root not found");
    image = r.front();
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[{&from, &to}] = image.index();
  return image;
}

/// Map x from its field into `to` along the canonical embedding.
inline auto embed(const Fq &x, const Fq &generator_image) -> Fq {
  const Field &F = x.field();
  const Field &T = generator_image.field();
  if (&F == &T) return x;
  if (F.degree() == 1) return {T, x.index()};
  auto d = F.digits(x.index());
  Fq acc = Fq::zero(T);
  for (std::size_t i = d.size(); i-- > 0;)
    acc = acc * generator_image + Fq::from_int(T, static_cast<std::int64_t>(d[i]));
  return acc;
}

/// A chain GF(p^e0) ⊂ GF(p^e1) ⊂ ... where each step uses the canonical
/// embedding. Elements of a lower level reach the top only along the chain,
/// so everything computed inside one tower stays mutually consistent.
class FieldTower {
public:
  explicit FieldTower(const Field &base) : levels_{&base} {}

  [[nodiscard]] auto base() const -> const Field & { return *levels_.front(); }
  [[nodiscard]] auto top() const -> const Field & { return *levels_.back(); }
  [[nodiscard]] auto height() const -> std::size_t { return levels_.size(); }
  [[nodiscard]] auto level(std::size_t i) const -> const Field & { return *levels_[i]; }
  /// Degree of the top level over the base level.
  [[nodiscard]] auto relative_degree() const -> unsigned {
    return top().degree() / base().degree();
  }

  /// New tower with one more level of relative degree d over the top.
  [[nodiscard]] auto extended(unsigned d) const -> FieldTower {
    if (d <= 1) return *this;
    const unsigned k = top().degree() * d;
    if (k > kMaxExtensionDegree) throw Error("extension budget exceeded");
    FieldTower t = *this;
    const Field &next = Field::get(top().characteristic(), k);
    t.gens_.push_back(canonical_embedding(top(), next));
    t.levels_.push_back(&next);
    return t;
  }

  /// Lift an element of any level to the top level.
  [[nodiscard]] auto lift(const Fq &x) const -> Fq {
    std::size_t i = index_of(x.field());
    Fq y = x;
    for (; i + 1 < levels_.size(); ++i) y = embed(y, gens_[i]);
    return y;
  }

  /// Lift an element of level i to level j >= i.
  [[nodiscard]] auto lift_to(const Fq &x, std::size_t j) const -> Fq {
    std::size_t i = index_of(x.field());
    if (i > j) throw Error("cannot lift downward");
    Fq y = x;
    for (; i < j; ++i) y = embed(y, gens_[i]);
    return y;
  }

  /// Equality after embedding both into the higher level.
  [[nodiscard]] auto equal(const Fq &a, const Fq &b) const -> bool {
    std::size_t j = std::max(index_of(a.field()), index_of(b.field()));
    return lift_to(a, j) == lift_to(b, j);
  }

  /// Defining polynomial of level i over level i-1 (coefficients in level i-1).
  [[nodiscard]] auto relative_modulus(std::size_t i) const -> FPoly {
    if (i == 0 || i >= levels_.size()) throw Error("no such level");
    const Field &lo = *levels_[i - 1];
    const Field &hi = *levels_[i];
    const unsigned r = hi.degree() / lo.degree();
    // minimal polynomial of the generator of `hi` over the image of `lo`
    const Fq alpha(hi, hi.generator());
    FPoly m = FPoly::constant(Fq::one(hi));
    Fq conj = alpha;
    for (unsigned j = 0; j < r; ++j) {
      m = m * FPoly({-conj, Fq::one(hi)}, Fq::zero(hi));
      conj = conj.pow(lo.size());
    }
    // pull coefficients back into `lo` by searching the image of `lo`
    std::map<std::uint64_t, std::uint64_t> back;
    for (std::uint64_t v = 0; v < lo.size(); ++v)
      back[embed(Fq(lo, v), gens_[i - 1]).index()] = v;
    std::vector<Fq> c;
    for (const auto &x : m.coeffs()) {
      auto it = back.find(x.index());
      if (it == back.end()) throw Error("relative modulus not defined over lower level");
      c.emplace_back(lo, it->second);
    }
    return FPoly(std::move(c), Fq::zero(lo));
  }

  friend auto operator==(const FieldTower &a, const FieldTower &b) -> bool {
    return a.levels_ == b.levels_;
  }

private:
  [[nodiscard]] auto index_of(const Field &F) const -> std::size_t {
    for (std::size_t i = 0; i < levels_.size(); ++i)
      if (levels_[i] == &F) return i;
    throw Error("element does not belong to this tower");
  }

  std::vector<const Field *> levels_;
  std::vector<Fq> gens_;
};

} // namespace rdp
