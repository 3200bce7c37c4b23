#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdp/algebra/eliminate.hpp"
#include "rdp/singularity/tjurina.hpp"

namespace rdp {

/// Truncation degree of the root germ. Terms of degree >= precision are
/// unknown; each blow-up loses 2.
inline constexpr unsigned kRootPrecision = 36;
inline constexpr unsigned kMaxBlowupDepth = 12;

/// A surface germ f(a, b, c) = 0 at the origin, f over its own field.
struct Germ {
  MPoly f;
  unsigned precision = kRootPrecision;
};

struct BlowupChild {
  Germ germ;
  unsigned orbit = 1; // conjugate points represented by this one
};

struct BlowupStep {
  unsigned components = 0; // exceptional curves over the algebraic closure
  std::vector<BlowupChild> children;
};

namespace detail {

/// Copy of f in nvars - 1 variables with variable i removed (f must not involve it).
inline auto drop_variable(const MPoly &f, unsigned i) -> MPoly {
  std::vector<MPoly::Term> out;
  for (auto &[k, c] : f.terms()) {
    auto e = MPoly::exps(k);
    if (e[i] != 0) throw Error("internal: dropped variable still present");
    MPoly::Exps r{};
    for (unsigned j = 0, o = 0; j < f.nvars(); ++j)
      if (j != i) r[o++] = e[j];
    out.emplace_back(MPoly::key(r), c);
  }
  return MPoly::from_terms(f.field(), f.nvars() - 1, std::move(out));
}

/// Dimension of the kernel of a square matrix over a field.
inline auto kernel_basis(std::vector<std::vector<Fq>> M) -> std::vector<std::vector<Fq>> {
  const std::size_t n = M.size();
  const Field &F = M[0][0].field();
  std::vector<int> pivcol;
  std::size_t r = 0;
  std::vector<bool> is_piv(n, false);
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t k = r;
    while (k < n && M[k][c].is_zero()) ++k;
    if (k == n) continue;
    std::swap(M[k], M[r]);
    const Fq inv = Fq::one(F) / M[r][c];
    for (auto &x : M[r]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      const Fq m = M[i][c];
      for (std::size_t j = 0; j < n; ++j) M[i][j] -= m * M[r][j];
    }
    pivcol.push_back(static_cast<int>(c));
    is_piv[c] = true;
    ++r;
  }
  std::vector<std::vector<Fq>> basis;
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<Fq> v(n, Fq::zero(F));
    v[fc] = Fq::one(F);
    for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -M[i][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Number of irreducible components of the projective conic q = 0 over the
/// algebraic closure, counted by the dimension of its singular locus.
inline auto conic_components(const MPoly &q) -> unsigned {
  const Field &F = q.field();
  std::vector<std::vector<Fq>> M(3, std::vector<Fq>(3, Fq::zero(F)));
  auto coef = [&](unsigned i, unsigned j) {
    MPoly::Exps e{};
    ++e[i];
    ++e[j];
    return q.coeff(e);
  };
  const bool two = F.characteristic() == 2;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j)
      M[i][j] = i == j ? (two ? Fq::zero(F) : Fq::from_int(F, 2) * coef(i, i)) : coef(i, j);
  auto K = kernel_basis(M);
  std::size_t locus = K.size();
  if (two) {
    // the radical of the polar form; q restricted to it is a Frobenius-twisted linear form
    for (auto &v : K)
      if (!q.evaluate({v[0], v[1], v[2]}).is_zero()) {
        --locus;
        break;
      }
  }
  if (locus == 0) return 1;
  if (locus == 1) return 2;
  if (locus == 2) return 1;
  throw Error("internal: vanishing tangent cone");
}

} // namespace detail

/// Blow up the germ at the origin and return the exceptional curve count
/// and the singular points of the strict transform on the exceptional curve.
inline auto blow_up_once(const Germ &g) -> BlowupStep {
  const MPoly &f = g.f;
  if (f.nvars() != 3) throw Error("internal: germ must have three variables");
  if (!f.constant_term().is_zero()) throw Error("polynomial does not vanish at the origin");
  const int ord = f.order();
  if (ord < 2) throw Error("already smooth");
  if (ord >= 3) throw Error("not a rational double point");
  if (g.precision < 4) throw Error("truncated polynomial lacks the precision for a blow-up");

  const Field &F = f.field();
  const MPoly q = f.homogeneous_part(2);
  const MPoly c = f.homogeneous_part(3);
  const Fq one = Fq::one(F), zero = Fq::zero(F);
  BlowupStep step;
  step.components = detail::conic_components(q);

  const std::array<MPoly, 3> dq{q.derivative(0), q.derivative(1), q.derivative(2)};
  using Img = std::array<MPoly::Exps, MPoly::kMaxVars>;

  auto make_child = [&](const Img &img, unsigned excvar, const AlgebraicPoint &pt,
                        const std::vector<int> &slot) {
    MPoly::Exps d{};
    d[excvar] = 2;
    MPoly h = f.monomial_substitution(img).divide_monomial(d);
    h = detail::lift_poly(h, pt.tower);
    std::vector<Fq> shift(3, Fq::zero(pt.tower.top()));
    for (unsigned i = 0; i < 3; ++i)
      if (slot[i] >= 0) shift[i] = pt.coords[static_cast<std::size_t>(slot[i])];
    h = h.translated(shift).truncated(g.precision - 2);
    step.children.push_back({{h, g.precision - 2}, pt.orbit});
  };

  // chart a != 0: (a, b, c) = (u, u v, u w); points [1 : v : w]
  {
    auto at = [&](const MPoly &h) { return detail::drop_variable(h.substitute(0, one), 0); };
    std::vector<MPoly> sys{at(q), at(dq[1]), at(dq[2]), at(c)};
    auto r = eliminate(sys);
    if (r.positive_dimensional) throw Error("not a rational double point");
    Img img{};
    img[0] = {1, 0, 0, 0};
    img[1] = {1, 1, 0, 0};
    img[2] = {1, 0, 1, 0};
    for (auto &pt : r.points) make_child(img, 0, pt, {-1, 0, 1});
  }
  // chart a = 0, b != 0: (a, b, c) = (v u, u, w u); points [0 : 1 : w]
  {
    auto at = [&](const MPoly &h) {
      return detail::drop_variable(detail::drop_variable(h.substitute(0, zero).substitute(1, one), 0), 0);
    };
    std::vector<MPoly> sys{at(q), at(dq[0]), at(dq[2]), at(c)};
    auto r = eliminate(sys);
    if (r.positive_dimensional) throw Error("not a rational double point");
    Img img{};
    img[0] = {1, 1, 0, 0};
    img[1] = {0, 1, 0, 0};
    img[2] = {0, 1, 1, 0};
    for (auto &pt : r.points) make_child(img, 1, pt, {-1, -1, 0});
  }
  // the point [0 : 0 : 1]: (a, b, c) = (v u, w u, u)
  {
    const std::vector<Fq> e3{zero, zero, one};
    if (q.evaluate(e3).is_zero() && dq[0].evaluate(e3).is_zero() && dq[1].evaluate(e3).is_zero() &&
        c.evaluate(e3).is_zero()) {
      Img img{};
      img[0] = {1, 0, 1, 0};
      img[1] = {0, 1, 1, 0};
      img[2] = {0, 0, 1, 0};
      AlgebraicPoint pt{FieldTower(F), {}, 1};
      make_child(img, 2, pt, {-1, -1, -1});
    }
  }
  return step;
}

/// Blow-up resolution of a germ. Each node holds the exceptional curve
/// count and, when the germ's precision allows it, the Tjurina dimension.
struct BlowupTree {
  std::optional<unsigned> m;
  unsigned components = 0;
  std::vector<std::pair<unsigned, BlowupTree>> children; // (orbit size, subtree)

  static auto build(const Germ &g, unsigned depth = 0) -> BlowupTree {
    if (depth >= kMaxBlowupDepth) throw Error("not a rational double point");
    BlowupTree t;
    try {
      t.m = tjurina_dimension(g.f, g.precision).m;
    } catch (const Error &e) {
      if (std::string(e.what()).rfind("internal", 0) == 0) throw;
    }
    auto step = blow_up_once(g);
    t.components = step.components;
    for (auto &ch : step.children) t.children.emplace_back(ch.orbit, build(ch.germ, depth + 1));
    return t;
  }

  /// "comps[n*child,...]" with children merged by shape and sorted; the
  /// ground field and the Tjurina data do not enter.
  [[nodiscard]] auto shape() const -> std::string { return key(false); }
  /// As shape(), with every node prefixed by "m:" ("?:" when unknown).
  [[nodiscard]] auto fingerprint() const -> std::string { return key(true); }

  [[nodiscard]] auto depth() const -> unsigned {
    unsigned d = 0;
    for (auto &c : children) d = std::max(d, c.second.depth());
    return d + 1;
  }

private:
  [[nodiscard]] auto key(bool with_m) const -> std::string {
    std::map<std::string, unsigned> kids;
    for (auto &[n, c] : children) kids[c.key(with_m)] += n;
    std::string s = with_m ? (m ? std::to_string(*m) : std::string("?")) + ":" : "";
    s += std::to_string(components) + "[";
    bool first = true;
    for (auto &[k, n] : kids) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(n) + "*" + k;
    }
    return s + "]";
  }
};

} // namespace rdp
