#pragma once

#include <string>
#include <vector>

#include "rdp/singularity/classify.hpp"
#include "rdp/weierstrass/weierstrass.hpp"

namespace rdp {

/// A singular point of the surface, as one representative of a Galois orbit.
struct SingularPoint {
  bool t_chart = false;     // chart t = 1 (then s = 0); otherwise chart s = 1
  AlgebraicPoint point;     // coordinates (t or s, x, y) over point.tower.top()
  MPoly local;              // the chart equation translated to the point
  unsigned residue_degree = 1; // degree of the residue field over the prime field

  [[nodiscard]] auto orbit() const -> unsigned { return point.orbit; }
  [[nodiscard]] auto describe() const -> std::string {
    std::string s = t_chart ? "chart t=1: (s, x, y) = (" : "chart s=1: (t, x, y) = (";
    for (std::size_t i = 0; i < point.coords.size(); ++i) {
      if (i) s += ", ";
      s += point.coords[i].to_string();
    }
    return s + ")";
  }
};

namespace detail {

inline auto chart_singular_points(const WeierstrassEq &e, bool t_chart) -> std::vector<SingularPoint> {
  const MPoly F = e.chart_polynomial(t_chart);
  std::vector<MPoly> sys{F, F.derivative(0), F.derivative(1), F.derivative(2)};
  // the chart t = 1 only contributes the fiber s = 0
  if (t_chart) sys.push_back(MPoly::variable(e.field(), 3, 0));
  auto r = eliminate(sys);
  if (r.positive_dimensional) throw Error("positive-dimensional singular locus");
  std::vector<SingularPoint> out;
  for (auto &pt : r.points) {
    MPoly local = lift_poly(F, pt.tower).translated(pt.coords);
    const unsigned deg = pt.tower.base().degree() * pt.orbit;
    out.push_back({t_chart, pt, std::move(local), deg});
  }
  return out;
}

} // namespace detail

/// Singular points of the Weierstrass surface in the charts s = 1 and t = 1.
/// The only point outside both charts is the base point t = s = 0, which is
/// smooth (see base_point_is_smooth).
inline auto singular_points(const WeierstrassEq &e) -> std::vector<SingularPoint> {
  auto a = detail::chart_singular_points(e, false);
  auto b = detail::chart_singular_points(e, true);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Smoothness of the surface at its point with t = s = 0. Away from
/// characteristic 2 this is the chart x = 1 at (t, s, y) = (0, 0, 1), where
/// dF/dy = 2. In characteristic 2 that chart is a non-etale double cover, so
/// the chart y = 1 is used at (t, s, x) = (0, 0, 1), where dF/dx = 3 x^2.
inline auto base_point_is_smooth(const WeierstrassEq &e) -> bool {
  const Field &F = e.field();
  // F restricted to t = s = 0: only the degree-0 parts of the a_i survive,
  // and they are all zero since deg a_i = i >= 1.
  if (F.characteristic() != 2) {
    // y^2 - 1 = 0 at y = 1; partial in y is 2y
    return !Fq::from_int(F, 2).is_zero();
  }
  // 1 - x^3 = 0 at x = 1; partial in x is 3x^2
  return !Fq::from_int(F, 3).is_zero();
}

struct SurfaceSingularities {
  std::vector<SingularPoint> points;
  std::vector<RdpVerdict> verdicts; // parallel to points
  RdpConfiguration configuration;
};

/// Classify the given singular points and assemble the configuration,
/// counting each orbit with its size. `known_types`, if given, is parallel to
/// the points and cross-checks the resolution type.
inline auto classify_points(const WeierstrassEq &e, std::vector<SingularPoint> points,
                            const std::vector<std::optional<AdeComponent>> &known_types = {})
    -> SurfaceSingularities {
  SurfaceSingularities S;
  S.points = std::move(points);
  std::vector<RdpClass> classes;
  for (std::size_t i = 0; i < S.points.size(); ++i) {
    const auto hint = i < known_types.size() ? known_types[i] : std::nullopt;
    S.verdicts.push_back(classify_rdp(S.points[i].local, hint));
    for (unsigned k = 0; k < S.points[i].orbit(); ++k) classes.push_back(S.verdicts.back().cls);
  }
  S.configuration = RdpConfiguration(std::move(classes), e.characteristic());
  return S;
}

inline auto analyze_singularities(const WeierstrassEq &e) -> SurfaceSingularities {
  return classify_points(e, singular_points(e));
}

} // namespace rdp
