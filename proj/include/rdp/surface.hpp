#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rdp/fibers/tate.hpp"
#include "rdp/weierstrass/kind.hpp"

namespace rdp {

/// Everything the pipeline derives from one Weierstrass equation.
struct SurfaceReport {
  SurfaceInvariants invariants;
  FibrationKind kind = FibrationKind::Invalid;
  std::optional<FiberConfiguration> fibers;
  SurfaceSingularities singular;
  // parallel to singular.points: the fiber the point lies on, if elliptic
  std::vector<std::optional<std::size_t>> fiber_of_point;
};

namespace detail {

/// Whether the singular point lies on the fiber over the place.
inline auto point_on_place(const SingularPoint &sp, const Place &pl) -> bool {
  if (pl.at_infinity) return sp.t_chart;
  if (sp.t_chart) return false;
  const FPoly pi = pl.form.at_s1();
  const Fq t0 = sp.point.coords[0];
  Fq acc = Fq::zero(t0.field());
  for (std::size_t i = pi.coeffs().size(); i-- > 0;) acc = acc * t0 + sp.point.tower.lift(pi.coeffs()[i]);
  return acc.is_zero();
}

} // namespace detail

/// Invariants, fibration kind, fibers (elliptic case) and classified
/// singular points. In the elliptic case each singular point is matched to
/// the fiber it lies on; the Kodaira type fixes the Dynkin type and the
/// resolution fingerprint must agree with it.
inline auto analyze_surface(const WeierstrassEq &e) -> SurfaceReport {
  SurfaceReport R;
  R.invariants = compute_invariants(e);
  R.kind = fibration_kind(e);
  if (R.kind == FibrationKind::Invalid) throw Error("not an RDP del Pezzo surface: the generic fiber is singular");
  std::vector<std::optional<AdeComponent>> hints;
  auto pts = singular_points(e);
  if (R.kind == FibrationKind::Elliptic) {
    R.fibers = fiber_configuration(e);
    for (auto &sp : pts) {
      std::optional<std::size_t> which;
      for (std::size_t i = 0; i < R.fibers->fibers.size(); ++i)
        if (detail::point_on_place(sp, R.fibers->fibers[i].place)) which = i;
      if (!which) throw Error("internal: singular point off the singular fibers");
      const auto &fr = R.fibers->fibers[*which];
      if (!fr.type.rdp()) throw Error("internal: singular point on a fiber of type " + fr.type.to_string());
      if (sp.orbit() != fr.place.degree)
        throw Error("internal: singular point and place " + fr.place.name() + " have different degrees");
      R.fiber_of_point.push_back(which);
      hints.push_back(fr.type.rdp());
    }
    // every reducible fiber carries exactly one singular point
    for (std::size_t i = 0; i < R.fibers->fibers.size(); ++i) {
      const bool reducible = R.fibers->fibers[i].type.rdp().has_value();
      const auto n = std::count(R.fiber_of_point.begin(), R.fiber_of_point.end(), std::optional<std::size_t>(i));
      if (n != (reducible ? 1 : 0))
        throw Error("internal: fiber " + R.fibers->fibers[i].place.name() + " carries " + std::to_string(n) +
                    " singular points");
    }
  }
  R.singular = classify_points(e, std::move(pts), hints);
  if (R.kind == FibrationKind::QuasiElliptic) R.fiber_of_point.assign(R.singular.points.size(), std::nullopt);
  if (R.fibers && !(R.fibers->gamma == R.singular.configuration.lattice()))
    throw Error("internal: fiber lattice " + R.fibers->gamma.to_string() + " differs from the singularities " +
                R.singular.configuration.lattice().to_string());
  return R;
}

} // namespace rdp
