#pragma once

#include <string>

#include "rdp/singularity/points.hpp"

namespace rdp {

enum class FibrationKind { Elliptic, QuasiElliptic, Invalid };

inline auto kind_name(FibrationKind k) -> std::string {
  switch (k) {
  case FibrationKind::Elliptic: return "elliptic";
  case FibrationKind::QuasiElliptic: return "quasi-elliptic";
  case FibrationKind::Invalid: return "invalid";
  }
  return "";
}

/// Elliptic iff the discriminant is nonzero. With zero discriminant the
/// generic fiber is regular exactly when the surface has finitely many
/// singular points, which can only happen in characteristic 2 or 3.
inline auto fibration_kind(const WeierstrassEq &e) -> FibrationKind {
  if (!compute_invariants(e).delta.is_zero()) return FibrationKind::Elliptic;
  const auto p = e.characteristic();
  if (p != 2 && p != 3) return FibrationKind::Invalid;
  try {
    (void)singular_points(e);
  } catch (const Error &err) {
    if (std::string(err.what()) == "positive-dimensional singular locus") return FibrationKind::Invalid;
    throw;
  }
  return FibrationKind::QuasiElliptic;
}

} // namespace rdp
