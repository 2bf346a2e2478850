#pragma once

namespace maslov {

enum class GrayZonePolicy { Strict, Permissive };

// Use one instance per batch so integer decisions stay consistent.
struct Tolerances {
  double spec = 1e-9;          // structural invariants (frames, Peirce, ...)
  double rank = 1e-8;
  double shilov = 1e-7;        // residual allowed for membership in S
  double transverse = 1e-7;    // angle within this of π counts as coincident
  double integral = 1e-6;      // max |raw - round(raw)| for integer outputs
  double tangency_slope = 1e-6;
  GrayZonePolicy mode = GrayZonePolicy::Strict;

  double gray_zone() const { return 10.0 * transverse; }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace maslov
