#pragma once

#include <limits>

#include "cfor/error.hpp"
#include "cfor/field.hpp"

namespace cfor {

/// Classic four-stage Runge-Kutta step. `rhs` maps a FieldSet to its tendency.
/// Throws BlowUp(step) if the updated state is not finite.
template <class Rhs>
FieldSet rk4_step(const FieldSet& u, Rhs&& rhs, double dt, long step = 0) {
  const FieldSet k1 = rhs(u);
  FieldSet tmp = u;
  axpy(0.5 * dt, k1, tmp);
  const FieldSet k2 = rhs(tmp);
  tmp = u;
  axpy(0.5 * dt, k2, tmp);
  const FieldSet k3 = rhs(tmp);
  tmp = u;
  axpy(dt, k3, tmp);
  const FieldSet k4 = rhs(tmp);

  // The stage increments are combined before touching u, so u is rounded once per step.
  FieldSet inc = k1;
  axpy(1.0, k4, inc);
  axpy(2.0, k2, inc);
  axpy(2.0, k3, inc);
  FieldSet out = u;
  axpy(dt / 6.0, inc, out);
  if (!all_finite(out)) throw BlowUp(step);
  return out;
}

/// Three-stage strong-stability-preserving Runge-Kutta (Shu-Osher form) with a projection
/// applied after every stage:
///   u1 = P(u + dt L(u))
///   u2 = P(3/4 u + 1/4 (u1 + dt L(u1)))
///   u' = P(1/3 u + 2/3 (u2 + dt L(u2)))
template <class Rhs, class Project>
FieldSet rk3_projection_step(const FieldSet& u, Rhs&& rhs, Project&& project, double dt, long step = 0) {
  FieldSet u1 = u;
  axpy(dt, rhs(u), u1);
  u1 = project(u1);

  FieldSet u2 = u1;
  axpy(dt, rhs(u1), u2);
  u2 = project(linear_combination(0.75, u, 0.25, u2));

  FieldSet u3 = u2;
  axpy(dt, rhs(u2), u3);
  FieldSet out = project(linear_combination(1.0 / 3.0, u, 2.0 / 3.0, u3));
  if (!all_finite(out)) throw BlowUp(step);
  return out;
}

struct StepControl {
  enum class Mode { FixedDt, Cfl };
  Mode mode = Mode::Cfl;
  double dt = 0.0;
  double cfl = 0.5;
  /// Reynolds number; infinity drops the viscous term.
  double reynolds = std::numeric_limits<double>::infinity();

  static StepControl fixed(double dt);
  static StepControl courant(double cfl, double reynolds = std::numeric_limits<double>::infinity());
  void validate() const;
};

/// Incompressible CFL limit:
///   dt = cfl / [max(|u|/dx + |v|/dy) + (2/Re)(1/dx^2 + 1/dy^2)].
/// A 1D velocity (v empty) drops the y terms.
double compute_dt_incompressible(const Field& u, const Field* v, const StepControl& control);

/// Compressible extension using acoustic speeds:
///   dt = cfl / max((|u|+c)/dx + (|v|+c)/dy).
/// `sound_speed` is pointwise c; v may be null for 1D.
double compute_dt_compressible(const Field& u, const Field* v, const Field& sound_speed,
                               const StepControl& control);

}  // namespace cfor
