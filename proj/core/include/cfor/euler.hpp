#pragma once

// Compressible Euler equations in conservative form, discretized by central DSC
// differentiation of the flux components.

#include "cfor/field.hpp"
#include "cfor/grid_ops.hpp"
#include "cfor/kernels.hpp"

namespace cfor {

/// Conservative variables: (rho, rho u, E) in 1D, (rho, rho u, rho v, E) in 2D.
struct EulerState {
  FieldSet q;
  double gamma = 1.4;

  int dims() const { return q.size() == 4 ? 2 : 1; }
  const Grid& grid() const { return q.front().grid(); }
  const Field& rho() const { return q[0]; }
  const Field& mom_x() const { return q[1]; }
  const Field& mom_y() const { return q[2]; }
  const Field& energy() const { return q.back(); }

  /// Throws InvalidArgument unless q has 3 (1D) or 4 (2D) fields on one grid.
  void validate() const;
};

/// Strict rejects rho <= 0 and p <= 0. DensityOnly lets a pressure undershoot through;
/// the fluxes stay defined as long as rho > 0.
enum class Positivity { Strict, DensityOnly };

struct Primitive {
  Field rho;
  Field u;
  Field v;  // empty in 1D
  Field p;
};

/// u = m / rho, p = (gamma - 1)(E - |m|^2 / (2 rho)).
/// Throws PositivityFailure at the first point with rho <= 0 or, when strict, p <= 0.
Primitive primitive_from_conservative(const EulerState& state, Positivity check = Positivity::Strict);

/// Inverse of primitive_from_conservative; `prim.v` empty selects 1D.
EulerState conservative_from_primitive(const Primitive& prim, double gamma = 1.4);

/// c = sqrt(gamma max(p, 0) / rho) pointwise.
Field sound_speed(const Primitive& prim, double gamma);

/// -dF/dx with F = (rho u, rho u^2 + p, u (E + p)).
FieldSet euler_rhs_1d(const EulerState& state, const Differentiator& d, Positivity check = Positivity::Strict);
FieldSet euler_rhs_1d(const EulerState& state, const KernelSpec& spec);

/// -dF/dx - dG/dy, with G = (rho v, rho u v, rho v^2 + p, v (E + p)).
FieldSet euler_rhs_2d(const EulerState& state, const Differentiator& d, Positivity check = Positivity::Strict);
FieldSet euler_rhs_2d(const EulerState& state, const KernelSpec& spec);

/// Sum of each conserved component over the grid.
std::vector<double> conserved_totals(const EulerState& state);

}  // namespace cfor
