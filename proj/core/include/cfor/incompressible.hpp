#pragma once

// 2D incompressible Euler: advective right-hand side and the pressure projection.

#include <memory>
#include <vector>

#include "cfor/field.hpp"
#include "cfor/grid_ops.hpp"
#include "cfor/kernels.hpp"

namespace cfor {

struct IncompressibleState {
  Field u;
  Field v;
  /// Potential from the most recent projection (diagnostic).
  Field phi;
};

/// -(u du/dx + v du/dy, u dv/dx + v dv/dy). Pressure enters only through the projection.
FieldSet incompressible_rhs(const Field& u, const Field& v, const Differentiator& d);
FieldSet incompressible_rhs(const IncompressibleState& state, const KernelSpec& spec);

/// Discrete Laplacian used in the pressure Poisson equation.
enum class PoissonOperator {
  /// D1x D1x + D1y D1y from the q = 1 stencil. The divergence of the projected field then
  /// equals the Poisson residual exactly.
  CompositeFirstDerivative,
  /// D2x + D2y from the q = 2 stencil.
  SecondDerivative,
};

enum class Preconditioner {
  None,
  /// Inverse of the operator's Fourier symbol applied with FFTs; null modes are zeroed.
  Spectral,
};

struct ProjectionOptions {
  /// Poisson residual tolerance, max norm.
  double tol = 1e-12;
  /// 0 selects 10 N^2 with N the larger grid extent.
  long max_iterations = 0;
  PoissonOperator op = PoissonOperator::CompositeFirstDerivative;
  Preconditioner preconditioner = Preconditioner::Spectral;
};

struct ProjectionResult {
  Field u;
  Field v;
  Field phi;
  long iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
};

/// Projects a periodic 2D velocity onto the discretely divergence-free subspace:
/// solves L phi = div u* (mean-subtracted rhs, zero-mean phi) with preconditioned BiCG and
/// returns u* - grad phi.
///
/// A Projector owns FFT workspaces and must not be used from two threads at once.
class Projector {
 public:
  Projector(const Grid& grid, const KernelSpec& spec, ProjectionOptions options = {});
  ~Projector();
  Projector(Projector&&) noexcept;
  Projector& operator=(Projector&&) noexcept;
  Projector(const Projector&) = delete;
  Projector& operator=(const Projector&) = delete;

  const ProjectionOptions& options() const;
  const Differentiator& differentiator() const;

  /// Throws ConvergenceFailure with the residual history if BiCG does not converge.
  ProjectionResult project(const Field& u, const Field& v) const;

  Field divergence(const Field& u, const Field& v) const;
  Field laplacian(const Field& phi) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// 0.5 * sum (u^2 + v^2) dx dy.
double kinetic_energy(const Field& u, const Field& v);

/// dv/dx - du/dy.
Field vorticity(const Field& u, const Field& v, const Differentiator& d);

}  // namespace cfor
