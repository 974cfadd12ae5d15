#pragma once

// Discrete singular convolution (DSC) kernels and the stencils derived from them.
//
// Two delta-type kernel families are supported:
//   * Hermite: (1/sigma) exp(-x^2 / 2 sigma^2) sum_{m=0}^{n/2} (-1/4)^m / (sqrt(2 pi) m!) H_2m(x / (sqrt(2) sigma))
//   * regularized Shannon (RSK): sin(pi x / dx) / (pi x / dx) * exp(-x^2 / 2 sigma^2)
// with sigma = r * dx. Stencil weights are stored in grid units: a q-th derivative
// stencil must be divided by dx^q when applied (see StencilWeights::physical()).

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cfor {

enum class KernelFamily { Hermite, RegularizedShannon };

std::string to_string(KernelFamily family);
KernelFamily parse_kernel_family(const std::string& name);

struct KernelSpec {
  KernelFamily family = KernelFamily::Hermite;
  int half_width = 32;     // W; the stencil spans 2W+1 points
  double ratio = 3.05;     // r = sigma / dx
  int hermite_order = 88;  // n; ignored for RSK
  double spacing = 1.0;    // dx

  double sigma() const { return ratio * spacing; }

  /// Throws InvalidArgument unless W >= 1, r > 0, dx > 0 and (Hermite) n even and >= 2.
  void validate() const;

  static KernelSpec hermite(double r, int half_width = 32, int order = 88, double spacing = 1.0);
  static KernelSpec shannon(double r, int half_width = 32, double spacing = 1.0);

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string describe(const KernelSpec& spec);

/// Kernel value and its first two x-derivatives at one offset.
struct KernelDerivatives {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

double hermite_kernel_value(double x, const KernelSpec& spec);
double rsk_kernel_value(double x, const KernelSpec& spec);

/// Analytic value, first and second derivative of the kernel at offset x.
KernelDerivatives kernel_derivatives(double x, const KernelSpec& spec);

/// Immutable set of convolution weights.
///
/// On-grid stencils (half_grid() == false) hold 2W+1 weights for offsets -W..W and
/// approximate f^(q)(x_i) ~ dx^-q * sum_j w_j f(x_{i+j}).
/// Half-grid stencils hold 2W weights for offsets (j + 1/2), j = -W..W-1, and map
/// grid values to the midpoint between the two centre points.
class StencilWeights {
 public:
  StencilWeights(int order, int half_width, bool half_grid, std::vector<double> weights,
                 bool includes_delta_scaling = false, double asymmetry_removed = 0.0);

  int order() const { return order_; }
  int half_width() const { return half_width_; }
  bool half_grid() const { return half_grid_; }
  bool includes_delta_scaling() const { return includes_delta_scaling_; }
  /// Largest |parity defect| removed by symmetrization after analytic evaluation.
  double asymmetry_removed() const { return asymmetry_removed_; }

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }

  /// Offset in units of dx of the k-th weight: k - W on-grid, k - W + 1/2 half-grid.
  double offset(std::size_t k) const;

  /// Weight at integer offset j (on-grid stencils only).
  double at(int j) const { return weights_[static_cast<std::size_t>(j + half_width_)]; }

  /// Copy with the dx^-q factor folded into the weights.
  StencilWeights physical(double spacing) const;

 private:
  int order_;
  int half_width_;
  bool half_grid_;
  std::vector<double> weights_;
  bool includes_delta_scaling_;
  double asymmetry_removed_;
};

/// On-grid stencil for the q-th derivative, q in {0, 1, 2}. Throws UnsupportedOrder.
StencilWeights stencil(const KernelSpec& spec, int q);

/// Midpoint prediction/restoration weights (q = 0 kernel at half-integer offsets),
/// normalized to unit sum.
StencilWeights halfgrid_stencil(const KernelSpec& spec);

/// Writes "offset,weight" rows with 17 significant digits.
void write_stencil_table(std::ostream& out, const StencilWeights& weights);

}  // namespace cfor
