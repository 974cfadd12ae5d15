#include "cfor/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "cfor/error.hpp"

namespace cfor {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi t) and cos(pi t) with exact zeros at integers and half-integers.
double sin_pi(double t) {
  double r = t - 2.0 * std::round(0.5 * t);  // r in [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

double cos_pi(double t) {
  double r = t - 2.0 * std::round(0.5 * t);
  if (r == 0.5 || r == -0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0 || r == -1.0) return -1.0;
  return std::cos(kPi * r);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericalError(std::string("non-finite intermediate in ") + what);
  }
}

// Hermite kernel and derivatives. With y = x / (sqrt(2) sigma), g = exp(-y^2), b = dy/dx and
// S_p = sum_m c_m d^p/dy^p H_2m(y), c_m = (-1/4)^m / m!:
//   K   = A g S_0
//   K'  = A b g (S_1 - 2 y S_0)
//   K'' = A b^2 g ((4 y^2 - 2) S_0 - 4 y S_1 + S_2)
// where A = 1 / (sigma sqrt(2 pi)), H'_k = 2k H_{k-1}, H''_k = 4k(k-1) H_{k-2}.
KernelDerivatives hermite_derivatives(double x, const KernelSpec& spec) {
  const double sigma = spec.sigma();
  const double b = 1.0 / (std::numbers::sqrt2 * sigma);
  const double y = x * b;
  const double y2 = y * y;
  // exp(-y^2) underflows to zero well before the Hermite sum can overflow.
  if (y2 > 745.0) return {};

  const int n = spec.hermite_order;
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    h[k + 1] = 2.0 * y * h[k] - 2.0 * k * h[k - 1];
  }

  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  double c = 1.0;
  for (int m = 0; m <= n / 2; ++m) {
    const int k = 2 * m;
    s0 += c * h[k];
    if (k >= 1) s1 += c * 2.0 * k * h[k - 1];
    if (k >= 2) s2 += c * 4.0 * k * (k - 1) * h[k - 2];
    c *= -0.25 / (m + 1);
  }
  require_finite(s0, "Hermite sum");
  require_finite(s1, "Hermite first-derivative sum");
  require_finite(s2, "Hermite second-derivative sum");

  const double g = std::exp(-y2) / (sigma * std::sqrt(2.0 * kPi));
  KernelDerivatives d;
  d.value = g * s0;
  d.first = g * b * (s1 - 2.0 * y * s0);
  d.second = g * b * b * ((4.0 * y2 - 2.0) * s0 - 4.0 * y * s1 + s2);
  require_finite(d.value, "Hermite kernel");
  require_finite(d.first, "Hermite kernel derivative");
  require_finite(d.second, "Hermite kernel second derivative");
  return d;
}

// sinc(t) = sin(pi t) / (pi t) and its t-derivatives.
struct SincDerivatives {
  double value, first, second;
};

SincDerivatives sinc_derivatives(double t) {
  const double pt = kPi * t;
  if (std::abs(t) < 1e-3) {
    const double p2 = kPi * kPi;
    const double t2 = t * t;
    return {1.0 - p2 * t2 / 6.0 + p2 * p2 * t2 * t2 / 120.0,
            -p2 * t / 3.0 + p2 * p2 * t2 * t / 30.0,
            -p2 / 3.0 + p2 * p2 * t2 / 10.0};
  }
  const double s = sin_pi(t);
  const double c = cos_pi(t);
  return {s / pt, (pt * c - s) / (pt * t), (-pt * pt * s - 2.0 * pt * c + 2.0 * s) / (pt * t * t)};
}

KernelDerivatives rsk_derivatives(double x, const KernelSpec& spec) {
  const double dx = spec.spacing;
  const double sigma = spec.sigma();
  const double t = x / dx;
  const SincDerivatives s = sinc_derivatives(t);
  const double s1 = s.first / dx;
  const double s2 = s.second / (dx * dx);
  const double g = std::exp(-x * x / (2.0 * sigma * sigma));
  const double g1 = -x / (sigma * sigma) * g;
  const double g2 = (x * x / (sigma * sigma * sigma * sigma) - 1.0 / (sigma * sigma)) * g;
  return {s.value * g, s1 * g + s.value * g1, s2 * g + 2.0 * s1 * g1 + s.value * g2};
}

// Kernel derivatives evaluated in grid units (dx = 1), scaled to dimensionless weights.
// Hermite is a density (units 1/length), so the quadrature factor dx is folded in.
KernelDerivatives grid_unit_derivatives(double offset, const KernelSpec& spec) {
  KernelSpec unit = spec;
  unit.spacing = 1.0;
  return kernel_derivatives(offset, unit);
}

double select(const KernelDerivatives& d, int q) {
  switch (q) {
    case 0: return d.value;
    case 1: return d.first;
    default: return d.second;
  }
}

}  // namespace

std::string to_string(KernelFamily family) {
  return family == KernelFamily::Hermite ? "hermite" : "rsk";
}

KernelFamily parse_kernel_family(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "hermite" || lower == "hk") return KernelFamily::Hermite;
  if (lower == "rsk" || lower == "shannon") return KernelFamily::RegularizedShannon;
  throw InvalidArgument("unknown kernel family '" + name + "' (expected hermite or rsk)");
}

void KernelSpec::validate() const {
  if (half_width < 1) throw InvalidArgument("kernel half-width W must be >= 1");
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw InvalidArgument("kernel ratio r must be > 0");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidArgument("grid spacing must be > 0");
  }
  if (family == KernelFamily::Hermite && (hermite_order < 2 || hermite_order % 2 != 0)) {
    throw InvalidArgument("Hermite order n must be even and >= 2");
  }
}

KernelSpec KernelSpec::hermite(double r, int half_width, int order, double spacing) {
  KernelSpec s{KernelFamily::Hermite, half_width, r, order, spacing};
  s.validate();
  return s;
}

KernelSpec KernelSpec::shannon(double r, int half_width, double spacing) {
  KernelSpec s{KernelFamily::RegularizedShannon, half_width, r, 0, spacing};
  s.validate();
  return s;
}

std::string describe(const KernelSpec& spec) {
  std::ostringstream os;
  os << to_string(spec.family) << "(W=" << spec.half_width << ", r=" << spec.ratio;
  if (spec.family == KernelFamily::Hermite) os << ", n=" << spec.hermite_order;
  os << ")";
  return os.str();
}

double hermite_kernel_value(double x, const KernelSpec& spec) {
  if (spec.family != KernelFamily::Hermite) throw InvalidArgument("spec is not a Hermite kernel");
  spec.validate();
  return hermite_derivatives(x, spec).value;
}

double rsk_kernel_value(double x, const KernelSpec& spec) {
  if (spec.family != KernelFamily::RegularizedShannon) {
    throw InvalidArgument("spec is not a regularized Shannon kernel");
  }
  spec.validate();
  if (!std::isfinite(x)) throw InvalidArgument("non-finite kernel offset");
  return rsk_derivatives(x, spec).value;
}

KernelDerivatives kernel_derivatives(double x, const KernelSpec& spec) {
  spec.validate();
  if (!std::isfinite(x)) throw InvalidArgument("non-finite kernel offset");
  return spec.family == KernelFamily::Hermite ? hermite_derivatives(x, spec)
                                              : rsk_derivatives(x, spec);
}

StencilWeights::StencilWeights(int order, int half_width, bool half_grid,
                               std::vector<double> weights, bool includes_delta_scaling,
                               double asymmetry_removed)
    : order_(order),
      half_width_(half_width),
      half_grid_(half_grid),
      weights_(std::move(weights)),
      includes_delta_scaling_(includes_delta_scaling),
      asymmetry_removed_(asymmetry_removed) {
  const std::size_t expected = half_grid ? 2 * static_cast<std::size_t>(half_width)
                                         : 2 * static_cast<std::size_t>(half_width) + 1;
  if (weights_.size() != expected) throw InvalidArgument("stencil weight count mismatch");
}

double StencilWeights::offset(std::size_t k) const {
  const double j = static_cast<double>(k) - half_width_;
  return half_grid_ ? j + 0.5 : j;
}

StencilWeights StencilWeights::physical(double spacing) const {
  if (includes_delta_scaling_) return *this;
  const double scale = 1.0 / std::pow(spacing, order_);
  std::vector<double> w(weights_);
  for (double& v : w) v *= scale;
  return {order_, half_width_, half_grid_, std::move(w), true, asymmetry_removed_};
}

StencilWeights stencil(const KernelSpec& spec, int q) {
  if (q < 0 || q > 2) throw UnsupportedOrder(q);
  spec.validate();
  const int w_half = spec.half_width;
  const auto count = static_cast<std::size_t>(2 * w_half + 1);
  std::vector<double> w(count);
  // w_j = delta^(q)(x_i - x_{i+j}) = delta^(q)(-j dx)
  for (int j = -w_half; j <= w_half; ++j) {
    w[static_cast<std::size_t>(j + w_half)] = select(grid_unit_derivatives(-j, spec), q);
  }

  // Enforce exact parity: odd for q = 1, even otherwise.
  const double parity = (q == 1) ? -1.0 : 1.0;
  double defect = 0.0;
  for (int j = 1; j <= w_half; ++j) {
    double& plus = w[static_cast<std::size_t>(w_half + j)];
    double& minus = w[static_cast<std::size_t>(w_half - j)];
    defect = std::max(defect, std::abs(plus - parity * minus));
    const double avg = 0.5 * (plus + parity * minus);
    plus = avg;
    minus = parity * avg;
  }
  if (q == 1) {
    defect = std::max(defect, std::abs(w[static_cast<std::size_t>(w_half)]));
    w[static_cast<std::size_t>(w_half)] = 0.0;
  }
  return {q, w_half, false, std::move(w), false, defect};
}

StencilWeights halfgrid_stencil(const KernelSpec& spec) {
  spec.validate();
  const int w_half = spec.half_width;
  const auto count = static_cast<std::size_t>(2 * w_half);
  std::vector<double> p(count);
  for (int j = -w_half; j < w_half; ++j) {
    p[static_cast<std::size_t>(j + w_half)] = grid_unit_derivatives(j + 0.5, spec).value;
  }
  // Mirror symmetry about the midpoint: p_{-j-1} = p_j.
  double defect = 0.0;
  for (int j = 0; j < w_half; ++j) {
    double& a = p[static_cast<std::size_t>(w_half + j)];
    double& b = p[static_cast<std::size_t>(w_half - j - 1)];
    defect = std::max(defect, std::abs(a - b));
    const double avg = 0.5 * (a + b);
    a = avg;
    b = avg;
  }
  // Pairwise sum keeps the normalization itself symmetric.
  double sum = 0.0;
  for (int j = w_half - 1; j >= 0; --j) sum += 2.0 * p[static_cast<std::size_t>(w_half + j)];
  for (double& v : p) v /= sum;
  return {0, w_half, true, std::move(p), false, defect};
}

void write_stencil_table(std::ostream& out, const StencilWeights& weights) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "offset,weight\n" << std::setprecision(17);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    out << weights.offset(k) << ',' << weights[k] << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace cfor
