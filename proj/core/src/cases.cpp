#include "cfor/cases.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "cfor/error.hpp"

namespace cfor {

std::string to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::Taylor: return "taylor";
    case CaseKind::ShearLayer: return "shear_layer";
    case CaseKind::Wavepacket: return "wavepacket";
    case CaseKind::IsentropicVortex: return "vortex";
    case CaseKind::ShockEntropy: return "shock_entropy";
  }
  return "unknown";
}

CaseKind parse_case_kind(const std::string& name) {
  if (name == "taylor") return CaseKind::Taylor;
  if (name == "shear_layer" || name == "shear") return CaseKind::ShearLayer;
  if (name == "wavepacket") return CaseKind::Wavepacket;
  if (name == "vortex" || name == "isentropic_vortex") return CaseKind::IsentropicVortex;
  if (name == "shock_entropy" || name == "shock") return CaseKind::ShockEntropy;
  throw InvalidArgument("unknown case '" + name + "'");
}

TaylorPoint taylor_exact(double x, double y, double /*t*/, double k) {
  return {-std::cos(k * x) * std::sin(k * y), std::sin(k * x) * std::cos(k * y),
          -0.25 * (std::cos(2.0 * k * x) + std::cos(2.0 * k * y))};
}

double taylor_pressure_ppw(int n, double k) { return n / (2.0 * k); }

VelocityPoint shear_layer_init(double x, double y, double thickness, double delta) {
  const double pi = std::numbers::pi;
  const double u = y <= pi ? std::tanh((2.0 * y - pi) / (2.0 * thickness))
                           : std::tanh((3.0 * pi - 2.0 * y) / (2.0 * thickness));
  return {u, delta * std::sin(x)};
}

double wavepacket_exact(double x, double t, const WavepacketParams& p) {
  const double period = p.upper - p.lower;
  const double half = 0.5 * period;
  // Distance from the advected centre, taken on the periodic interval.
  double xi = std::fmod(x - p.center - p.speed * t + half, period);
  if (xi < 0.0) xi += period;
  xi -= half;
  return std::sin(2.0 * std::numbers::pi * p.k * xi) * std::exp(-xi * xi / (p.width * p.width));
}

namespace {

double wrap_centered(double d, double length) {
  double r = std::fmod(d + 0.5 * length, length);
  if (r < 0.0) r += length;
  return r - 0.5 * length;
}

}  // namespace

double vortex_center_temperature_perturbation(const VortexParams& p) {
  const double pi = std::numbers::pi;
  return -(p.gamma - 1.0) * p.strength * p.strength * std::exp(2.0 * p.eta) / (16.0 * p.eta * p.gamma * pi * pi);
}

FlowPoint vortex_exact(double x, double y, double t, const VortexParams& p) {
  if (1.0 + vortex_center_temperature_perturbation(p) <= 0.0) {
    throw InvalidArgument("vortex too strong: temperature at the centre is non-positive");
  }
  const double pi = std::numbers::pi;
  const double dx = wrap_centered(x - p.x0 - p.u_inf * t, p.length);
  const double dy = wrap_centered(y - p.y0 - p.v_inf * t, p.length);
  const double r2 = dx * dx + dy * dy;
  const double e = std::exp(p.eta * (1.0 - r2));
  const double up = -p.strength / (2.0 * pi) * dy * e;
  const double vp = p.strength / (2.0 * pi) * dx * e;
  const double tp = -(p.gamma - 1.0) * p.strength * p.strength / (16.0 * p.eta * p.gamma * pi * pi) * e * e;
  const double rho = std::pow(1.0 + tp, 1.0 / (p.gamma - 1.0));
  return {rho, p.u_inf + up, p.v_inf + vp, std::pow(rho, p.gamma)};
}

double vortex_circulation(const VortexParams& p, double radius) {
  return p.strength * radius * radius * std::exp(p.eta * (1.0 - radius * radius));
}

FlowPoint shock_entropy_init(double x, const ShockEntropyParams& p) {
  if (x <= p.shock_position) return {p.left_rho, p.left_u, 0.0, p.left_p};
  return {std::exp(-p.epsilon * std::sin(p.kappa * x)), 0.0, 0.0, 1.0};
}

ShockLinearResponse shock_linear_response(const ShockEntropyParams& p) {
  using C = std::complex<double>;
  const double g = p.gamma;
  const double mach = 3.0;
  const double c1 = std::sqrt(g);
  const double s0 = mach * c1;
  const double r2 = (g + 1.0) * mach * mach / ((g - 1.0) * mach * mach + 2.0);
  const double p2 = (2.0 * g * mach * mach - (g - 1.0)) / (g + 1.0);
  const double u2 = s0 * (1.0 - 1.0 / r2);
  const double c2 = std::sqrt(g * p2 / r2);

  // Jump conditions with unknowns (dS, entropy-mode density, outgoing acoustic pressure)
  // and upstream density perturbation e.
  auto residual = [&](C ds, C dre, C dp, C e) {
    const C rl = 1.0 + e;
    const C rr = r2 + dre + dp / (c2 * c2);
    const C ur = u2 - dp / (r2 * c2);
    const C pr = p2 + dp;
    const C s = s0 + ds;
    const C ml = rl * (-s);
    const C mr = rr * (ur - s);
    return std::array<C, 3>{
        mr - ml,
        mr * (ur - s) + pr - (ml * (-s) + 1.0),
        g / (g - 1.0) * pr / rr + 0.5 * (ur - s) * (ur - s) - g / (g - 1.0) / rl - 0.5 * s * s,
    };
  };
  // Complex-step derivatives are exact to rounding.
  const double h = 1e-30;
  const C ih(0.0, h);
  double jac[3][4];
  for (int col = 0; col < 4; ++col) {
    std::array<C, 4> arg{0.0, 0.0, 0.0, 0.0};
    arg[static_cast<std::size_t>(col)] = ih;
    const auto r = residual(arg[0], arg[1], arg[2], arg[3]);
    for (int row = 0; row < 3; ++row) jac[row][col] = r[static_cast<std::size_t>(row)].imag() / h;
  }
  // Solve J [dS, dre, dp]^T = -dF/de by Cramer's rule.
  auto det3 = [](double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = jac[i][j];
  const double d = det3(m);
  double sol[3];
  for (int c = 0; c < 3; ++c) {
    double mc[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mc[i][j] = j == c ? -jac[i][3] : jac[i][j];
    sol[c] = det3(mc) / d;
  }
  const double dre = sol[1];
  const double s2 = p2 / std::pow(r2, g);

  ShockLinearResponse out;
  out.shock_speed = s0;
  out.post_rho = r2;
  out.post_u = u2;
  out.post_p = p2;
  out.entropy_density_amplitude = p.epsilon * std::abs(dre);
  out.log_entropy_amplitude = p.epsilon * g * std::abs(dre) / r2;
  out.entropy_amplitude = out.log_entropy_amplitude * s2;
  out.wavelength_ratio = (s0 - u2) / s0;
  return out;
}

}  // namespace cfor
