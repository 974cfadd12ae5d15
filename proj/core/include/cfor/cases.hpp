#pragma once

// Initial conditions and exact solutions of the benchmark problems.

#include <numbers>
#include <string>

namespace cfor {

enum class CaseKind { Taylor, ShearLayer, Wavepacket, IsentropicVortex, ShockEntropy };

std::string to_string(CaseKind kind);
/// Accepts taylor, shear_layer, wavepacket, vortex, shock_entropy. Throws InvalidArgument.
CaseKind parse_case_kind(const std::string& name);

// Taylor vortex array, steady solution of the 2D incompressible Euler equations on [0, 2 pi]^2.

struct TaylorPoint {
  double u;
  double v;
  double p;
};

/// u = -cos(kx) sin(ky), v = sin(kx) cos(ky), p = -(cos 2kx + cos 2ky) / 4, independent of t.
TaylorPoint taylor_exact(double x, double y, double t, double k);

/// Points per wavelength of the pressure on an N-point grid over [0, 2 pi]: N / (2k).
double taylor_pressure_ppw(int n, double k);

// Double shear layer on [0, 2 pi]^2.

struct VelocityPoint {
  double u;
  double v;
};

/// u = tanh((2y - pi) / (2 rho)) for y <= pi, tanh((3 pi - 2y) / (2 rho)) otherwise; v = delta sin x.
VelocityPoint shear_layer_init(double x, double y, double thickness, double delta);

// Sine-modulated Gaussian advected with speed c on a periodic interval.

struct WavepacketParams {
  double k = 5.0;
  double width = std::numbers::sqrt2 / 10.0;  // sigma
  double speed = 1.0;
  double center = 0.0;
  double lower = -1.0;
  double upper = 1.0;
};

/// sin(2 pi k xi) exp(-xi^2 / sigma^2), xi = x - x0 - c t wrapped into [lower - x0, upper - x0)
/// shifted so that it is measured from the packet centre on the periodic interval.
double wavepacket_exact(double x, double t, const WavepacketParams& p);

// Isentropic vortex in a uniform stream on a periodic square.

struct VortexParams {
  double strength = 5.0;  // lambda
  double eta = 1.0;
  double gamma = 1.4;
  double x0 = 5.0;
  double y0 = 5.0;
  double length = 10.0;  // periodic domain [0, L]^2
  double u_inf = 1.0;
  double v_inf = 1.0;
};

struct FlowPoint {
  double rho;
  double u;
  double v;
  double p;
};

/// Exact solution at (x, y, t): the initial vortex translated by (u_inf t, v_inf t) with
/// periodic wrap. rho = (1 + T')^(1/(gamma-1)), p = rho^gamma.
/// Throws InvalidArgument if 1 + T' <= 0 at the centre.
FlowPoint vortex_exact(double x, double y, double t, const VortexParams& p);

/// Temperature perturbation at the vortex centre: -(gamma-1) lambda^2 e^(2 eta) / (16 eta gamma pi^2).
double vortex_center_temperature_perturbation(const VortexParams& p);

/// Circulation of the perturbation velocity around a circle of radius R about the centre:
/// lambda R^2 exp(eta (1 - R^2)).
double vortex_circulation(const VortexParams& p, double radius);

// Mach 3 shock running into a sinusoidal entropy wave.

struct ShockEntropyParams {
  double epsilon = 0.01;
  double kappa = 13.0;
  double shock_position = 0.5;
  double gamma = 1.4;
  double left_rho = 3.85714;
  double left_u = 2.629369;
  double left_p = 10.33333;
  double domain_length = 5.0;
};

/// (rho, u, p) = left state for x <= shock_position, (exp(-eps sin(kappa x)), 0, 1) otherwise.
FlowPoint shock_entropy_init(double x, const ShockEntropyParams& p);

/// Linearized Rankine-Hugoniot response of the Mach 3 shock to the upstream entropy wave.
struct ShockLinearResponse {
  double shock_speed;
  double post_rho;
  double post_u;
  double post_p;
  /// Downstream entropy-mode density amplitude.
  double entropy_density_amplitude;
  /// Downstream amplitude of s = p / rho^gamma.
  double entropy_amplitude;
  /// Downstream amplitude of ln s.
  double log_entropy_amplitude;
  /// lambda_downstream / lambda_upstream = (S - u2) / S.
  double wavelength_ratio;
};

/// Uses the exact Mach 3 jump into (1, 0, 1) as the base state (not the rounded left state).
ShockLinearResponse shock_linear_response(const ShockEntropyParams& p);

}  // namespace cfor
