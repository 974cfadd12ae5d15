#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cfor/case_config.hpp"
#include "cfor/cases.hpp"
#include "cfor/error.hpp"
#include "cfor/runner.hpp"
#include "oracle_constants.hpp"

using namespace cfor;

namespace {

constexpr double kPi = std::numbers::pi;

const Snapshot* find_snapshot(const CaseResult& r, const std::string& name) {
  for (const Snapshot& s : r.snapshots) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace

TEST(Taylor, ExactSolution) {
  const TaylorPoint o = taylor_exact(0, 0, 3.0, 1);
  EXPECT_EQ(o.u, 0.0);
  EXPECT_EQ(o.v, 0.0);
  EXPECT_DOUBLE_EQ(o.p, -0.5);
  EXPECT_DOUBLE_EQ(taylor_pressure_ppw(64, 10), 3.2);
  EXPECT_DOUBLE_EQ(taylor_pressure_ppw(64, 1), 32.0);
  // Divergence by central differences of the closed form.
  const double h = 1e-5;
  for (double k : {1.0, 5.0, 13.0}) {
    const double x = 0.37, y = 1.9;
    const double div = (taylor_exact(x + h, y, 0, k).u - taylor_exact(x - h, y, 0, k).u) / (2 * h) +
                       (taylor_exact(x, y + h, 0, k).v - taylor_exact(x, y - h, 0, k).v) / (2 * h);
    EXPECT_NEAR(div, 0.0, 1e-8 * k * k);
  }
}

TEST(ShearLayer, InitialCondition) {
  const double rho = 1.0 / 15, delta = 0.05;
  EXPECT_DOUBLE_EQ(shear_layer_init(0.3, kPi / 2, rho, delta).u, 0.0);
  const double seam = std::tanh(kPi / (2 * rho));
  EXPECT_DOUBLE_EQ(shear_layer_init(0.0, kPi, rho, delta).u, seam);
  EXPECT_NEAR(shear_layer_init(0.0, std::nextafter(kPi, 4.0), rho, delta).u, seam, 1e-15);
  EXPECT_DOUBLE_EQ(shear_layer_init(kPi / 2, 1.0, rho, delta).v, delta);
  EXPECT_DOUBLE_EQ(shear_layer_init(3 * kPi / 2, 1.0, rho, delta).v, -delta);
}

TEST(Wavepacket, ExactSolution) {
  const WavepacketParams p;
  for (double x : {-0.9, -0.2, 0.0, 0.35, 0.99}) {
    EXPECT_NEAR(wavepacket_exact(x, 2.0, p), wavepacket_exact(x, 0.0, p), 1e-12);
    EXPECT_NEAR(wavepacket_exact(x, 0.5, p), wavepacket_exact(x - 0.5, 0.0, p), 1e-12);
  }
  EXPECT_EQ(wavepacket_exact(0.0, 0.0, p), 0.0);
  // Envelope at xi = sigma, where sin(2 pi k xi) is evaluated separately.
  WavepacketParams q = p;
  q.k = 0.25 / p.width;  // sin(2 pi k sigma) = 1
  EXPECT_NEAR(wavepacket_exact(p.width, 0.0, q), std::exp(-1.0), 1e-15);
}

TEST(Vortex, CentreAndFarField) {
  const VortexParams p;
  const double tp = vortex_center_temperature_perturbation(p);
  EXPECT_DOUBLE_EQ(tp, -0.4 * 25 * std::exp(2.0) / (16 * 1.4 * kPi * kPi));
  const FlowPoint c = vortex_exact(5, 5, 0, p);
  EXPECT_DOUBLE_EQ(c.u, 1.0);
  EXPECT_DOUBLE_EQ(c.v, 1.0);
  EXPECT_NEAR(c.rho, std::pow(1 + tp, 1 / 0.4), 1e-15);
  EXPECT_NEAR(c.p, std::pow(c.rho, 1.4), 1e-15);
  const FlowPoint far = vortex_exact(0.0, 0.0, 0, p);
  EXPECT_NEAR(far.rho, 1.0, 1e-10);
  EXPECT_NEAR(far.u, 1.0, 1e-10);
  const FlowPoint moved = vortex_exact(7.0, 7.0, 2.0, p);
  EXPECT_DOUBLE_EQ(moved.rho, c.rho);
  VortexParams strong = p;
  strong.strength = 50;
  EXPECT_THROW(vortex_exact(5, 5, 0, strong), InvalidArgument);
}

TEST(Vortex, CirculationMatchesQuadrature) {
  const VortexParams p;
  for (double radius : {0.5, 1.0, 2.0}) {
    const int m = 4000;
    double circ = 0.0;
    for (int k = 0; k < m; ++k) {
      const double th = 2 * kPi * k / m;
      const FlowPoint f = vortex_exact(p.x0 + radius * std::cos(th), p.y0 + radius * std::sin(th), 0, p);
      circ += ((f.u - 1) * -std::sin(th) + (f.v - 1) * std::cos(th)) * radius * 2 * kPi / m;
    }
    EXPECT_NEAR(circ, vortex_circulation(p, radius), 1e-12);
  }
}

TEST(ShockEntropy, InitialCondition) {
  const ShockEntropyParams p;
  const FlowPoint l = shock_entropy_init(0.4, p);
  EXPECT_EQ(l.rho, 3.85714);
  EXPECT_EQ(l.u, 2.629369);
  EXPECT_EQ(l.p, 10.33333);
  const double x = 4 * kPi / 13;  // ahead of the shock, sin(13 x) = 0
  EXPECT_NEAR(shock_entropy_init(x, p).rho, 1.0, 1e-15);
  EXPECT_EQ(shock_entropy_init(x, p).u, 0.0);
  EXPECT_EQ(shock_entropy_init(x, p).p, 1.0);
}

TEST(ShockEntropy, LinearResponseMatchesOracle) {
  const ShockLinearResponse r = shock_linear_response(ShockEntropyParams{});
  EXPECT_NEAR(r.entropy_amplitude, oracle::kShockEntropyAmplitudeLinear, 1e-6);
  EXPECT_NEAR(r.log_entropy_amplitude, oracle::kShockLogEntropyAmplitudeLinear, 1e-6);
  EXPECT_NEAR(r.wavelength_ratio, oracle::kShockWavelengthRatio, 1e-8);
  EXPECT_NEAR(r.post_rho, 3.85714, 1e-5);
}

TEST(CaseKind, NamesRoundTrip) {
  for (CaseKind k : {CaseKind::Taylor, CaseKind::ShearLayer, CaseKind::Wavepacket, CaseKind::IsentropicVortex,
                     CaseKind::ShockEntropy}) {
    EXPECT_EQ(parse_case_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_case_kind("sod"), InvalidArgument);
}

TEST(CaseGrid, Layouts) {
  CaseConfig c = default_case_config(CaseKind::Wavepacket);
  c.n = 100;
  Grid g = case_grid(c);
  EXPECT_EQ(g.nx, 200);
  EXPECT_DOUBLE_EQ(g.dx, 0.01);
  EXPECT_DOUBLE_EQ(g.x0, -1.0);
  c = default_case_config(CaseKind::IsentropicVortex);
  c.n = 80;
  g = case_grid(c);
  EXPECT_EQ(g.ny, 80);
  EXPECT_DOUBLE_EQ(g.dx, 0.125);
  c = default_case_config(CaseKind::ShockEntropy);
  c.n = 400;
  EXPECT_DOUBLE_EQ(case_grid(c).dx, 5.0 / 400);
}

TEST(RunCase, TaylorFirstRowAndSteadiness) {
  CaseConfig c = default_case_config(CaseKind::Taylor);
  c.n = 64;
  c.k = 1;
  const CaseResult r = run_case(c);
  const auto e = r.error_at("u", 2.0);
  ASSERT_TRUE(e.has_value());
  EXPECT_LE(e->l2, 6.63e-15 * 100);
  c.t_final = 2.0 / r.steps;  // a single step of the same size
  const CaseResult one = run_case(c);
  EXPECT_LE(e->linf, 1e3 * std::max(one.error_at("u", c.t_final)->linf, 1e-16));
}

TEST(RunCase, WavepacketErrorAndLinearGrowth) {
  CaseConfig c = default_case_config(CaseKind::Wavepacket);
  c.t_final = 10.0;
  c.sample_times = {2.0};
  const CaseResult r = run_case(c);
  const double e2 = r.error_at("u", 2.0)->l1;
  const double e10 = r.error_at("u", 10.0)->l1;
  EXPECT_LE(e2, 2.00e-11 * 10);
  EXPECT_GE(e10 / e2, 4.0);
  EXPECT_LE(e10 / e2, 6.0);
}

TEST(RunCase, VortexErrorAndCoreTracking) {
  CaseConfig c = default_case_config(CaseKind::IsentropicVortex);
  c.n = 80;
  const CaseResult r = run_case(c);
  EXPECT_LE(r.error_at("rho", 2.0)->l1, 4.73e-9 * 10);
  const double cell = 10.0 / 80;
  EXPECT_LE(std::abs(*r.metric("core_x") - *r.metric("core_x_exact")), cell);
  EXPECT_LE(std::abs(*r.metric("core_y") - *r.metric("core_y_exact")), cell);
  EXPECT_NEAR(*r.metric("core_x_exact"), 7.0, 1e-12);
  const Snapshot* rho = find_snapshot(r, "rho");
  ASSERT_NE(rho, nullptr);
  EXPECT_DOUBLE_EQ(rho->field.min(), *r.metric("rho_min"));
}

TEST(RunCase, ShockPreShockWaveAndCompression) {
  CaseConfig c = default_case_config(CaseKind::ShockEntropy);
  c.n = 400;
  const CaseResult r = run_case(c);
  const Snapshot* rho = find_snapshot(r, "rho");
  ASSERT_NE(rho, nullptr);
  const double shock = *r.metric("shock_position");
  double amp = 0.0;
  for (int i = 0; i < rho->field.grid().nx; ++i) {
    const double x = rho->field.grid().x(i);
    // The shock foot rings over a few cells; the window starts well clear of it.
    if (x > shock + 0.3 && x < 4.8) amp = std::max(amp, std::abs(std::log(rho->field(i))));
  }
  EXPECT_NEAR(amp, 0.01, 0.01 * 0.01);
  const double ratio = *r.metric("entropy_wavelength") / *r.metric("entropy_wavelength_linear_theory");
  EXPECT_NEAR(ratio, 1.0, 0.05);
}

TEST(RunCase, RejectsInvalidConfig) {
  CaseConfig c = default_case_config(CaseKind::Taylor);
  c.n = 0;
  EXPECT_THROW(run_case(c), ConfigError);
}
