#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cfor/case_config.hpp"
#include "cfor/error.hpp"
#include "cfor/filters.hpp"
#include "cfor/runner.hpp"
#include "oracle_constants.hpp"

using namespace cfor;

namespace {

constexpr double kPi = std::numbers::pi;

Field random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = dist(rng);
  return f;
}

/// Sum of a few random low modes, so the field is smooth on the grid.
Field smooth_random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double length = g.nx * g.dx;
  Field f(g);
  for (int m = 1; m <= 5; ++m) {
    const double a = dist(rng);
    const double b = dist(rng);
    for (int i = 0; i < g.nx; ++i) {
      const double x = 2 * kPi * m * g.x(i) / length;
      f(i) += a * std::sin(x) + b * std::cos(x);
    }
  }
  return f;
}

double projection_amplitude(const Field& f, int k) {
  const int n = f.grid().nx;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(i) * std::sin(2 * kPi * k * i / n);
  return 2.0 * s / n;
}

}  // namespace

TEST(ApplyDerivative, ConstantGivesZero) {
  const Grid g = Grid::line(128, 0.1);
  const Field out = apply_derivative(Field(g, 3.7), stencil(KernelSpec::hermite(3.05), 1), Axis::X);
  EXPECT_LE(out.max_abs(), 1e-13);
}

TEST(ApplyDerivative, SineOnSixtyFourPoints) {
  const int n = 64;
  const double dx = 2 * kPi / n;
  const Grid g = Grid::line(n, dx);
  const Field f = Field::sample(g, [](double x, double) { return std::sin(x); });
  const Field d = apply_derivative(f, stencil(KernelSpec::hermite(3.05, 32, 88, dx), 1), Axis::X, Wrap::Alias);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(d(i) - std::cos(g.x(i))));
  EXPECT_LE(worst, 1e-12);
}

TEST(ApplyDerivative, SumTelescopes) {
  const Grid g = Grid::line(200, 0.05);
  const Field d = apply_derivative(random_field(g, 7), stencil(KernelSpec::hermite(3.05), 1), Axis::X);
  EXPECT_LE(std::abs(d.sum()), 1e-12);
}

TEST(ApplyDerivative, IsLinear) {
  const Grid g = Grid::line(100, 0.02);
  const StencilWeights w = stencil(KernelSpec::hermite(3.05), 1);
  const Field f = random_field(g, 1);
  const Field h = random_field(g, 2);
  const Field lhs = apply_derivative(2.5 * f + (-0.75) * h, w, Axis::X);
  const Field rhs = 2.5 * apply_derivative(f, w, Axis::X) + (-0.75) * apply_derivative(h, w, Axis::X);
  EXPECT_LE((lhs - rhs).max_abs(), 1e-13 * lhs.max_abs());
}

TEST(ApplyDerivative, GridPolicy) {
  const StencilWeights w = stencil(KernelSpec::hermite(3.05), 1);
  const Grid small = Grid::line(64, 0.1);
  EXPECT_THROW(apply_derivative(Field(small), w, Axis::X), GridTooSmall);
  EXPECT_NO_THROW(apply_derivative(Field(Grid::line(65, 0.1)), w, Axis::X));
  // Aliased taps keep the constant-annihilation and telescoping properties.
  const Field d = apply_derivative(random_field(small, 3), w, Axis::X, Wrap::Alias);
  EXPECT_LE(std::abs(d.sum()), 1e-12);
  EXPECT_LE(apply_derivative(Field(small, 2.0), w, Axis::X, Wrap::Alias).max_abs(), 1e-13);
}

TEST(ApplyDerivative, AliasedSineMatchesFourierSymbol) {
  const int n = 40;
  const double dx = 2 * kPi / n;
  const Grid g = Grid::line(n, dx);
  const Field f = Field::sample(g, [](double x, double) { return std::sin(3 * x); });
  const Field d = apply_derivative(f, stencil(KernelSpec::hermite(3.05, 32, 88, dx), 1), Axis::X, Wrap::Alias);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(d(i) - 3 * std::cos(3 * g.x(i))));
  EXPECT_LE(worst, 1e-11);
}

TEST(ApplyDerivative, SecondAxisOf2dField) {
  const int n = 66;
  const double h = 2 * kPi / n;
  const Grid g = Grid::plane(n, n, h, h);
  const Field f = Field::sample(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
  const Field dy = apply_derivative(f, stencil(KernelSpec::hermite(3.05, 32, 88, h), 1), Axis::Y);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(dy(i, j) + 2 * std::sin(g.x(i)) * std::sin(2 * g.y(j))));
  }
  EXPECT_LE(worst, 1e-11);
}

class LowpassTest : public ::testing::Test {
 protected:
  ConjugateFilterBank bank{KernelSpec::hermite(3.05), 2.5};
};

TEST_F(LowpassTest, BankValidatesRatios) {
  EXPECT_THROW(ConjugateFilterBank(KernelSpec::hermite(3.05), 3.5), InvalidArgument);
  EXPECT_EQ(bank.restore_ratio(), 2.5);
  EXPECT_EQ(bank.predict().size(), 64u);
  EXPECT_EQ(bank.restore().size(), 64u);
}

TEST_F(LowpassTest, PreservesConstants) {
  const Grid g = Grid::line(100, 0.01);
  const Field out = apply_conjugate_lowpass(Field(g, 1.25), bank);
  for (std::size_t k = 0; k < out.size(); ++k) EXPECT_NEAR(out[k], 1.25, 1e-14);
  const Field out2 = apply_conjugate_lowpass(Field(Grid::plane(70, 66, 0.1, 0.1), -3.0), bank);
  for (std::size_t k = 0; k < out2.size(); ++k) EXPECT_NEAR(out2[k], -3.0, 1e-14);
}

TEST_F(LowpassTest, LeavesLowModesAlone) {
  const Field f = Field::sample(Grid::line(64, 1.0), [](double x, double) { return std::sin(2 * kPi * 2 * x / 64); });
  const Field out = apply_conjugate_lowpass(f, bank, Wrap::Alias);
  EXPECT_LE(std::abs(1.0 - projection_amplitude(out, 2)), 1e-8);
}

TEST_F(LowpassTest, RemovesNyquistMode) {
  const Grid g = Grid::line(100, 0.01);
  Field f(g);
  for (int i = 0; i < g.nx; ++i) f(i) = i % 2 == 0 ? 1.0 : -1.0;
  const Field once = apply_conjugate_lowpass(f, bank);
  EXPECT_LE(once.max_abs(), 1.0 / 100);
  const Field twice = apply_conjugate_lowpass(once, bank);
  EXPECT_LE(twice.max_abs(), once.max_abs() + 1e-300);
}

TEST_F(LowpassTest, ResponseNearNyquistMatchesOracle) {
  const int n = 200;
  const Grid g = Grid::line(n, 1.0);
  const int cycles = 90;  // w = 2 pi 90 / 200 = 0.9 pi
  const Field f = Field::sample(g, [&](double x, double) { return std::sin(2 * kPi * cycles * x / n); });
  const Field out = apply_conjugate_lowpass(f, bank);
  EXPECT_NEAR(projection_amplitude(out, cycles), oracle::kLowpassResponse09Pi, 1e-12);
}

TEST_F(LowpassTest, DoesNotIncreaseTotalVariationOfSmoothFields) {
  const Grid g = Grid::line(128, 0.05);
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Field f = smooth_random_field(g, seed);
    const double tv = total_variation(f);
    EXPECT_LE(total_variation(apply_conjugate_lowpass(f, bank)), tv + 1e-12 * tv) << seed;
  }
}

TEST_F(LowpassTest, RingsAtAStep) {
  // A unit step (TV 2 with periodic closure) is not resolved by the band-limited low-pass:
  // the response overshoots on both sides of each jump, so TV grows instead of shrinking.
  const Grid g = Grid::line(128, 0.05);
  Field step(g);
  for (int i = 0; i < g.nx; ++i) step(i) = i < 64 ? 0.0 : 1.0;
  const Field out = apply_conjugate_lowpass(step, bank);
  EXPECT_GT(total_variation(out), 2.0);
  EXPECT_LT(out.min(), 0.0);
  EXPECT_GT(out.max(), 1.0);
}

TEST_F(LowpassTest, DampingGrowsWithApplications) {
  const Grid g = Grid::line(128, 0.05);
  const int k = 56;
  Field mode(g);
  for (int i = 0; i < g.nx; ++i) mode(i) = std::sin(2 * kPi * k * i / g.nx);
  double prev = 1.0;
  Field cur = mode;
  for (int pass = 0; pass < 3; ++pass) {
    cur = apply_conjugate_lowpass(cur, bank);
    const double amp = std::abs(projection_amplitude(cur, k));
    EXPECT_LE(amp, prev);
    prev = amp;
  }
}

TEST(TotalVariation, Examples) {
  EXPECT_EQ(total_variation(Field(Grid::line(30, 1.0), 5.0)), 0.0);
  Field step(Grid::line(20, 1.0));
  for (int i = 10; i < 20; ++i) step(i) = 1.0;
  EXPECT_EQ(total_variation(step), 2.0);
  const int n = 64;
  const Field s = Field::sample(Grid::line(n, 1.0), [&](double x, double) { return std::sin(2 * kPi * x / n); });
  EXPECT_NEAR(total_variation(s), oracle::kTvSine64, 1e-14);
  const std::vector<double> line{0.0, 1.0, 3.0};
  EXPECT_EQ(total_variation(line, false), 3.0);
  EXPECT_EQ(total_variation(line, true), 6.0);
}

TEST(TotalVariation, TwoDimensionalSumsBothAxes) {
  Field f(Grid::plane(4, 3, 1.0, 1.0));
  f(1, 1) = 1.0;
  // One bump: two jumps along its row and two along its column.
  EXPECT_EQ(total_variation(f), 4.0);
}

TEST(TvSwitch, Decision) {
  const TvPolicy policy{0.05};
  EXPECT_FALSE(tv_switch_decide(1.0, 1.0, policy));
  EXPECT_TRUE(tv_switch_decide(1.10, 1.00, policy));
  EXPECT_FALSE(tv_switch_decide(1.05, 1.00, policy));
  TvSwitch sw(2.0, TvPolicy{0.01});
  EXPECT_TRUE(sw.should_filter(2.03));
  sw.rearm(2.5);
  EXPECT_FALSE(sw.should_filter(2.52));
  EXPECT_EQ(sw.reference(), 2.5);
}

TEST(TvSwitch, FiresEarlyInTheShockCase) {
  CaseConfig cfg = default_case_config(CaseKind::ShockEntropy);
  cfg.n = 400;
  cfg.t_final = 0.03;
  cfg.sample_times = {};
  const CaseResult r = run_case(cfg);
  ASSERT_FALSE(r.filter_events.empty());
  EXPECT_LE(r.filter_events.front().step, 50);
  EXPECT_GT(r.filter_events.front().tv_before, r.filter_events.front().tv_after);
}
