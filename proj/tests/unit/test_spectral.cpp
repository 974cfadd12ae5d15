#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cfor/error.hpp"
#include "cfor/spectral.hpp"

using namespace cfor;

namespace {

constexpr double kPi = std::numbers::pi;
const StencilWeights kHermite1 = stencil(KernelSpec::hermite(3.05), 1);

StencilWeights central_difference() { return StencilWeights(1, 1, false, {-0.5, 0.0, 0.5}); }

}  // namespace

TEST(FrequencyResponse, ZeroFrequencyValues) {
  EXPECT_LE(std::abs(response_at(kHermite1, 0.0)), 1e-15);
  EXPECT_NEAR(std::abs(response_at(halfgrid_stencil(KernelSpec::hermite(3.05)), 0.0)), 1.0, 1e-15);
  const FrequencyResponse r = frequency_response(halfgrid_stencil(KernelSpec::hermite(2.5)), 64);
  EXPECT_EQ(r.omegas.front(), 0.0);
  EXPECT_NEAR(r.values.front().real(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.omegas.back(), kPi);
}

TEST(FrequencyResponse, CentralDifferenceClosedForm) {
  const FrequencyResponse r = frequency_response(central_difference(), 4096);
  ASSERT_EQ(r.omegas.size(), 4096u);
  for (std::size_t k = 0; k < r.omegas.size(); ++k) {
    EXPECT_NEAR(r.values[k].real(), 0.0, 1e-14);
    EXPECT_NEAR(r.values[k].imag(), std::sin(r.omegas[k]), 1e-14);
  }
}

TEST(FrequencyResponse, FirstDerivativeIsPurelyImaginaryAndOdd) {
  for (double w : {0.1, 1.0, 2.0, 3.0}) {
    const auto plus = response_at(kHermite1, w);
    const auto minus = response_at(kHermite1, -w);
    EXPECT_LE(std::abs(plus.real()), 1e-14);
    EXPECT_NEAR(minus.imag(), -plus.imag(), 1e-15);
    EXPECT_EQ(minus, std::conj(plus));
  }
}

TEST(FrequencyResponse, RejectsTooFewSamples) {
  EXPECT_THROW(frequency_response(kHermite1, 1), InvalidArgument);
}

TEST(FrequencyResponse, IdealResponses) {
  EXPECT_EQ(ideal_response(0, 2.0), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(ideal_response(1, 2.0), std::complex<double>(0.0, 2.0));
  EXPECT_EQ(ideal_response(2, 2.0), std::complex<double>(-4.0, 0.0));
}

TEST(EffectiveBand, InfiniteToleranceCoversTheBand) {
  const BandEdge e = effective_band(frequency_response(kHermite1), std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(e.omega, kPi);
  EXPECT_TRUE(e.bracketed);
}

TEST(EffectiveBand, CentralDifferenceEdgeSolvesClosedForm) {
  // |sin w - w| = tol near w = (6 tol)^(1/3).
  const double tol = 1e-6;
  const BandEdge e = effective_band(frequency_response(central_difference()), tol);
  // The edge is bisected to 1e-12 relative precision; the error slope there is about w^2 / 2.
  EXPECT_NEAR(std::abs(std::sin(e.omega) - e.omega), tol, 1e-11 * e.omega * e.omega);
}

TEST(EffectiveBand, MonotoneInTolerance) {
  const FrequencyResponse r = frequency_response(kHermite1);
  const std::vector<BandTier> tiers = band_tiers(r, {1e-10, 1e-8, 1e-6, 1e-4, 1e-3});
  for (std::size_t k = 1; k < tiers.size(); ++k) EXPECT_GE(tiers[k].edge, tiers[k - 1].edge);
  // The k = 20 wavepacket peaks at 0.4 pi on the N = 100 grid.
  EXPECT_GT(tiers.front().edge, 0.4 * kPi);
}

TEST(EffectiveBand, UnbracketedToleranceIsFlagged) {
  const FrequencyResponse bad = frequency_response(StencilWeights(0, 1, false, {0.5, 0.0, 0.0}));
  const BandEdge none = effective_band(bad, 1e-3);
  EXPECT_FALSE(none.bracketed);
  EXPECT_EQ(none.omega, 0.0);
}

TEST(EffectiveBand, ShannonBandIsWiderThanHermite) {
  // RSK at r = 3.2 sits at the truncation floor of W = 32; r = 5.4 is the high-pass ratio
  // used for the band comparison.
  const double tol = 1e-6;
  const double hermite = effective_band(frequency_response(kHermite1), tol).omega;
  const double shannon = effective_band(frequency_response(stencil(KernelSpec::shannon(5.4), 1)), tol).omega;
  EXPECT_GT(shannon, hermite);
}

TEST(EffectiveBand, HermiteLowpassDecaysFasterNearNyquist) {
  // Both low-pass responses vanish at pi, so the ordering is taken just below it.
  const double w = 0.9 * kPi;
  const double hermite = std::abs(lowpass_response(ConjugateFilterBank(KernelSpec::hermite(3.05), 2.5), w));
  const double shannon = std::abs(lowpass_response(ConjugateFilterBank(KernelSpec::shannon(3.2), 2.5), w));
  EXPECT_LT(hermite, shannon);
  EXPECT_NEAR(std::abs(lowpass_response(ConjugateFilterBank(KernelSpec::hermite(3.05), 2.5), kPi)), 0.0, 1e-15);
}

TEST(Feasibility, WavepacketTiers) {
  const std::vector<BandTier> tiers =
      band_tiers(frequency_response(kHermite1), {1e-10, 1e-8, 1e-6, 1e-4, 1e-3});
  const double width = std::numbers::sqrt2 / 10;
  const FeasibilityReport k20 = predict_case_feasibility(tiers, gaussian_packet_support(20, width, 0.01));
  EXPECT_EQ(k20.tier, 1e-10);
  const FeasibilityReport k30 = predict_case_feasibility(tiers, gaussian_packet_support(30, width, 0.01));
  // The k = 30 tail reaches past every tier tighter than 1e-4 and sits close to that edge.
  EXPECT_EQ(k30.tier, 1e-4);
  for (const auto& m : k30.margins) {
    if (m.tolerance < 1e-4) EXPECT_LT(m.margin, 0.0);
    if (m.tolerance == 1e-4) EXPECT_LT(m.margin, 0.1);
  }
  EXPECT_FALSE(k30.summary.empty());
}

TEST(Feasibility, ContainedSignal) {
  const std::vector<BandTier> tiers{{1e-10, 2.0}, {1e-6, 2.5}};
  const FeasibilityReport r = predict_case_feasibility(tiers, SpectralSupport{1.0, 1.5});
  EXPECT_EQ(r.tier, 1e-10);
  EXPECT_NE(r.summary.find("1e-10"), std::string::npos);
}

TEST(ResponseCsv, FirstRowOfSmoothingStencil) {
  std::ostringstream out;
  write_response_csv(out, frequency_response(halfgrid_stencil(KernelSpec::hermite(3.05)), 16));
  std::istringstream in(out.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "omega,abs,re,im,ideal,abs_err");
  EXPECT_EQ(first.substr(0, 2), "0,");
  std::istringstream row(first);
  std::string cell;
  std::getline(row, cell, ',');
  std::getline(row, cell, ',');
  EXPECT_NEAR(std::stod(cell), 1.0, 1e-15);
}
