#pragma once

// Fourier analysis of DSC stencils: frequency responses, effective bands and the
// comparison of a signal's spectral support against band-edge tiers.

#include <complex>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "cfor/filters.hpp"
#include "cfor/kernels.hpp"

namespace cfor {

/// Response of a stencil on [0, pi] in units of 1/dx.
struct FrequencyResponse {
  int order = 0;
  bool half_grid = false;
  std::vector<double> omegas;
  std::vector<std::complex<double>> values;
  /// Weights the response was computed from, used for refinement between samples.
  std::vector<double> weights;
  int half_width = 0;
};

/// R(w) = sum_j w_j exp(i w j), with offsets j + 1/2 for half-grid stencils.
std::complex<double> response_at(const StencilWeights& weights, double omega);

/// Response of the conjugate low-pass: prediction to the midpoints followed by restoration
/// back to the grid, R_predict(w) conj(R_restore(w)).
std::complex<double> lowpass_response(const ConjugateFilterBank& bank, double omega);

/// Ideal response: 1 for q = 0, i w for q = 1, -w^2 for q = 2.
std::complex<double> ideal_response(int order, double omega);

/// Uniformly samples [0, pi]. Throws InvalidArgument if samples < 2.
FrequencyResponse frequency_response(const StencilWeights& weights, int samples = 4096);

struct BandEdge {
  double omega = 0.0;
  /// False when the response misses the tolerance already at the first sample.
  bool bracketed = true;
};

/// Largest w* with |R(w) - ideal(w)| <= tol for all w <= w*, from a scan of the sampled
/// response refined by bisection to 1e-12 relative precision.
BandEdge effective_band(const FrequencyResponse& response, double tol);

/// Effective band for each tolerance tier.
struct BandTier {
  double tolerance = 0.0;
  double edge = 0.0;
};
std::vector<BandTier> band_tiers(const FrequencyResponse& response, const std::vector<double>& tolerances);

/// Spectral support of a signal in units of 1/dx.
struct SpectralSupport {
  double peak = 0.0;
  double upper = 0.0;
};

/// Support of sin(2 pi k xi) exp(-xi^2 / width^2) sampled with spacing dx: the Gaussian
/// spectrum around the peak 2 pi k dx, cut where it falls below `level` of its maximum.
SpectralSupport gaussian_packet_support(double k, double width, double dx, double level = 0.05);

struct FeasibilityReport {
  struct Margin {
    double tolerance;
    double edge;
    double margin;  // edge - signal upper extent; negative means truncated
  };
  std::vector<Margin> margins;
  /// Smallest tolerance whose band contains the whole support; infinity if none does.
  double tier = std::numeric_limits<double>::infinity();
  std::string summary;
};

FeasibilityReport predict_case_feasibility(const std::vector<BandTier>& tiers, const SpectralSupport& signal);

/// Writes omega,abs,re,im,ideal,abs_err. "ideal" is 1, w or -w^2 for q = 0, 1, 2 (the
/// q = 1 ideal is the imaginary i w). With normalize, |R|, Re and Im are divided by max |R|.
void write_response_csv(std::ostream& out, const FrequencyResponse& response, bool normalize = false);

}  // namespace cfor
