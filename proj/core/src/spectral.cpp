#include "cfor/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cfor/error.hpp"

namespace cfor {

namespace {

std::complex<double> evaluate(const std::vector<double>& w, int half_width, bool half_grid, double omega) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    double j = static_cast<double>(k) - half_width;
    if (half_grid) j += 0.5;
    acc += w[k] * std::polar(1.0, omega * j);
  }
  return acc;
}

double defect(const FrequencyResponse& r, double omega) {
  return std::abs(evaluate(r.weights, r.half_width, r.half_grid, omega) - ideal_response(r.order, omega));
}

}  // namespace

std::complex<double> response_at(const StencilWeights& weights, double omega) {
  std::vector<double> w(weights.weights().begin(), weights.weights().end());
  return evaluate(w, weights.half_width(), weights.half_grid(), omega);
}

std::complex<double> lowpass_response(const ConjugateFilterBank& bank, double omega) {
  return response_at(bank.predict(), omega) * std::conj(response_at(bank.restore(), omega));
}

std::complex<double> ideal_response(int order, double omega) {
  switch (order) {
    case 0: return 1.0;
    case 1: return {0.0, omega};
    case 2: return -omega * omega;
    default: throw UnsupportedOrder(order);
  }
}

FrequencyResponse frequency_response(const StencilWeights& weights, int samples) {
  if (samples < 2) throw InvalidArgument("frequency_response needs at least 2 samples");
  FrequencyResponse r;
  r.order = weights.order();
  r.half_grid = weights.half_grid();
  r.half_width = weights.half_width();
  r.weights.assign(weights.weights().begin(), weights.weights().end());
  // Responses are always computed in grid units.
  if (weights.includes_delta_scaling()) {
    throw InvalidArgument("frequency_response expects weights in grid units");
  }
  r.omegas.resize(static_cast<std::size_t>(samples));
  r.values.resize(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const double omega = std::numbers::pi * s / (samples - 1);
    r.omegas[static_cast<std::size_t>(s)] = omega;
    r.values[static_cast<std::size_t>(s)] = evaluate(r.weights, r.half_width, r.half_grid, omega);
  }
  return r;
}

BandEdge effective_band(const FrequencyResponse& response, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("effective_band needs tol > 0");
  const auto& om = response.omegas;
  std::size_t first_bad = om.size();
  for (std::size_t s = 0; s < om.size(); ++s) {
    if (std::abs(response.values[s] - ideal_response(response.order, om[s])) > tol) {
      first_bad = s;
      break;
    }
  }
  if (first_bad == om.size()) return {om.back(), true};
  if (first_bad == 0) return {0.0, false};
  double lo = om[first_bad - 1];
  double hi = om[first_bad];
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (defect(response, mid) <= tol) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, true};
}

std::vector<BandTier> band_tiers(const FrequencyResponse& response, const std::vector<double>& tolerances) {
  std::vector<BandTier> out;
  out.reserve(tolerances.size());
  for (double tol : tolerances) out.push_back({tol, effective_band(response, tol).omega});
  return out;
}

SpectralSupport gaussian_packet_support(double k, double width, double dx, double level) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("support level must be in (0, 1)");
  // FT of exp(-xi^2 / width^2) is proportional to exp(-width^2 (w - w0)^2 / 4).
  const double peak = 2.0 * std::numbers::pi * k;
  const double half = 2.0 / width * std::sqrt(-std::log(level));
  return {peak * dx, (peak + half) * dx};
}

FeasibilityReport predict_case_feasibility(const std::vector<BandTier>& tiers, const SpectralSupport& signal) {
  FeasibilityReport report;
  std::vector<BandTier> sorted = tiers;
  std::sort(sorted.begin(), sorted.end(),
            [](const BandTier& a, const BandTier& b) { return a.tolerance < b.tolerance; });
  for (const auto& t : sorted) {
    report.margins.push_back({t.tolerance, t.edge, t.edge - signal.upper});
    if (t.edge >= signal.upper && report.tier == std::numeric_limits<double>::infinity()) {
      report.tier = t.tolerance;
    }
  }
  std::ostringstream os;
  if (std::isinf(report.tier)) {
    os << "signal extends beyond every band edge; errors not bounded by any tier";
  } else {
    os << "errors bounded by " << std::setprecision(3) << report.tier << " tier";
  }
  report.summary = os.str();
  return report;
}

void write_response_csv(std::ostream& out, const FrequencyResponse& response, bool normalize) {
  double scale = 1.0;
  if (normalize) {
    double peak = 0.0;
    for (const auto& v : response.values) peak = std::max(peak, std::abs(v));
    if (peak > 0.0) scale = 1.0 / peak;
  }
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "omega,abs,re,im,ideal,abs_err\n" << std::setprecision(17);
  for (std::size_t s = 0; s < response.omegas.size(); ++s) {
    const double w = response.omegas[s];
    const auto v = response.values[s];
    const auto ideal = ideal_response(response.order, w);
    const double ideal_scalar = response.order == 1 ? ideal.imag() : ideal.real();
    out << w << ',' << std::abs(v) * scale << ',' << v.real() * scale << ',' << v.imag() * scale << ','
        << ideal_scalar << ',' << std::abs(v - ideal) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace cfor
