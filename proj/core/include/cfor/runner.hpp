#pragma once

// Orchestration of a benchmark case: initialization, time marching with the TV-switched
// conjugate low-pass filter, error norms against exact solutions and diagnostics.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfor/case_config.hpp"
#include "cfor/field.hpp"
#include "cfor/grid_ops.hpp"

namespace cfor {

/// Error of one quantity at one sample time.
struct ErrorSample {
  double t = 0.0;
  long step = 0;
  std::string quantity;
  ErrorReport error;
};

/// Scalar diagnostic at one sample time (kinetic energy, max divergence, ...).
struct MetricSample {
  double t = 0.0;
  long step = 0;
  std::string name;
  double value = 0.0;
};

struct FilterEvent {
  long step = 0;
  double t = 0.0;
  double tv_before = 0.0;
  double tv_after = 0.0;
};

struct Snapshot {
  double t = 0.0;
  std::string name;
  Field field;
};

struct CaseResult {
  CaseConfig config;
  Grid grid;
  long steps = 0;
  double t_reached = 0.0;
  std::vector<ErrorSample> errors;
  std::vector<MetricSample> metrics;
  std::vector<FilterEvent> filter_events;
  std::vector<Snapshot> snapshots;

  /// Last recorded value of a metric, if any.
  std::optional<double> metric(const std::string& name) const;
  /// Error of `quantity` at the sample closest to t.
  std::optional<ErrorReport> error_at(const std::string& quantity, double t) const;
};

/// Receives one line per log event (step progress, filter activations, samples).
using LogSink = std::function<void(const std::string&)>;

struct RunOptions {
  LogSink log;
  /// Emit a progress line every this many steps; 0 disables.
  long progress_every = 0;
};

/// Grid the runner uses for a case:
///   taylor, shear_layer: N x N on [0, 2 pi)^2
///   wavepacket: spacing 1/N on [-1, 1), i.e. 2N points
///   vortex: N x N on [0, 10)^2
///   shock_entropy: N points on [0, 5)
Grid case_grid(const CaseConfig& cfg);

/// Runs a validated configuration. Solver failures are rethrown as SolverError naming the
/// case, step and time.
CaseResult run_case(const CaseConfig& cfg, const RunOptions& options = {});

/// Half the peak-to-trough range of s = p / rho^gamma behind the shock, over the region
/// between the contact of the first shocked fluid and the shock (10% margins on both ends).
/// Returns NaN if the region holds fewer than 8 points.
struct EntropyWaveMeasurement {
  double amplitude = 0.0;
  double shock_position = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  /// Mean spacing of zero crossings of the fluctuation, times 2.
  double wavelength = 0.0;
};
EntropyWaveMeasurement measure_entropy_wave(const Field& rho, const Field& p, double gamma, double t,
                                            double post_shock_velocity);

/// Writes <name>_errors.csv, <name>_metrics.csv, <name>_filter_events.csv and one
/// <name>_<field>_t<time>.csv per snapshot into `dir`. Returns the written file names.
/// Throws IoError.
std::vector<std::string> write_case_outputs(const CaseResult& result, const std::string& dir);

}  // namespace cfor
