#pragma once

// Flat key = value case configuration.
//
//   # comment
//   case = vortex
//   N = 80
//   cfl = 0.5
//   t_final = 2
//   sample_times = 2
//
// Unknown keys, repeated keys and malformed values are rejected with the offending line.

#include <iosfwd>
#include <string>
#include <vector>

#include "cfor/cases.hpp"
#include "cfor/euler.hpp"
#include "cfor/incompressible.hpp"
#include "cfor/kernels.hpp"
#include "cfor/time_integration.hpp"

namespace cfor {

struct CaseConfig {
  std::string name;
  CaseKind kind = CaseKind::Taylor;
  int n = 0;
  /// Wavenumber k (Taylor, wavepacket) or kappa (shock/entropy).
  double k = 1.0;
  StepControl step;
  double t_final = 2.0;
  /// Times at which errors and metrics are recorded; t_final is always included.
  std::vector<double> sample_times;
  /// Times at which full snapshots are kept; empty means t_final only.
  std::vector<double> snapshot_times;

  KernelSpec kernel;
  double restore_ratio = 2.5;
  bool filter = true;
  double tv_growth = 0.01;

  double thickness = 1.0 / 15.0;
  double delta = 0.05;
  double epsilon = 0.01;
  double strength = 5.0;
  double eta = 1.0;
  double gamma = 1.4;
  double wave_speed = 1.0;
  /// Compressible runs: whether a pressure undershoot inside the scheme is an error.
  Positivity positivity = Positivity::Strict;

  double poisson_tol = 1e-12;
  PoissonOperator poisson_operator = PoissonOperator::CompositeFirstDerivative;

  /// Throws ConfigError if parameters are inconsistent.
  void validate() const;
  /// Sorted, deduplicated union of sample and snapshot times, ending at t_final.
  std::vector<double> resolved_sample_times() const;
};

/// Case defaults: step policy, restoration ratio and final time per benchmark.
CaseConfig default_case_config(CaseKind kind);

/// Parses a configuration. `case` and `N` are required. Throws ConfigError.
CaseConfig parse_case_config(std::istream& in);
CaseConfig parse_case_config_string(const std::string& text);
/// Throws IoError if the file cannot be opened.
CaseConfig load_case_config(const std::string& path);

/// Canonical key = value rendering, parseable by parse_case_config.
std::string format_case_config(const CaseConfig& cfg);

}  // namespace cfor
