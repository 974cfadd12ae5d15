#pragma once

#include <iosfwd>
#include <string>

namespace cfor::cli {

struct TableOptions {
  /// Largest 2D grid size to run; larger rows are printed as skipped. 1D shock runs are always run.
  int max_n = 80;
  /// Cap on simulated time for the long wavepacket and vortex runs; 0 means no cap.
  double max_t = 0.0;
  /// Directory for per-case CSV outputs; empty disables them.
  std::string output_dir;
};

/// Runs the cases behind table `id` (1..7) and prints computed against reference values.
/// Returns the number of failed rows. Throws InvalidArgument for an unknown id.
int reproduce_table(int id, const TableOptions& options, std::ostream& out);

}  // namespace cfor::cli
