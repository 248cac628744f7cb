#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vrsw/config.hpp"

namespace vrsw {

struct RunResult {
  int status = 0;  // 0 on success, 1 on any abort
  std::string message;
  double courant = 0.0;
  long steps = 0;
  std::vector<double> spectrum_peaks;  // rad/day, when the probe is enabled
};

// Builds the mesh, initializes the case, integrates for the configured
// duration, and writes qoi.csv, snapshots, and the optional probe series and
// spectrum peaks into the output directory. Progress and warnings go to log.
// Never throws; failures land in status/message.
RunResult run(const RunConfig& cfg, std::ostream& log);

}  // namespace vrsw
