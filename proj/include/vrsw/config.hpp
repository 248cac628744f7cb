#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "vrsw/cases.hpp"
#include "vrsw/mesh.hpp"

namespace vrsw {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line-oriented sectioned key=value text. '#' starts a comment, blank lines
// are skipped, unknown sections or keys are errors. Dimensioned physics keys
// take SI values and are converted to km/day internally; mesh geometry is
// specified in km directly.
struct RunConfig {
  struct MeshBlock {
    std::string type = "regular";  // regular | refined | file
    int n1d = 32;
    double lx_km = 5000.0;
    double ly_km = 4330.0;
    MonitorParams monitor;
    int monitor_iterations = 600;
    std::string path;  // for type = file
  } mesh;

  struct CaseBlock {
    std::string name;  // lake_at_rest | disturbed_lake | isolated_vortex |
                       // vortex_pair | shear_flow
    CaseSpec spec;     // H0/Hprime filled from the physics block
  } kase;

  struct PhysicsBlock {
    double g_m_per_s2 = 9.80616;
    double f_per_s = 6.147e-5;
    double H0_m = -1.0;      // negative: the case's published default
    double Hprime_m = -1.0;  // negative: the case's published default
  } physics;

  struct TimeBlock {
    double dt_seconds = 60.0;
    double duration_days = 1.0;
  } time;

  struct SolverBlock {
    double eps_fp = 1e-12;
    int max_fp_iterations = 50;
    double linear_tol = 1e-13;
  } solver;

  struct OutputBlock {
    std::string directory = "out";
    int qoi_interval_steps = 1;
    double snapshot_interval_days = 0.0;  // 0: only the final state
    bool spectrum_probe = false;
    double sample_interval_days = 0.01;
  } output;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

}  // namespace vrsw
