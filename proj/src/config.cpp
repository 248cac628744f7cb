#include "vrsw/config.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace vrsw {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_number(const std::string& key, const std::string& value) {
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' has non-numeric value '" + value +
                      "'");
  }
  if (used != value.size()) {
    throw ConfigError("key '" + key + "' has non-numeric value '" + value +
                      "'");
  }
  return x;
}

int to_int(const std::string& key, const std::string& value) {
  double x = to_number(key, value);
  int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) {
    throw ConfigError("key '" + key + "' wants an integer, got '" + value +
                      "'");
  }
  return i;
}

bool to_flag(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("key '" + key + "' wants on/off, got '" + value + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "mesh" && section != "case" && section != "physics" &&
          section != "time" && section != "solver" && section != "output") {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unknown section '" + section + "'");
      }
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                        "' appears before any [section]");
    }
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": empty key or value in '" + line + "'");
    }

    auto unknown = [&]() -> ConfigError {
      return ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                         key + "' in section [" + section + "]");
    };

    if (section == "mesh") {
      auto& m = cfg.mesh;
      if (key == "type") {
        if (value != "regular" && value != "refined" && value != "file") {
          throw ConfigError("mesh type must be regular, refined, or file");
        }
        m.type = value;
      } else if (key == "n1d") {
        m.n1d = to_int(key, value);
      } else if (key == "lx_km") {
        m.lx_km = to_number(key, value);
      } else if (key == "ly_km") {
        m.ly_km = to_number(key, value);
      } else if (key == "monitor_center_x_km") {
        m.monitor.center.x = to_number(key, value);
      } else if (key == "monitor_center_y_km") {
        m.monitor.center.y = to_number(key, value);
      } else if (key == "monitor_width_km") {
        m.monitor.width = to_number(key, value);
      } else if (key == "monitor_strength") {
        m.monitor.strength = to_number(key, value);
      } else if (key == "monitor_step") {
        m.monitor.step = to_number(key, value);
      } else if (key == "monitor_h_floor_km") {
        m.monitor.h_floor = to_number(key, value);
      } else if (key == "monitor_recover_sweeps") {
        m.monitor.recover_sweeps = to_int(key, value);
      } else if (key == "monitor_iterations") {
        m.monitor_iterations = to_int(key, value);
      } else if (key == "path") {
        m.path = value;
      } else {
        throw unknown();
      }
    } else if (section == "case") {
      auto& c = cfg.kase;
      if (key == "name") {
        if (value != "lake_at_rest" && value != "disturbed_lake" &&
            value != "isolated_vortex" && value != "vortex_pair" &&
            value != "shear_flow") {
          throw ConfigError("unknown case name '" + value + "'");
        }
        c.name = value;
      } else if (key == "bprime_m") {
        c.spec.Bprime = 1e-3 * to_number(key, value);
      } else if (key == "offset") {
        c.spec.offset = to_number(key, value);
      } else if (key == "sigma_x_m") {
        c.spec.sigma_x = 1e-3 * to_number(key, value);
      } else if (key == "sigma_y_m") {
        c.spec.sigma_y = 1e-3 * to_number(key, value);
      } else if (key == "kappa") {
        c.spec.kappa = to_number(key, value);
      } else if (key == "lambda_x") {
        c.spec.lambda_x = to_number(key, value);
      } else if (key == "sigma_y_jet") {
        c.spec.sigma_y_jet = to_number(key, value);
      } else if (key == "vortex_mode") {
        if (value == "velocity") {
          c.spec.vortex_mode = VortexMode::velocity;
        } else if (value == "streamfunction") {
          c.spec.vortex_mode = VortexMode::streamfunction;
        } else {
          throw ConfigError("vortex_mode must be velocity or streamfunction");
        }
      } else {
        throw unknown();
      }
    } else if (section == "physics") {
      auto& p = cfg.physics;
      if (key == "g_m_per_s2") {
        p.g_m_per_s2 = to_number(key, value);
      } else if (key == "f_per_s") {
        p.f_per_s = to_number(key, value);
      } else if (key == "H0_m") {
        p.H0_m = to_number(key, value);
      } else if (key == "Hprime_m") {
        p.Hprime_m = to_number(key, value);
      } else {
        throw unknown();
      }
    } else if (section == "time") {
      auto& t = cfg.time;
      if (key == "dt_seconds") {
        t.dt_seconds = to_number(key, value);
      } else if (key == "duration_days") {
        t.duration_days = to_number(key, value);
      } else {
        throw unknown();
      }
    } else if (section == "solver") {
      auto& s = cfg.solver;
      if (key == "eps_fp") {
        s.eps_fp = to_number(key, value);
      } else if (key == "max_fp_iterations") {
        s.max_fp_iterations = to_int(key, value);
      } else if (key == "linear_tol") {
        s.linear_tol = to_number(key, value);
      } else {
        throw unknown();
      }
    } else {  // output
      auto& o = cfg.output;
      if (key == "directory") {
        o.directory = value;
      } else if (key == "qoi_interval_steps") {
        o.qoi_interval_steps = to_int(key, value);
      } else if (key == "snapshot_interval_days") {
        o.snapshot_interval_days = to_number(key, value);
      } else if (key == "spectrum_probe") {
        o.spectrum_probe = to_flag(key, value);
      } else if (key == "sample_interval_days") {
        o.sample_interval_days = to_number(key, value);
      } else {
        throw unknown();
      }
    }
  }

  if (cfg.kase.name.empty()) {
    throw ConfigError("config must name a case ([case] name = ...)");
  }
  if (!(cfg.time.dt_seconds > 0.0)) {
    throw ConfigError("dt_seconds must be positive");
  }
  if (!(cfg.time.duration_days >= 0.0)) {
    throw ConfigError("duration_days must be nonnegative");
  }
  if (cfg.mesh.type == "file" && cfg.mesh.path.empty()) {
    throw ConfigError("mesh type 'file' needs a path");
  }
  if (cfg.output.qoi_interval_steps < 1) {
    throw ConfigError("qoi_interval_steps must be at least 1");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace vrsw
