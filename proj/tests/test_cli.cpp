#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vrsw/config.hpp"
#include "vrsw/runner.hpp"
#include "vrsw/units.hpp"

using namespace vrsw;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::path("cli_test_out") / tag;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

// Rows of a CSV file, header and '#' comment lines skipped.
std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(bool(in));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (first && line.find("t_days") != std::string::npos) {
      first = false;
      continue;
    }
    first = false;
    rows.push_back(split_csv(line));
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string error_text(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("unit conversions reproduce the published internal values") {
  // 9.80616 m/s2 in km/day2; the rounded literature value is 7.32e7.
  double g = units::gravity_si_to_internal(9.80616);
  CHECK(g == doctest::Approx(9.80616e-3 * 86400.0 * 86400.0).epsilon(1e-15));
  CHECK(std::abs(g - 7.32e7) / 7.32e7 < 2e-3);

  double f = units::per_second_to_per_day(6.147e-5);
  CHECK(f == doctest::Approx(5.311).epsilon(1e-3));

  CHECK(units::seconds_to_days(60.0) == doctest::Approx(60.0 / 86400.0));
  CHECK(units::seconds_to_days(86400.0) == 1.0);
  CHECK(units::meters_to_km(750.0) == doctest::Approx(0.75));
  // 1 m/s = 86.4 km/day
  CHECK(units::speed_si_to_internal(1.0) == doctest::Approx(86.4));
}

TEST_CASE("config parser fills every section and scales SI inputs") {
  std::string text =
      "# full configuration\n"
      "[mesh]\n"
      "type = refined\n"
      "n1d = 32\n"
      "lx_km = 5000\n"
      "ly_km = 4330\n"
      "monitor_center_x_km = 2500\n"
      "monitor_center_y_km = 2165\n"
      "monitor_width_km = 500\n"
      "monitor_strength = 4.0\n"
      "monitor_step = 1.0\n"
      "monitor_h_floor_km = 10.4\n"
      "monitor_recover_sweeps = 1500\n"
      "monitor_iterations = 600\n"
      "\n"
      "[case]\n"
      "name = isolated_vortex\n"
      "sigma_x_m = 300000   # 300 km\n"
      "sigma_y_m = 399750\n"
      "vortex_mode = streamfunction\n"
      "\n"
      "[physics]\n"
      "g_m_per_s2 = 9.80616\n"
      "f_per_s = 6.147e-5\n"
      "H0_m = 750\n"
      "Hprime_m = 75\n"
      "\n"
      "[time]\n"
      "dt_seconds = 48\n"
      "duration_days = 1\n"
      "\n"
      "[solver]\n"
      "eps_fp = 1e-13\n"
      "max_fp_iterations = 40\n"
      "linear_tol = 1e-14\n"
      "\n"
      "[output]\n"
      "directory = out/vortex\n"
      "qoi_interval_steps = 10\n"
      "snapshot_interval_days = 0.5\n"
      "spectrum_probe = on\n"
      "sample_interval_days = 0.02\n";
  RunConfig cfg = parse_text(text);

  CHECK(cfg.mesh.type == "refined");
  CHECK(cfg.mesh.n1d == 32);
  CHECK(cfg.mesh.lx_km == 5000.0);
  CHECK(cfg.mesh.ly_km == 4330.0);
  CHECK(cfg.mesh.monitor.center.x == 2500.0);
  CHECK(cfg.mesh.monitor.center.y == 2165.0);
  CHECK(cfg.mesh.monitor.width == 500.0);
  CHECK(cfg.mesh.monitor.strength == 4.0);
  CHECK(cfg.mesh.monitor.step == 1.0);
  CHECK(cfg.mesh.monitor.h_floor == 10.4);
  CHECK(cfg.mesh.monitor.recover_sweeps == 1500);
  CHECK(cfg.mesh.monitor_iterations == 600);

  CHECK(cfg.kase.name == "isolated_vortex");
  CHECK(cfg.kase.spec.sigma_x == doctest::Approx(300.0));
  CHECK(cfg.kase.spec.sigma_y == doctest::Approx(399.75));
  CHECK(cfg.kase.spec.vortex_mode == VortexMode::streamfunction);

  CHECK(cfg.physics.g_m_per_s2 == 9.80616);
  CHECK(cfg.physics.f_per_s == 6.147e-5);
  CHECK(cfg.physics.H0_m == 750.0);
  CHECK(cfg.physics.Hprime_m == 75.0);

  CHECK(cfg.time.dt_seconds == 48.0);
  CHECK(cfg.time.duration_days == 1.0);

  CHECK(cfg.solver.eps_fp == 1e-13);
  CHECK(cfg.solver.max_fp_iterations == 40);
  CHECK(cfg.solver.linear_tol == 1e-14);

  CHECK(cfg.output.directory == "out/vortex");
  CHECK(cfg.output.qoi_interval_steps == 10);
  CHECK(cfg.output.snapshot_interval_days == 0.5);
  CHECK(cfg.output.spectrum_probe);
  CHECK(cfg.output.sample_interval_days == 0.02);
}

TEST_CASE("config parser applies defaults when keys are omitted") {
  RunConfig cfg = parse_text(
      "[case]\nname = lake_at_rest\n[time]\ndt_seconds = 60\n");
  CHECK(cfg.mesh.type == "regular");
  CHECK(cfg.mesh.n1d == 32);
  CHECK(cfg.physics.g_m_per_s2 == 9.80616);
  CHECK(cfg.physics.f_per_s == 6.147e-5);
  CHECK(cfg.physics.H0_m < 0.0);   // pick the case default later
  CHECK(cfg.output.qoi_interval_steps == 1);
  CHECK(!cfg.output.spectrum_probe);
}

TEST_CASE("config parser rejects bad input and names the line") {
  std::string base = "[case]\nname = lake_at_rest\n[time]\ndt_seconds = 60\n";

  // Unknown key in a known section, with its line number.
  std::string msg = error_text(base + "[mesh]\nresolution = 9\n");
  CHECK(msg.find("unknown key 'resolution'") != std::string::npos);
  CHECK(msg.find("line 6") != std::string::npos);

  CHECK(error_text(base + "[grid]\n").find("unknown section 'grid'") !=
        std::string::npos);
  CHECK(error_text(base + "[mesh]\nn1d = many\n")
            .find("non-numeric value 'many'") != std::string::npos);
  CHECK(error_text(base + "[mesh]\nn1d = 8.5\n").find("wants an integer") !=
        std::string::npos);
  CHECK(error_text(base + "[output]\nspectrum_probe = maybe\n")
            .find("wants on/off") != std::string::npos);
  CHECK(error_text("[case]\nname = tsunami\n[time]\ndt_seconds = 60\n")
            .find("unknown case name") != std::string::npos);
  CHECK(error_text("just words\n").find("expected key=value") !=
        std::string::npos);
  CHECK(error_text("n1d = 8\n").find("before any [section]") !=
        std::string::npos);
  CHECK(error_text("[time]\ndt_seconds = 60\n").find("must name a case") !=
        std::string::npos);
  CHECK(error_text("[case]\nname = lake_at_rest\n[time]\ndt_seconds = 0\n")
            .find("dt_seconds must be positive") != std::string::npos);
  CHECK(error_text(base + "[mesh]\ntype = file\n").find("needs a path") !=
        std::string::npos);
  CHECK(error_text(base + "[output]\nqoi_interval_steps = 0\n")
            .find("at least 1") != std::string::npos);
  CHECK(error_text(base + "[case]\nvortex_mode = spiral\n")
            .find("vortex_mode must be") != std::string::npos);
}

TEST_CASE("lake at rest run holds every tracked quantity at machine precision") {
  fs::path dir = fresh_dir("lake");
  RunConfig cfg = parse_text(
      "[mesh]\n"
      "type = regular\n"
      "n1d = 16\n"
      "[case]\n"
      "name = lake_at_rest\n"
      "[time]\n"
      "dt_seconds = 60\n"
      "duration_days = 0.069444444444444444922\n"  // 100 steps of 60 s
      "[output]\n"
      "directory = " + (dir / "run").string() + "\n");

  std::ostringstream log;
  RunResult res = run(cfg, log);
  CHECK(res.status == 0);
  CHECK(res.steps == 100);
  CHECK(log.str().find("Courant number C = ") != std::string::npos);

  auto rows = read_rows(dir / "run" / "qoi.csv");
  REQUIRE(rows.size() == 101);
  REQUIRE(rows[0].size() == 11);

  // The reference row must report its own errors as literal zeros.
  CHECK(rows[0][0] == "0");
  for (int j = 7; j < 11; ++j) CHECK(rows[0][j] == "0");

  for (const auto& row : rows) {
    CHECK(row[2] == "0");  // e_kin: the flow never starts moving
    for (int j = 7; j < 11; ++j) {
      CHECK(std::abs(std::stod(row[j])) <= 1e-12);
    }
  }

  // Snapshot files cover every cell and node of the 2*16^2 mesh.
  CHECK(read_rows(dir / "run" / "cells_final.csv").size() == 512);
  CHECK(read_rows(dir / "run" / "nodes_final.csv").size() == 256);
}

TEST_CASE("identical configurations rerun to bitwise identical output") {
  fs::path dir = fresh_dir("repeat");
  std::string head =
      "[mesh]\n"
      "type = regular\n"
      "n1d = 8\n"
      "[case]\n"
      "name = isolated_vortex\n"
      "[time]\n"
      "dt_seconds = 120\n"
      "duration_days = 0.0125\n"  // 9 steps
      "[output]\n"
      "directory = ";
  RunConfig a = parse_text(head + (dir / "a").string() + "\n");
  RunConfig b = parse_text(head + (dir / "b").string() + "\n");

  std::ostringstream log_a, log_b;
  CHECK(run(a, log_a).status == 0);
  CHECK(run(b, log_b).status == 0);

  CHECK(slurp(dir / "a" / "qoi.csv") == slurp(dir / "b" / "qoi.csv"));
  CHECK(slurp(dir / "a" / "cells_final.csv") ==
        slurp(dir / "b" / "cells_final.csv"));
  CHECK(slurp(dir / "a" / "nodes_final.csv") ==
        slurp(dir / "b" / "nodes_final.csv"));
}

TEST_CASE("courant numbers are reported and large ones draw a warning") {
  fs::path dir = fresh_dir("courant");
  // Zero-duration run: the bookkeeping still happens, nothing integrates.
  RunConfig cfg = parse_text(
      "[mesh]\n"
      "type = regular\n"
      "n1d = 4\n"
      "lx_km = 40\n"
      "ly_km = 34.64\n"
      "[case]\n"
      "name = lake_at_rest\n"
      "[physics]\n"
      "H0_m = 10000\n"
      "[time]\n"
      "dt_seconds = 60\n"
      "duration_days = 0\n"
      "[output]\n"
      "directory = " + (dir / "run").string() + "\n");
  std::ostringstream log;
  RunResult res = run(cfg, log);
  CHECK(res.status == 0);
  CHECK(res.courant > 3.0);
  CHECK(log.str().find("Courant number C = ") != std::string::npos);
  CHECK(log.str().find("warning: Courant number exceeds") !=
        std::string::npos);
}

TEST_CASE("a diverging run fails with the stage and simulation time") {
  fs::path dir = fresh_dir("diverge");
  // A vortex pushed far beyond the stability range: the momentum fixed
  // point stops converging and the run must abort, not continue silently.
  RunConfig cfg = parse_text(
      "[mesh]\n"
      "type = regular\n"
      "n1d = 8\n"
      "[case]\n"
      "name = isolated_vortex\n"
      "[time]\n"
      "dt_seconds = 14400\n"
      "duration_days = 1\n"
      "[solver]\n"
      "max_fp_iterations = 30\n"
      "[output]\n"
      "directory = " + (dir / "run").string() + "\n");
  std::ostringstream log;
  RunResult res = run(cfg, log);
  CHECK(res.status == 1);
  CHECK(res.message.find("error during time step at t = ") !=
        std::string::npos);
  CHECK(res.message.find(" days: ") != std::string::npos);
  CHECK(log.str().find(res.message) != std::string::npos);
}

#ifdef VRSW_CLI_BIN

namespace {

int run_cli(const std::string& args, const fs::path& capture) {
  std::string cmd = std::string(VRSW_CLI_BIN) + " " + args + " > " +
                    capture.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  return rc;
}

}  // namespace

TEST_CASE("the command line binary drives mesh, validate, run, spectrum") {
  fs::path dir = fresh_dir("binary");
  fs::path log = dir / "log.txt";

  // Build and save a small regular mesh, then validate it.
  CHECK(run_cli("mesh --make regular --n1d 8 --out " +
                    (dir / "mesh.txt").string(),
                log) == 0);
  CHECK(run_cli("validate --mesh " + (dir / "mesh.txt").string(), log) == 0);
  CHECK(slurp(log).find("ok") != std::string::npos);

  // Run a tiny case from a config file through the binary.
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "[mesh]\ntype = file\npath = " << (dir / "mesh.txt").string()
        << "\n[case]\nname = lake_at_rest\n"
           "[time]\ndt_seconds = 60\nduration_days = 0.00069444444444444444\n"
           "[output]\ndirectory = " << (dir / "ignored").string() << "\n";
  }
  CHECK(run_cli("run --config " + (dir / "run.cfg").string() + " --out " +
                    (dir / "out").string(),
                log) == 0);
  CHECK(fs::exists(dir / "out" / "qoi.csv"));
  CHECK(slurp(log).find("Courant number C = ") != std::string::npos);

  // A known tone must come back as a single peak at its frequency.
  {
    std::ofstream series(dir / "series.csv");
    series << "# t_days,value\n";
    int n = 1000;
    double dt = 0.01;
    for (int i = 0; i < n; ++i) {
      series << i * dt << ',' << std::cos(10.7 * i * dt) << '\n';
    }
  }
  CHECK(run_cli("spectrum --series " + (dir / "series.csv").string(), log) ==
        0);
  {
    std::istringstream out(slurp(log));
    std::vector<double> peaks;
    std::string line;
    while (std::getline(out, line)) {
      if (!line.empty()) peaks.push_back(std::stod(line));
    }
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0] - 10.7) < 2.0 * M_PI / 10.0);
  }

  // Failures surface as nonzero exit codes with a message.
  CHECK(run_cli("run --config " + (dir / "missing.cfg").string(), log) != 0);
  CHECK(slurp(log).find("error:") != std::string::npos);
  CHECK(run_cli("validate --mesh " + (dir / "missing.txt").string(), log) !=
        0);
}

#endif  // VRSW_CLI_BIN
