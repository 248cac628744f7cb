#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vrsw/diagnostics.hpp"
#include "vrsw/runner.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  try {
    vrsw::RunConfig cfg = vrsw::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.output.directory = out_dir;
    vrsw::RunResult res = vrsw::run(cfg, std::cout);
    return res.status;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}

int cmd_mesh(const std::string& make, int n1d, double lx, double ly,
             const vrsw::MonitorParams& monitor, int iterations,
             const std::string& out_path) {
  try {
    vrsw::Mesh m = vrsw::build_regular_mesh(n1d, lx, ly);
    if (make == "refined") m = vrsw::build_refined_mesh(m, monitor, iterations);
    vrsw::save_mesh(m, out_path);
    std::cout << "wrote " << out_path << " (" << m.n_cells() << " cells, "
              << m.n_edges() << " edges, " << m.n_nodes() << " nodes)\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}

int cmd_validate(const std::string& mesh_path) {
  try {
    vrsw::Mesh m = vrsw::load_mesh(mesh_path);
    vrsw::ValidationReport rep = vrsw::validate(m);
    if (rep.ok()) {
      std::cout << "mesh ok: " << m.n_cells() << " cells, " << m.n_edges()
                << " edges, " << m.n_nodes() << " nodes\n";
      return 0;
    }
    for (const std::string& v : rep.violations) std::cout << v << '\n';
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}

int cmd_spectrum(const std::string& series_path, bool window) {
  try {
    std::ifstream in(series_path);
    if (!in) {
      std::cerr << "error: cannot open '" << series_path << "'\n";
      return 1;
    }
    std::vector<double> t, x;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      double a, b;
      char comma;
      if (row >> a >> comma >> b) {
        t.push_back(a);
        x.push_back(b);
      }
    }
    if (t.size() < 2) {
      std::cerr << "error: series needs at least two rows of t,value\n";
      return 1;
    }
    double dt = t[1] - t[0];
    std::vector<double> peaks = vrsw::spectrum(x, dt, window);
    for (double w : peaks) std::cout << w << '\n';
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational rotating shallow water integrator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  CLI::App* run = app.add_subcommand("run", "integrate a configured case");
  run->add_option("--config", config_path, "path to a run config")->required();
  run->add_option("--out", out_dir, "override the output directory");

  std::string make = "regular", mesh_out = "mesh.txt";
  int n1d = 32, iterations = 600;
  double lx = 5000.0, ly = 4330.0;
  vrsw::MonitorParams monitor;
  CLI::App* mesh = app.add_subcommand("mesh", "build and save a mesh");
  mesh->add_option("--make", make, "regular or refined")
      ->check(CLI::IsMember({"regular", "refined"}));
  mesh->add_option("--n1d", n1d, "cells per direction (even, >= 4)");
  mesh->add_option("--lx-km", lx, "domain length in x");
  mesh->add_option("--ly-km", ly, "domain length in y");
  mesh->add_option("--center-x-km", monitor.center.x, "monitor center x");
  mesh->add_option("--center-y-km", monitor.center.y, "monitor center y");
  mesh->add_option("--width-km", monitor.width, "monitor width");
  mesh->add_option("--strength", monitor.strength, "monitor strength");
  mesh->add_option("--step", monitor.step, "relaxation pseudo time step");
  mesh->add_option("--h-floor-km", monitor.h_floor, "minimum edge length");
  mesh->add_option("--recover-sweeps", monitor.recover_sweeps,
                   "length recovery sweeps");
  mesh->add_option("--iterations", iterations, "relaxation iterations");
  mesh->add_option("--out", mesh_out, "output path");

  std::string mesh_path;
  CLI::App* val = app.add_subcommand("validate", "check a saved mesh");
  val->add_option("--mesh", mesh_path, "path to a saved mesh")->required();

  std::string series_path;
  bool window = false;
  CLI::App* spec = app.add_subcommand("spectrum", "peaks of a t,value series");
  spec->add_option("--series", series_path, "csv with t,value rows")
      ->required();
  spec->add_flag("--window", window, "apply a Hann window");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, out_dir);
  if (mesh->parsed())
    return cmd_mesh(make, n1d, lx, ly, monitor, iterations, mesh_out);
  if (val->parsed()) return cmd_validate(mesh_path);
  return cmd_spectrum(series_path, window);
}
