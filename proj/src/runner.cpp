#include "vrsw/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "vrsw/diagnostics.hpp"
#include "vrsw/units.hpp"

namespace vrsw {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double case_default_H0(const std::string& name) {
  return name == "shear_flow" ? 1.076 : 0.75;
}

Mesh build_mesh(const RunConfig::MeshBlock& mb) {
  if (mb.type == "file") return load_mesh(mb.path);
  Mesh base = build_regular_mesh(mb.n1d, mb.lx_km, mb.ly_km);
  if (mb.type == "regular") return base;
  return build_refined_mesh(base, mb.monitor, mb.monitor_iterations);
}

struct CaseSetup {
  State state;
  CellField B;  // empty for flat-bottom cases
};

CaseSetup init_case(const Mesh& m, const std::string& name,
                    const PhysParams& phys, const CaseSpec& spec) {
  CaseSetup out;
  if (name == "lake_at_rest") {
    LakeCase lake = init_lake_at_rest(m, spec);
    out.state = std::move(lake.state);
    out.B = std::move(lake.B);
  } else if (name == "disturbed_lake") {
    out.state = init_disturbed_lake(m, spec);
  } else if (name == "isolated_vortex") {
    out.state = init_isolated_vortex(m, phys, spec).state;
  } else if (name == "vortex_pair") {
    out.state = init_vortex_pair(m, phys, spec);
  } else {
    out.state = init_shear_flow(m, phys, spec);
  }
  return out;
}

void write_qoi_row(std::ofstream& f, const DiagnosticsRecord& r) {
  f << num(r.t) << ',' << num(r.mass) << ',' << num(r.e_kin) << ','
    << num(r.e_pot) << ',' << num(r.e_tot) << ',' << num(r.pv) << ','
    << num(r.pe) << ',' << num(r.rel_err_mass) << ',' << num(r.rel_err_e_tot)
    << ',' << num(r.rel_err_pv) << ',' << num(r.rel_err_pe) << '\n';
}

void write_snapshot(const std::filesystem::path& dir, const std::string& tag,
                    const Mesh& m, const State& s) {
  std::ofstream cells(dir / ("cells_" + tag + ".csv"));
  cells << "# cell_id,x_km,y_km,D_km\n";
  for (int c = 0; c < m.n_cells(); ++c) {
    cells << c << ',' << num(m.cell_barycenter[c].x) << ','
          << num(m.cell_barycenter[c].y) << ',' << num(s.D[c]) << '\n';
  }
  NodeField q = relative_pv(m, s.V, s.D);
  std::ofstream nodes(dir / ("nodes_" + tag + ".csv"));
  nodes << "# node_id,x_km,y_km,q_rel\n";
  for (int v = 0; v < m.n_nodes(); ++v) {
    nodes << v << ',' << num(m.node_xy[v].x) << ',' << num(m.node_xy[v].y)
          << ',' << num(q[v]) << '\n';
  }
}

}  // namespace

RunResult run(const RunConfig& cfg, std::ostream& log) {
  RunResult res;
  std::string stage = "setup";
  double t_now = 0.0;
  try {
    Mesh m = build_mesh(cfg.mesh);

    PhysParams phys;
    phys.g = units::gravity_si_to_internal(cfg.physics.g_m_per_s2);
    phys.f = units::per_second_to_per_day(cfg.physics.f_per_s);
    phys.H0 = cfg.physics.H0_m >= 0.0 ? units::meters_to_km(cfg.physics.H0_m)
                                      : case_default_H0(cfg.kase.name);

    CaseSpec spec = cfg.kase.spec;
    spec.H0 = phys.H0;
    if (cfg.physics.Hprime_m >= 0.0) {
      spec.Hprime = units::meters_to_km(cfg.physics.Hprime_m);
    }

    stage = "case initialization";
    CaseSetup setup = init_case(m, cfg.kase.name, phys, spec);
    phys.B = setup.B;
    State state = std::move(setup.state);

    SolverParams solver;
    solver.dt = units::seconds_to_days(cfg.time.dt_seconds);
    solver.eps_fp = cfg.solver.eps_fp;
    solver.max_fp_iterations = cfg.solver.max_fp_iterations;
    solver.linear_tol = cfg.solver.linear_tol;

    res.courant = courant_number(m, phys.H0, solver.dt, phys.g);
    {
      char buf[96];
      std::snprintf(buf, sizeof buf, "Courant number C = %.2f", res.courant);
      log << buf << '\n';
    }
    if (res.courant > 3.0) {
      log << "warning: Courant number exceeds the stability range "
             "(about 3); the momentum fixed point may diverge\n";
    }

    long nsteps =
        std::llround(cfg.time.duration_days / solver.dt);
    if (nsteps < 0) nsteps = 0;
    if (std::abs(nsteps * solver.dt - cfg.time.duration_days) >
        1e-9 * std::max(cfg.time.duration_days, solver.dt)) {
      log << "warning: duration is not a whole number of steps; running "
          << nsteps << " steps\n";
    }

    long probe_every = 0;
    double probe_interval = 0.0;
    std::vector<double> probe_series;
    int probe_cell = -1;
    if (cfg.output.spectrum_probe) {
      probe_every = std::max(
          1LL, std::llround(cfg.output.sample_interval_days / solver.dt));
      probe_interval = probe_every * solver.dt;
      if (std::abs(probe_interval - cfg.output.sample_interval_days) >
          1e-9 * cfg.output.sample_interval_days) {
        log << "warning: sample interval rounded to " << probe_interval
            << " days (a whole number of steps)\n";
      }
      Vec2 center{0.5 * m.Lx, 0.5 * m.Ly};
      double best = 1e300;
      for (int c = 0; c < m.n_cells(); ++c) {
        Vec2 d = m.delta(m.cell_barycenter[c], center);
        double r2 = d.x * d.x + d.y * d.y;
        if (r2 < best) {
          best = r2;
          probe_cell = c;
        }
      }
      probe_series.push_back(state.D[probe_cell]);
    }

    long snap_every = 0;
    if (cfg.output.snapshot_interval_days > 0.0) {
      snap_every = std::max(
          1LL, std::llround(cfg.output.snapshot_interval_days / solver.dt));
    }

    stage = "output setup";
    std::filesystem::path dir(cfg.output.directory);
    std::filesystem::create_directories(dir);
    std::ofstream qoi(dir / "qoi.csv");
    qoi << "t_days,mass,e_kin,e_pot,e_tot,pv,pe,rel_err_mass,rel_err_e_tot,"
           "rel_err_pv,rel_err_pe\n";

    stage = "initial diagnostics";
    DiagnosticsRecord ref = quantities(m, state, phys);
    DiagnosticsRecord r0 = ref;
    set_relative_errors(r0, ref);
    write_qoi_row(qoi, r0);

    int snap_index = 0;
    for (long step_no = 1; step_no <= nsteps; ++step_no) {
      stage = "time step";
      t_now = state.t;
      StepResult sr = step(m, state, phys, solver);
      state = std::move(sr.state);
      t_now = state.t;

      if (step_no % cfg.output.qoi_interval_steps == 0 ||
          step_no == nsteps) {
        stage = "diagnostics";
        DiagnosticsRecord r = quantities(m, state, phys);
        set_relative_errors(r, ref);
        write_qoi_row(qoi, r);
      }
      if (probe_every > 0 && step_no % probe_every == 0) {
        probe_series.push_back(state.D[probe_cell]);
      }
      if (snap_every > 0 && step_no % snap_every == 0) {
        stage = "snapshot";
        write_snapshot(dir, std::to_string(++snap_index), m, state);
      }
    }
    res.steps = nsteps;

    stage = "final snapshot";
    write_snapshot(dir, "final", m, state);

    if (cfg.output.spectrum_probe) {
      stage = "probe output";
      std::ofstream probe(dir / "probe.csv");
      probe << "# t_days,D_km\n";
      for (size_t i = 0; i < probe_series.size(); ++i) {
        probe << num(i * probe_interval) << ',' << num(probe_series[i])
              << '\n';
      }
      stage = "spectrum";
      std::ofstream peaks(dir / "spectrum_peaks.csv");
      peaks << "# omega_rad_per_day\n";
      if (probe_series.size() >= 16) {
        res.spectrum_peaks = spectrum(probe_series, probe_interval);
        for (double w : res.spectrum_peaks) peaks << num(w) << '\n';
      } else {
        log << "warning: probe series too short for a spectrum; peaks file "
               "left empty\n";
      }
    }
  } catch (const std::exception& ex) {
    res.status = 1;
    res.message = "error during " + stage + " at t = " + num(t_now) +
                  " days: " + ex.what();
    log << res.message << '\n';
    return res;
  }
  return res;
}

}  // namespace vrsw
