#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vrsw/integrator.hpp"

using namespace vrsw;

namespace {

constexpr double kLx = 5000.0;
const double kLyExact = 5000.0 * std::sqrt(3.0) / 2.0;
constexpr double kDtMinute = 60.0 / 86400.0;

EdgeField random_edges(const Mesh& m, std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  EdgeField V(m.n_edges());
  for (double& v : V) v = dist(rng);
  return V;
}

CellField random_cells(const Mesh& m, std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  CellField D(m.n_cells());
  for (double& d : D) d = dist(rng);
  return D;
}

double total_mass(const Mesh& m, const CellField& D) {
  double s = 0.0;
  for (int c = 0; c < m.n_cells(); ++c) s += m.cell_area[c] * D[c];
  return s;
}

double total_vorticity(const Mesh& m, const EdgeField& V, double f_cor) {
  NodeField w = curl(m, V);
  double s = 0.0;
  for (int v = 0; v < m.n_nodes(); ++v) {
    s += (w[v] + f_cor) * m.node_loops[v].area;
  }
  return s;
}

struct LakeAtRest {
  CellField B;
  CellField D;
};

LakeAtRest make_lake(const Mesh& m, double H0) {
  LakeAtRest lake;
  lake.B.resize(m.n_cells());
  lake.D.resize(m.n_cells());
  double xc = 0.4 * m.Lx;
  double yc = 0.4 * m.Ly;
  double sx = 3.0 * m.Lx / 40.0;
  double sy = 3.0 * m.Ly / 40.0;
  for (int c = 0; c < m.n_cells(); ++c) {
    Vec2 d2 = m.delta(m.cell_barycenter[c], {xc, yc});
    lake.B[c] = 0.1 * std::exp(-0.5 * (d2.x * d2.x / (sx * sx) +
                                       d2.y * d2.y / (sy * sy)));
    double d = H0 - lake.B[c];
    for (int it = 0; it < 4 && d + lake.B[c] != H0; ++it) {
      d -= (d + lake.B[c]) - H0;
    }
    REQUIRE(d + lake.B[c] == H0);
    lake.D[c] = d;
  }
  return lake;
}

}  // namespace

TEST_CASE("resting velocity leaves the depths untouched") {
  Mesh m = build_regular_mesh(8, kLx, kLyExact);
  std::mt19937 rng(101);
  CellField D = random_cells(m, rng, 0.4, 1.2);
  EdgeField V(m.n_edges(), 0.0);
  CellField D1 = density_step(m, V, D, kDtMinute);
  for (int c = 0; c < m.n_cells(); ++c) CHECK(D1[c] == D[c]);
}

TEST_CASE("depth transport conserves mass") {
  Mesh m = build_regular_mesh(16, kLx, kLyExact);
  std::mt19937 rng(103);
  EdgeField V = random_edges(m, rng, 150.0);
  CellField D = random_cells(m, rng, 0.4, 1.2);
  double m0 = total_mass(m, D);
  for (int s = 0; s < 10; ++s) {
    D = density_step(m, V, D, kDtMinute);
    CHECK(std::abs(total_mass(m, D) - m0) <= 1e-12 * std::abs(m0));
  }
}

TEST_CASE("single-flux update matches the hand-solved two-cell system") {
  Mesh m = build_regular_mesh(4, kLx, kLyExact);
  std::mt19937 rng(107);
  CellField D = random_cells(m, rng, 0.4, 1.2);
  EdgeField V(m.n_edges(), 0.0);
  int e = 7;
  V[e] = 120.0;
  int i = m.edges[e].cell_i;
  int j = m.edges[e].cell_j;
  double dt = kDtMinute;

  CellField D1 = density_step(m, V, D, dt);

  // only cells i and j are coupled; the 2x2 Crank-Nicolson block is
  //   (1 - a alpha) x_i - a alpha x_j = (1 + a alpha) D_i + a alpha D_j
  //   -a beta x_i + (1 - a beta) x_j = a beta D_i + (1 + a beta) D_j
  // with alpha = A_ij, beta = A_ji, a = dt/2
  double alpha = -0.5 / m.cell_area[i] * m.edges[e].f * V[e];
  double beta = 0.5 / m.cell_area[j] * m.edges[e].f * V[e];
  double a = 0.5 * dt;
  double det = (1.0 - a * alpha) * (1.0 - a * beta) - (a * alpha) * (a * beta);
  double ri = (1.0 + a * alpha) * D[i] + a * alpha * D[j];
  double rj = a * beta * D[i] + (1.0 + a * beta) * D[j];
  double xi = (ri * (1.0 - a * beta) + a * alpha * rj) / det;
  double xj = (rj * (1.0 - a * alpha) + a * beta * ri) / det;

  CHECK(std::abs(D1[i] - xi) <= 1e-14);
  CHECK(std::abs(D1[j] - xj) <= 1e-14);
  for (int c = 0; c < m.n_cells(); ++c) {
    if (c != i && c != j) CHECK(std::abs(D1[c] - D[c]) <= 1e-14);
  }
}

TEST_CASE("quiescent start: the velocity update is the pressure impulse") {
  Mesh m = build_regular_mesh(16, kLx, kLyExact);
  PhysParams params;
  CellField D(m.n_cells());
  for (int c = 0; c < m.n_cells(); ++c) {
    D[c] = 0.75 + 0.05 * std::sin(2.0 * M_PI * m.cell_barycenter[c].x / m.Lx);
  }
  EdgeField V(m.n_edges(), 0.0);
  SolverParams solver;
  solver.dt = kDtMinute;

  CellField D1 = density_step(m, V, D, solver.dt);
  for (int c = 0; c < m.n_cells(); ++c) REQUIRE(D1[c] == D[c]);
  EdgeField G = pressure_term(m, D1, params);

  // a tolerance coarser than the first correction stops the loop at once,
  // exposing the closed-form first iterate
  SolverParams loose = solver;
  loose.eps_fp = 1e6;
  MomentumResult one = momentum_step(m, V, D, D1, params, loose);
  CHECK(one.iterations == 1);
  for (int e = 0; e < m.n_edges(); ++e) {
    CHECK(one.V[e] == -solver.dt * G[e]);
  }

  // the converged velocity stays within a Courant-sized correction of it
  // and satisfies the implicit update equation
  MomentumResult conv = momentum_step(m, V, D, D1, params, solver);
  double gmax = 0.0, dmax = 0.0, rmax = 0.0;
  EdgeField adv = advection_term(m, conv.V, D1, params.f);
  EdgeField kin = kinetic_term(m, conv.V);
  for (int e = 0; e < m.n_edges(); ++e) {
    gmax = std::max(gmax, std::abs(solver.dt * G[e]));
    dmax = std::max(dmax, std::abs(conv.V[e] + solver.dt * G[e]));
    double r = (conv.V[e] - V[e]) / solver.dt + 0.5 * adv[e] - 0.5 * kin[e] +
               G[e];
    rmax = std::max(rmax, std::abs(r));
  }
  CHECK(dmax <= 0.01 * gmax);
  CHECK(rmax <= 1e-6 * gmax / solver.dt);
}

TEST_CASE("lake at rest is a bitwise fixed point of the full step") {
  Mesh m = build_regular_mesh(16, kLx, kLyExact);
  PhysParams params;
  LakeAtRest lake = make_lake(m, 0.75);
  params.B = lake.B;
  SolverParams solver;
  solver.dt = kDtMinute;

  State s;
  s.V.assign(m.n_edges(), 0.0);
  s.D = lake.D;
  for (int n = 0; n < 100; ++n) {
    StepResult r = step(m, s, params, solver);
    s = r.state;
    CHECK(r.fp_iterations == 1);
  }
  for (int e = 0; e < m.n_edges(); ++e) CHECK(s.V[e] == 0.0);
  for (int c = 0; c < m.n_cells(); ++c) CHECK(s.D[c] + lake.B[c] == 0.75);
  CHECK(s.t == doctest::Approx(100 * solver.dt));
}

TEST_CASE("mass and planar vorticity are conserved along a run") {
  Mesh m = build_regular_mesh(16, kLx, kLyExact);
  PhysParams params;
  std::mt19937 rng(109);
  SolverParams solver;
  solver.dt = 30.0 / 86400.0;

  State s;
  s.V = random_edges(m, rng, 20.0);
  s.D.resize(m.n_cells());
  for (int c = 0; c < m.n_cells(); ++c) {
    s.D[c] = 0.75 + 0.02 * std::cos(2.0 * M_PI * m.cell_barycenter[c].y / m.Ly);
  }
  double m0 = total_mass(m, s.D);
  double pv0 = total_vorticity(m, s.V, params.f);
  CHECK(std::abs(pv0 - params.f * m.Lx * m.Ly) <= 1e-12 * std::abs(pv0));

  for (int n = 0; n < 20; ++n) {
    s = step(m, s, params, solver).state;
    CHECK(std::abs(total_mass(m, s.D) - m0) <= 1e-12 * std::abs(m0));
    double pv = total_vorticity(m, s.V, params.f);
    CHECK(std::abs(pv - pv0) <= 1e-12 * std::abs(pv0));
  }
}

TEST_CASE("a reflected state with opposite rotation runs the mirrored path") {
  Mesh m = build_regular_mesh(8, kLx, kLyExact);
  const int nc = m.n_cells();
  const int ne = m.n_edges();

  // self-map of the mesh under y -> Ly - y, found by matching coordinates
  auto near = [&](Vec2 a, Vec2 b) {
    Vec2 d = m.delta(a, b);
    return std::sqrt(d.x * d.x + d.y * d.y) < 1e-6;
  };
  std::vector<int> cell_map(nc, -1);
  for (int c = 0; c < nc; ++c) {
    Vec2 q = m.wrap({m.cell_barycenter[c].x, m.Ly - m.cell_barycenter[c].y});
    for (int d = 0; d < nc; ++d) {
      if (near(q, m.cell_barycenter[d])) {
        cell_map[c] = d;
        break;
      }
    }
    REQUIRE(cell_map[c] >= 0);
  }
  std::vector<int> edge_map(ne, -1);
  std::vector<double> edge_sign(ne, 0.0);
  for (int e = 0; e < ne; ++e) {
    Vec2 q = m.wrap({m.edges[e].mid.x, m.Ly - m.edges[e].mid.y});
    for (int d = 0; d < ne; ++d) {
      if (near(q, m.edges[d].mid)) {
        edge_map[e] = d;
        double dot = m.edges[d].n.x * m.edges[e].n.x -
                     m.edges[d].n.y * m.edges[e].n.y;
        REQUIRE(std::abs(std::abs(dot) - 1.0) < 1e-9);
        edge_sign[e] = dot > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    REQUIRE(edge_map[e] >= 0);
  }

  std::mt19937 rng(113);
  State s;
  s.V = random_edges(m, rng, 15.0);
  s.D.resize(nc);
  for (int c = 0; c < nc; ++c) {
    Vec2 p = m.cell_barycenter[c];
    s.D[c] = 0.75 + 0.02 * std::sin(2.0 * M_PI * p.x / m.Lx) +
             0.01 * std::cos(2.0 * M_PI * p.y / m.Ly);
  }
  State sm;
  sm.V.resize(ne);
  sm.D.resize(nc);
  for (int e = 0; e < ne; ++e) sm.V[edge_map[e]] = edge_sign[e] * s.V[e];
  for (int c = 0; c < nc; ++c) sm.D[cell_map[c]] = s.D[c];

  PhysParams params;
  PhysParams mirrored = params;
  mirrored.f = -params.f;
  SolverParams solver;
  solver.dt = 30.0 / 86400.0;

  for (int n = 0; n < 5; ++n) {
    s = step(m, s, params, solver).state;
    sm = step(m, sm, mirrored, solver).state;
  }
  double vscale = 0.0;
  for (double v : s.V) vscale = std::max(vscale, std::abs(v));
  for (int e = 0; e < ne; ++e) {
    CHECK(std::abs(sm.V[edge_map[e]] - edge_sign[e] * s.V[e]) <=
          1e-10 * vscale);
  }
  for (int c = 0; c < nc; ++c) {
    CHECK(std::abs(sm.D[cell_map[c]] - s.D[c]) <= 1e-12);
  }
}

TEST_CASE("courant number at the published operating points") {
  double g = 7.32e7;
  {
    Mesh m = build_regular_mesh(4, 4.0 * 5.183 * std::sqrt(3.0),
                                4.0 * 5.183 * 1.5);
    double C = courant_number(m, 0.75, 60.0 / 86400.0, g);
    CHECK(std::abs(C - 0.99) < 0.005);
    CHECK(courant_number(m, 0.75, 0.0, g) == 0.0);
  }
  {
    Mesh m = build_regular_mesh(4, 4.0 * 1.313 * std::sqrt(3.0),
                                4.0 * 1.313 * 1.5);
    double C = courant_number(m, 10.0, 12.0 / 86400.0, g);
    CHECK(std::abs(C - 2.86) < 0.005);
  }
}

TEST_CASE("a stalled momentum fixed point is reported") {
  Mesh m = build_regular_mesh(8, kLx, kLyExact);
  std::mt19937 rng(127);
  PhysParams params;
  CellField D(m.n_cells(), 0.75);
  EdgeField V = random_edges(m, rng, 500.0);
  SolverParams solver;
  solver.dt = 1.0;  // far beyond the stable Courant range
  CHECK_THROWS_AS(momentum_step(m, V, D, D, params, solver), StepError);
}
