#pragma once

#include <stdexcept>

#include "vrsw/dynamics.hpp"

namespace vrsw {

// time advancement failure (singular solve or stalled fixed point)
struct StepError : std::runtime_error {
  double residual = 0.0;
  StepError(const std::string& what, double r)
      : std::runtime_error(what), residual(r) {}
};

struct State {
  double t = 0.0;  // days
  EdgeField V;     // km/day
  CellField D;     // km
};

struct SolverParams {
  double dt = 0.0;            // days
  double eps_fp = 1e-12;      // km/day, max-norm of the velocity change
  int max_fp_iterations = 50;
  double linear_tol = 1e-13;  // relative residual of the density solve
};

// Crank-Nicolson (Cayley) transport of the depths by the velocity matrix of
// V_t: (I - dt/2 M) D_next = (I + dt/2 M) D_t, with M the density action
// M_ii = -A_ii, M_ik = A_ik. Mass is conserved because the columns of M sum
// to zero against the cell areas.
CellField density_step(const Mesh& m, const EdgeField& V_t,
                       const CellField& D_t, double dt,
                       double linear_tol = 1e-13);

struct MomentumResult {
  EdgeField V;
  int iterations = 0;
};

// Fixed-point solve of the implicit midpoint momentum update
//   (V_next - V_t)/dt = -avg(Adv(V_next,D_next), Adv(V_t,D_t))
//                       + avg(K(V_next), K(V_t)) - G(D_next),
// starting from V_t; throws when max_fp_iterations is exhausted.
MomentumResult momentum_step(const Mesh& m, const EdgeField& V_t,
                             const CellField& D_t, const CellField& D_next,
                             const PhysParams& params,
                             const SolverParams& solver);

struct StepResult {
  State state;
  int fp_iterations = 0;
};

// density update first, then the momentum update against the new depths
StepResult step(const Mesh& m, const State& s, const PhysParams& params,
                const SolverParams& solver);

// C = sqrt(g H0) dt / min_edge h
double courant_number(const Mesh& m, double H0, double dt, double g);

}  // namespace vrsw
