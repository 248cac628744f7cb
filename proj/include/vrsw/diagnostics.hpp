#pragma once

#include <stdexcept>
#include <vector>

#include "vrsw/integrator.hpp"

namespace vrsw {

struct DiagnosticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conserved-quantity snapshot. Energies carry the raw formula units
// (km^5/day^2); the relative errors are against a caller-chosen reference.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;   // sum D_i Omega_ii
  double e_kin = 0.0;  // sum (D_i/2) sum_k h_ik f_ik V_ik^2 / 2
  double e_pot = 0.0;  // sum g/2 (D_i+B_i)^2 Omega_ii
  double e_tot = 0.0;  // e_kin + e_pot
  double pv = 0.0;     // sum_nodes (curl(V)+f) |zeta|
  double pe = 0.0;     // 1/2 sum_nodes (curl(V)+f)^2 / D_e |zeta|
  double rel_err_mass = 0.0;
  double rel_err_e_tot = 0.0;
  double rel_err_pv = 0.0;
  double rel_err_pe = 0.0;
};

// Evaluate all quantities; relative errors are left at zero.
DiagnosticsRecord quantities(const Mesh& m, const State& s,
                             const PhysParams& params);

// |x - ref| / |ref| for mass, e_tot, pv, pe.
void set_relative_errors(DiagnosticsRecord& r, const DiagnosticsRecord& ref);

// Depth at a node: the kite-area weighted average of the fan's cell depths.
double node_depth(const Mesh& m, const CellField& D, int node);

// curl(V)/D_e per node (relative potential vorticity).
NodeField relative_pv(const Mesh& m, const EdgeField& V, const CellField& D);

struct ErrorNorms {
  double l2 = 0.0;
  double linf = 0.0;
};

// Area-weighted relative norms of field_t against field_0:
// L2 = |f_t Omega - f_0 Omega|_2 / |f_0 Omega|_2, Linf analogous.
ErrorNorms error_norms(const Mesh& m, const CellField& field_t,
                       const CellField& field_0);

// Direct DFT peak extraction from a uniformly sampled series. The mean is
// removed; a bin is a peak when its magnitude is a strict local maximum
// exceeding 5x the median bin magnitude. Returns ascending frequencies in
// rad/day with resolution 2*pi/(n*sample_interval). `window` applies a Hann
// taper first (off by default: the probe signals are near-periodic).
std::vector<double> spectrum(const std::vector<double>& series,
                             double sample_interval, bool window = false);

struct ModeFrequency {
  int nx = 0;
  int ny = 0;
  double omega = 0.0;  // rad/day
};

// Inertia-gravity dispersion omega^2 = f^2 + g H0 (k^2 + l^2) for all
// wavenumber pairs 0 <= nx, ny <= n_max, k = nx 2 pi / Lx.
std::vector<ModeFrequency> predict_frequencies(double f, double g, double H0,
                                               double Lx, double Ly,
                                               int n_max);

struct RegimeNumbers {
  double U = 0.0;    // km/day
  double Ro = 0.0;
  double Fr = 0.0;
  double Bu = 0.0;
  double L_D = 0.0;  // km
};

// U = 2 g H' / (f d), Ro = U/(f d), Fr = U/sqrt(g H0), Bu = Ro^2/Fr^2,
// L_D = sqrt(g H0)/f.
RegimeNumbers regime_numbers(double g, double f, double H0, double Hprime,
                             double d);

}  // namespace vrsw
