#pragma once

#include <functional>

#include "vrsw/integrator.hpp"

namespace vrsw {

enum class VortexMode { velocity, streamfunction };

// Per-case parameters. Negative lengths select the published defaults,
// which depend on the case (see each initializer).
struct CaseSpec {
  double H0 = -1.0;      // km
  double Hprime = -1.0;  // km
  double Bprime = 0.1;   // km, island amplitude of the lake at rest
  double offset = 0.1;   // fractional center offset o
  double sigma_x = -1.0; // km; negative selects 3 Lx / 40
  double sigma_y = -1.0; // km; negative selects 3 Ly / 40
  double kappa = 0.1;           // shear: perturbation strength
  double lambda_x = 0.5;        // shear: perturbation wavelength fraction
  double sigma_y_jet = 1.0 / 12.0;  // shear: jet width fraction of Ly
  VortexMode vortex_mode = VortexMode::velocity;
};

struct LakeCase {
  State state;
  CellField B;
};

// Fluid at rest over a Gaussian island: B' exp(-(dx^2/sx^2 + dy^2/sy^2)/2)
// centered at ((1/2-o)Lx, (1/2-o)Ly), V = 0, and D + B = H0 in every cell
// bitwise (the depths are nudged by one rounding step where needed, so the
// discrete surface is exactly flat and the pressure gradient vanishes
// identically). Defaults: H0 = 0.75, B' = 0.1, o = 0.1.
LakeCase init_lake_at_rest(const Mesh& m, const CaseSpec& spec);

// Small circular surface depression at the domain center with the
// sine-extended coordinates, zero velocity, flat bottom. Defaults:
// H0 = 0.75, H' = 0.0075, sigma_x = sigma_y = 3 Ly / 40.
State init_disturbed_lake(const Mesh& m, const CaseSpec& spec);

struct VortexCase {
  State state;
  double u0 = 0.0;  // km/day
  double r0 = 0.0;  // km
  // exact stationary fields for error norms, evaluated at wrapped points
  std::function<double(Vec2)> depth;
  std::function<Vec2(Vec2)> velocity;
  std::function<double(Vec2)> q_rel;
};

// Stationary gradient-wind vortex at the domain center:
//   V(r) = u0 (r/r0) exp(-(r/r0)^2/2),
//   H(r) = H0 - u0^2/(2g) exp(-(r/r0)^2) - f u0 r0/g exp(-(r/r0)^2/2),
// r0 = (sigma_x + sigma_y)/2, u0 = 2 g H'/(f 4 r0). Velocities either from
// the analytic field at edge midpoints (default) or from the node-sampled
// streamfunction Psi(r) = -u0 r0 exp(-(r/r0)^2/2) through the tangential
// gradient. Defaults: H0 = 0.75, H' = 0.075.
VortexCase init_isolated_vortex(const Mesh& m, const PhysParams& phys,
                                const CaseSpec& spec);

// Two corotating depressions at ((1/2 -+ o)Lx, (1/2 -+ o)Ly) with the
// sine-extended coordinates; the velocity comes from the discrete
// geostrophic balance V = -(g/f) Gperp(h) with h sampled at the nodes.
// Defaults: H0 = 0.75, H' = 0.075, o = 0.1.
State init_vortex_pair(const Mesh& m, const PhysParams& phys,
                       const CaseSpec& spec);

// Unstable zonal double jet with a small sinusoidal perturbation, velocity
// from the same discrete geostrophic construction. Defaults: H0 = 1.076,
// H' = 0.03, kappa = 0.1, lambda_x = 1/2, sigma_y_jet = 1/12.
State init_shear_flow(const Mesh& m, const PhysParams& phys,
                      const CaseSpec& spec);

}  // namespace vrsw
