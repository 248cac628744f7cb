#pragma once

#include <functional>
#include <stdexcept>

#include "vrsw/operators.hpp"

namespace vrsw {

// invalid model state (e.g. vanishing depth where the scheme divides by it)
struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal units: km, days. g defaults to 9.80616 m/s^2 expressed in
// km/day^2; f is the f-plane Coriolis parameter.
struct PhysParams {
  double g = 7.32e7;   // km/day^2
  double f = 5.3108;   // 1/day
  double H0 = 0.75;    // km, reference depth used by diagnostics
  CellField B;         // bottom topography, km; empty means flat

  // derivative of the internal energy density with respect to depth; null
  // selects the shallow-water law eps(D) = g (D+B)^2 / 2, i.e. g (D+B)
  std::function<double(double D, double B)> eps_prime;

  double bottom(int c) const { return B.empty() ? 0.0 : B[c]; }
  double eps_prime_at(double D, double Bc) const {
    return eps_prime ? eps_prime(D, Bc) : g * (D + Bc);
  }
};

// edges where the depth average falls at or below this are a state error
constexpr double kDepthFloor = 1e-10;  // km

// Absolute-vorticity transport tendency: for each edge, the two node terms
//   -+ (curl V + f)|node * sum of kite-weighted flank fluxes / (Dbar_ij h_ij)
// (minus at the "-" node, plus at the "+" node).
EdgeField advection_term(const Mesh& m, const EdgeField& V, const CellField& D,
                         double f_cor);

// Kinetic-energy gradient tendency: difference of the two cells' weighted
// V^2 sums over their three edges, divided by -2 h_ij.
EdgeField kinetic_term(const Mesh& m, const EdgeField& V);

// (eps'(D_j) - eps'(D_i)) / h_ij; equals g (D_j+B_j - D_i-B_i)/h_ij for the
// default shallow-water energy.
EdgeField pressure_term(const Mesh& m, const CellField& D,
                        const PhysParams& params);

// dV/dt = -advection + kinetic - pressure
EdgeField momentum_rhs(const Mesh& m, const EdgeField& V, const CellField& D,
                       const PhysParams& params);

// dD/dt = -div(V, D)
CellField continuity_rhs(const Mesh& m, const EdgeField& V, const CellField& D);

}  // namespace vrsw
