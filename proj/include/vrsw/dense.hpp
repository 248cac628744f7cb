#pragma once

#include <Eigen/Dense>

#include "vrsw/operators.hpp"

namespace vrsw {

// Brute-force dense mirrors of the sparse stencils, used as cross-check
// oracles in tests. Dense work is quadratic in cell count, so every entry
// point rejects meshes above this size.
constexpr int kDenseMaxCells = 512;

// Full N x N velocity matrix with the same entries as assemble_A.
Eigen::MatrixXd dense_A(const Mesh& m, const EdgeField& V);

// L - Lhat with Lhat_ij := L_ii (row-constant diagonal replication).
Eigen::MatrixXd project_dual(const Eigen::MatrixXd& L);

// Antisymmetric part of project_dual:
// P(L)_ij = (L_ij - L_ji - L_ii + L_jj) / 2.
Eigen::MatrixXd project_one_form(const Eigen::MatrixXd& L);

// Coadjoint action on a dual element: Q(Omega^-1 [A^T, Omega L]).
Eigen::MatrixXd ad_star(const Mesh& m, const Eigen::MatrixXd& A,
                        const Eigen::MatrixXd& L);

// Full circulation matrix built from per-edge circulations: neighbor entries
// directly, node-sharing entries from the closure
//   B_ij + B_jk + B_ki = K_j^e * (dual-loop sum of B at node e)
// over consecutive counterclockwise fan triples (i,j,k). Pairs with no
// common triangle stay zero; they never enter the sparse commutator.
Eigen::MatrixXd complete_circulations(const Mesh& m, const EdgeField& Wflat);

// Neighbor-edge entries of P(Omega^-1 [A^T, Omega diag(D) B]) with B the
// completed circulation matrix: the dense route to lie_derivative_stencil.
EdgeField lie_derivative_oracle(const Mesh& m, const EdgeField& V,
                                const CellField& D, const EdgeField& Wflat);

// (Omega^-1 A^T Omega D)_i: the infinitesimal action of the velocity matrix
// on a density, the dense route to -continuity_rhs.
CellField density_action_oracle(const Mesh& m, const EdgeField& V,
                                const CellField& D);

// Adv(V,D) - K(V) assembled independently from the momentum one-form
// balance: the absolute-vorticity node terms and the kinetic difference
// line, divided by -(Dbar_ij h_ij). Dense route to the dynamics stencils.
EdgeField advection_kinetic_oracle(const Mesh& m, const EdgeField& V,
                                   const CellField& D, double f_cor);

}  // namespace vrsw
