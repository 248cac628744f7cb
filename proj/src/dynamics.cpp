#include "vrsw/dynamics.hpp"

#include <cmath>
#include <string>

namespace vrsw {

namespace {

void check_state(const Mesh& m, const EdgeField& V, const CellField& D) {
  if (static_cast<int>(V.size()) != m.n_edges()) {
    throw StateError("velocity field has " + std::to_string(V.size()) +
                     " entries for a mesh with " +
                     std::to_string(m.n_edges()) + " edges");
  }
  if (static_cast<int>(D.size()) != m.n_cells()) {
    throw StateError("depth field has " + std::to_string(D.size()) +
                     " entries for a mesh with " +
                     std::to_string(m.n_cells()) + " cells");
  }
}

void check_params(const Mesh& m, const PhysParams& p) {
  if (!p.B.empty() && static_cast<int>(p.B.size()) != m.n_cells()) {
    throw StateError("bottom topography has " + std::to_string(p.B.size()) +
                     " entries for a mesh with " +
                     std::to_string(m.n_cells()) + " cells");
  }
}

// kite-weighted flank flux at one node of the edge (i,j): the two edges that
// continue the dual loop past (i,j), each carrying the cross-average depth
// of its far cell with the opposite cell of (i,j)
double node_flank_sum(const Mesh& m, const EdgeField& V, const CellField& D,
                      int node, int i, int j, int i_flank, int j_flank) {
  const Mesh::NodeLoop& loop = m.node_loops[node];
  int ei = edge_between(m, i, i_flank);
  int ej = edge_between(m, j, j_flank);
  double si = kite_fraction(m, node, i) * loop.area / (2.0 * m.cell_area[i]) *
              0.5 * (D[j] + D[i_flank]) * m.edges[ei].f *
              oriented(m, V, ei, i);
  double sj = kite_fraction(m, node, j) * loop.area / (2.0 * m.cell_area[j]) *
              0.5 * (D[i] + D[j_flank]) * m.edges[ej].f *
              oriented(m, V, ej, j);
  return si + sj;
}

}  // namespace

EdgeField advection_term(const Mesh& m, const EdgeField& V, const CellField& D,
                         double f_cor) {
  check_state(m, V, D);
  NodeField zeta = curl(m, V);
  EdgeField adv(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    int i = ed.cell_i;
    int j = ed.cell_j;
    double dbar = 0.5 * (D[i] + D[j]);
    if (!(dbar > kDepthFloor)) {
      throw StateError("average depth " + std::to_string(dbar) +
                       " km at edge " + std::to_string(e) +
                       " is below the floor");
    }
    double w_minus = zeta[ed.node_minus] + f_cor;
    double w_plus = zeta[ed.node_plus] + f_cor;
    double s_minus = node_flank_sum(m, V, D, ed.node_minus, i, j,
                                    ed.cell_i_minus, ed.cell_j_minus);
    double s_plus = node_flank_sum(m, V, D, ed.node_plus, i, j,
                                   ed.cell_i_plus, ed.cell_j_plus);
    adv[e] = (-w_minus * s_minus + w_plus * s_plus) / (dbar * ed.h);
  }
  return adv;
}

EdgeField kinetic_term(const Mesh& m, const EdgeField& V) {
  if (static_cast<int>(V.size()) != m.n_edges()) {
    throw StateError("velocity field has " + std::to_string(V.size()) +
                     " entries for a mesh with " +
                     std::to_string(m.n_edges()) + " edges");
  }
  // per-cell weighted square sum over its three edges
  CellField S(m.n_cells(), 0.0);
  for (int c = 0; c < m.n_cells(); ++c) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
      int e = m.cell_edges[c][k];
      s += m.edges[e].h * m.edges[e].f * V[e] * V[e];
    }
    S[c] = s / (2.0 * m.cell_area[c]);
  }
  EdgeField kin(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    kin[e] = (S[ed.cell_i] - S[ed.cell_j]) / (2.0 * ed.h);
  }
  return kin;
}

EdgeField pressure_term(const Mesh& m, const CellField& D,
                        const PhysParams& params) {
  if (static_cast<int>(D.size()) != m.n_cells()) {
    throw StateError("depth field has " + std::to_string(D.size()) +
                     " entries for a mesh with " +
                     std::to_string(m.n_cells()) + " cells");
  }
  check_params(m, params);
  EdgeField g(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    double pi = params.eps_prime_at(D[ed.cell_i], params.bottom(ed.cell_i));
    double pj = params.eps_prime_at(D[ed.cell_j], params.bottom(ed.cell_j));
    g[e] = (pj - pi) / ed.h;
  }
  return g;
}

EdgeField momentum_rhs(const Mesh& m, const EdgeField& V, const CellField& D,
                       const PhysParams& params) {
  check_params(m, params);
  EdgeField adv = advection_term(m, V, D, params.f);
  EdgeField kin = kinetic_term(m, V);
  EdgeField grad = pressure_term(m, D, params);
  EdgeField rhs(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    rhs[e] = -adv[e] + kin[e] - grad[e];
  }
  return rhs;
}

CellField continuity_rhs(const Mesh& m, const EdgeField& V,
                         const CellField& D) {
  check_state(m, V, D);
  CellField div = weighted_divergence(m, V, D);
  CellField rhs(m.n_cells());
  for (int c = 0; c < m.n_cells(); ++c) {
    rhs[c] = -div[c];
  }
  return rhs;
}

}  // namespace vrsw
