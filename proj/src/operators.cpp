#include "vrsw/operators.hpp"

#include <cmath>
#include <cstdlib>

namespace vrsw {

int edge_between(const Mesh& m, int c, int d) {
  for (int k = 0; k < 3; ++k) {
    if (m.cell_neighbors[c][k] == d) return m.cell_edges[c][k];
  }
  throw MeshError("cells " + std::to_string(c) + " and " + std::to_string(d) +
                  " share no edge");
}

double VelocityMatrix::off_from(const Mesh& m, int edge, int cell) const {
  const Mesh::Edge& e = m.edges[edge];
  if (e.cell_i == cell) return off[edge];
  // Omega_jj A_ji = -Omega_ii A_ij
  return -off[edge] * m.cell_area[e.cell_i] / m.cell_area[e.cell_j];
}

VelocityMatrix assemble_A(const Mesh& m, const EdgeField& V) {
  VelocityMatrix A;
  A.off.resize(m.n_edges());
  A.diag.assign(m.n_cells(), 0.0);
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    A.off[e] = -0.5 / m.cell_area[ed.cell_i] * ed.f * V[e];
  }
  for (int c = 0; c < m.n_cells(); ++c) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += A.off_from(m, m.cell_edges[c][k], c);
    A.diag[c] = -s;
  }
  return A;
}

namespace {

// 3-point Gauss-Legendre weights/abscissae on [0,1]
constexpr double kGaussT[3] = {0.5 - 0.5 * 0.774596669241483377,
                               0.5,
                               0.5 + 0.5 * 0.774596669241483377};
constexpr double kGaussW[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// degree-2 interior triangle rule: barycentric (2/3,1/6,1/6) permutations
constexpr double kTriB[3][3] = {{4.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0},
                                {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0},
                                {1.0 / 6.0, 1.0 / 6.0, 4.0 / 6.0}};

// integral over cell c of a scalar sampled at wrapped points
double cell_integral(const Mesh& m, int c,
                     const std::function<double(Vec2)>& fn) {
  Vec2 p0 = m.node_xy[m.cell_nodes[c][0]];
  Vec2 d1 = m.delta(p0, m.node_xy[m.cell_nodes[c][1]]);
  Vec2 d2 = m.delta(p0, m.node_xy[m.cell_nodes[c][2]]);
  double acc = 0.0;
  for (int q = 0; q < 3; ++q) {
    Vec2 x = p0 + kTriB[q][1] * d1 + kTriB[q][2] * d2;
    acc += fn(m.wrap(x));
  }
  return acc * m.cell_area[c] / 3.0;
}

}  // namespace

SampledA sample_A_from_field(const Mesh& m, const VelocityField& u,
                             const ScalarField* test) {
  SampledA out;
  out.A.off.resize(m.n_edges());
  out.A.diag.resize(m.n_cells());

  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    Vec2 a = m.node_xy[ed.node_plus];
    Vec2 d = m.delta(a, m.node_xy[ed.node_minus]);
    double flux = 0.0;  // int_edge u . n dS
    for (int q = 0; q < 3; ++q) {
      Vec2 x = m.wrap(a + kGaussT[q] * d);
      flux += kGaussW[q] * dot(u.u(x), ed.n);
    }
    flux *= ed.f;
    out.A.off[e] = -0.5 / m.cell_area[ed.cell_i] * flux;
  }
  for (int c = 0; c < m.n_cells(); ++c) {
    out.A.diag[c] = 0.5 / m.cell_area[c] * cell_integral(m, c, u.div);
  }

  for (int c = 0; c < m.n_cells(); ++c) {
    double s = out.A.diag[c];
    for (int k = 0; k < 3; ++k) s += out.A.off_from(m, m.cell_edges[c][k], c);
    out.row_residual = std::max(out.row_residual, std::abs(s));
  }

  if (test) {
    CellField F(m.n_cells());
    for (int c = 0; c < m.n_cells(); ++c) {
      F[c] = cell_integral(m, c, test->value) / m.cell_area[c];
    }
    for (int c = 0; c < m.n_cells(); ++c) {
      double af = out.A.diag[c] * F[c];
      for (int k = 0; k < 3; ++k) {
        af += out.A.off_from(m, m.cell_edges[c][k], c) * F[m.cell_neighbors[c][k]];
      }
      Vec2 xb = m.cell_barycenter[c];
      double r = af + dot(test->grad(xb), u.u(xb));
      out.consistency_residual = std::max(out.consistency_residual, std::abs(r));
    }
  }
  return out;
}

EdgeField flat_edge(const Mesh& m, const EdgeField& V) {
  EdgeField W(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) W[e] = -m.edges[e].h * V[e];
  return W;
}

CellField divergence(const Mesh& m, const EdgeField& V) {
  CellField d(m.n_cells(), 0.0);
  for (int c = 0; c < m.n_cells(); ++c) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
      int e = m.cell_edges[c][k];
      s += m.edges[e].f * oriented(m, V, e, c);
    }
    d[c] = s / m.cell_area[c];
  }
  return d;
}

CellField weighted_divergence(const Mesh& m, const EdgeField& V,
                              const CellField& D) {
  CellField d(m.n_cells(), 0.0);
  for (int c = 0; c < m.n_cells(); ++c) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
      int e = m.cell_edges[c][k];
      double dbar = 0.5 * (D[c] + D[m.cell_neighbors[c][k]]);
      s += m.edges[e].f * oriented(m, V, e, c) * dbar;
    }
    d[c] = s / m.cell_area[c];
  }
  return d;
}

NodeField curl(const Mesh& m, const EdgeField& V) {
  NodeField w(m.n_nodes(), 0.0);
  for (int v = 0; v < m.n_nodes(); ++v) {
    const Mesh::NodeLoop& loop = m.node_loops[v];
    double s = 0.0;
    for (size_t t = 0; t < loop.edges.size(); ++t) {
      int e = loop.edges[t];
      s += loop.sign[t] * m.edges[e].h * V[e];
    }
    w[v] = s / loop.area;
  }
  return w;
}

EdgeField grad_normal(const Mesh& m, const CellField& phi) {
  EdgeField g(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    g[e] = (phi[ed.cell_j] - phi[ed.cell_i]) / ed.h;
  }
  return g;
}

EdgeField grad_tangential(const Mesh& m, const NodeField& psi) {
  EdgeField g(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    g[e] = (psi[ed.node_minus] - psi[ed.node_plus]) / ed.f;
  }
  return g;
}

namespace {

// plain circulation sum around each node's dual loop
NodeField loop_sums(const Mesh& m, const EdgeField& W) {
  NodeField s(m.n_nodes(), 0.0);
  for (int v = 0; v < m.n_nodes(); ++v) {
    const Mesh::NodeLoop& loop = m.node_loops[v];
    for (size_t t = 0; t < loop.edges.size(); ++t) {
      s[v] += loop.sign[t] * W[loop.edges[t]];
    }
  }
  return s;
}

}  // namespace

double kite_fraction(const Mesh& m, int node, int cell) {
  const Mesh::NodeLoop& loop = m.node_loops[node];
  for (size_t t = 0; t < loop.cells.size(); ++t) {
    if (loop.cells[t] == cell) return loop.kite[t];
  }
  throw MeshError("cell " + std::to_string(cell) + " not in the fan of node " +
                  std::to_string(node));
}

EdgeField lie_derivative_stencil(const Mesh& m, const EdgeField& V,
                                 const CellField& D, const EdgeField& Wflat) {
  VelocityMatrix A = assemble_A(m, V);

  NodeField omega = loop_sums(m, Wflat);

  // (D.A)_i = A_ii D_i - sum_k A_ik D_k
  CellField DA(m.n_cells());
  for (int c = 0; c < m.n_cells(); ++c) {
    double s = A.diag[c] * D[c];
    for (int k = 0; k < 3; ++k) {
      s -= A.off_from(m, m.cell_edges[c][k], c) * D[m.cell_neighbors[c][k]];
    }
    DA[c] = s;
  }

  // sum_k A_ik W_ik over each cell's edges
  CellField AW(m.n_cells(), 0.0);
  for (int c = 0; c < m.n_cells(); ++c) {
    for (int k = 0; k < 3; ++k) {
      int e = m.cell_edges[c][k];
      AW[c] += A.off_from(m, e, c) * oriented(m, Wflat, e, c);
    }
  }

  EdgeField L(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    int i = ed.cell_i, j = ed.cell_j;

    auto node_term = [&](int node, int fi, int fj) {
      // fi: flank of i at this node, fj: flank of j
      double Ki = kite_fraction(m, node, i);
      double Kj = kite_fraction(m, node, j);
      double A_ifi = A.off_from(m, edge_between(m, i, fi), i);
      double A_jfj = A.off_from(m, edge_between(m, j, fj), j);
      double Dbar_jfi = 0.5 * (D[j] + D[fi]);
      double Dbar_ifj = 0.5 * (D[i] + D[fj]);
      return omega[node] * (Ki * Dbar_jfi * A_ifi + Kj * Dbar_ifj * A_jfj);
    };

    double val = node_term(ed.node_minus, ed.cell_i_minus, ed.cell_j_minus) -
                 node_term(ed.node_plus, ed.cell_i_plus, ed.cell_j_plus);
    val += 0.5 * (D[i] + D[j]) * (AW[i] - AW[j]);
    val += 0.5 * (DA[i] + DA[j]) * Wflat[e];
    L[e] = val;
  }
  return L;
}

}  // namespace vrsw
