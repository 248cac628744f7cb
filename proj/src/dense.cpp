#include "vrsw/dense.hpp"

#include <string>

namespace vrsw {

namespace {

void check_size(const Mesh& m, const char* what) {
  if (m.n_cells() > kDenseMaxCells) {
    throw MeshError(std::string(what) + ": mesh has " +
                    std::to_string(m.n_cells()) + " cells, dense limit is " +
                    std::to_string(kDenseMaxCells));
  }
}

bool are_neighbors(const Mesh& m, int c, int d) {
  for (int k = 0; k < 3; ++k) {
    if (m.cell_neighbors[c][k] == d) return true;
  }
  return false;
}

double loop_kite_share(const Mesh& m, int node, int cell) {
  const Mesh::NodeLoop& loop = m.node_loops[node];
  for (size_t t = 0; t < loop.cells.size(); ++t) {
    if (loop.cells[t] == cell) return loop.kite[t];
  }
  throw MeshError("cell " + std::to_string(cell) + " not in the fan of node " +
                  std::to_string(node));
}

}  // namespace

Eigen::MatrixXd dense_A(const Mesh& m, const EdgeField& V) {
  check_size(m, "dense_A");
  const int n = m.n_cells();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    A(ed.cell_i, ed.cell_j) = -0.5 / m.cell_area[ed.cell_i] * ed.f * V[e];
    A(ed.cell_j, ed.cell_i) = 0.5 / m.cell_area[ed.cell_j] * ed.f * V[e];
  }
  for (int c = 0; c < n; ++c) {
    A(c, c) = 0.0;
    A(c, c) = -A.row(c).sum();
  }
  return A;
}

Eigen::MatrixXd project_dual(const Eigen::MatrixXd& L) {
  return L - L.diagonal() * Eigen::RowVectorXd::Ones(L.cols());
}

Eigen::MatrixXd project_one_form(const Eigen::MatrixXd& L) {
  Eigen::MatrixXd Q = project_dual(L);
  return 0.5 * (Q - Q.transpose());
}

Eigen::MatrixXd ad_star(const Mesh& m, const Eigen::MatrixXd& A,
                        const Eigen::MatrixXd& L) {
  const int n = static_cast<int>(L.rows());
  Eigen::VectorXd omega(n);
  for (int c = 0; c < n; ++c) omega(c) = m.cell_area[c];
  Eigen::MatrixXd OL = omega.asDiagonal() * L;
  Eigen::MatrixXd C = A.transpose() * OL - OL * A.transpose();
  return project_dual(omega.asDiagonal().inverse() * C);
}

Eigen::MatrixXd complete_circulations(const Mesh& m, const EdgeField& Wflat) {
  check_size(m, "complete_circulations");
  const int n = m.n_cells();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    B(ed.cell_i, ed.cell_j) = Wflat[e];
    B(ed.cell_j, ed.cell_i) = -Wflat[e];
  }
  for (int v = 0; v < m.n_nodes(); ++v) {
    const Mesh::NodeLoop& loop = m.node_loops[v];
    const int deg = static_cast<int>(loop.cells.size());
    double w = 0.0;
    for (int t = 0; t < deg; ++t) w += loop.sign[t] * Wflat[loop.edges[t]];
    for (int t = 0; t < deg; ++t) {
      int i = loop.cells[t];
      int j = loop.cells[(t + 1) % deg];
      int k = loop.cells[(t + 2) % deg];
      if (are_neighbors(m, i, k)) continue;  // closure only defines new pairs
      double Bki = loop.kite[(t + 1) % deg] * w - B(i, j) - B(j, k);
      B(k, i) = Bki;
      B(i, k) = -Bki;
    }
  }
  return B;
}

EdgeField lie_derivative_oracle(const Mesh& m, const EdgeField& V,
                                const CellField& D, const EdgeField& Wflat) {
  check_size(m, "lie_derivative_oracle");
  const int n = m.n_cells();
  Eigen::MatrixXd A = dense_A(m, V);
  Eigen::MatrixXd B = complete_circulations(m, Wflat);
  Eigen::VectorXd scale(n);  // Omega_ii D_i row weights
  for (int c = 0; c < n; ++c) scale(c) = m.cell_area[c] * D[c];
  Eigen::MatrixXd M = scale.asDiagonal() * B;
  Eigen::MatrixXd C = A.transpose() * M - M * A.transpose();
  Eigen::VectorXd inv_omega(n);
  for (int c = 0; c < n; ++c) inv_omega(c) = 1.0 / m.cell_area[c];
  Eigen::MatrixXd P = project_one_form(inv_omega.asDiagonal() * C);
  EdgeField out(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    out[e] = P(m.edges[e].cell_i, m.edges[e].cell_j);
  }
  return out;
}

CellField density_action_oracle(const Mesh& m, const EdgeField& V,
                                const CellField& D) {
  check_size(m, "density_action_oracle");
  const int n = m.n_cells();
  Eigen::MatrixXd A = dense_A(m, V);
  Eigen::VectorXd w(n);
  for (int c = 0; c < n; ++c) w(c) = m.cell_area[c] * D[c];
  Eigen::VectorXd t = A.transpose() * w;
  CellField out(n);
  for (int c = 0; c < n; ++c) out[c] = t(c) / m.cell_area[c];
  return out;
}

EdgeField advection_kinetic_oracle(const Mesh& m, const EdgeField& V,
                                   const CellField& D, double f_cor) {
  check_size(m, "advection_kinetic_oracle");
  const int n = m.n_cells();
  Eigen::MatrixXd A = dense_A(m, V);
  Eigen::MatrixXd Af = Eigen::MatrixXd::Zero(n, n);  // circulations -h V
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    Af(ed.cell_i, ed.cell_j) = -ed.h * V[e];
    Af(ed.cell_j, ed.cell_i) = ed.h * V[e];
  }

  // absolute vorticity weight per node: |zeta| (curl V + f)
  std::vector<double> wabs(m.n_nodes());
  for (int v = 0; v < m.n_nodes(); ++v) {
    const Mesh::NodeLoop& loop = m.node_loops[v];
    double circ = 0.0;
    for (size_t t = 0; t < loop.edges.size(); ++t) {
      circ += loop.sign[t] * m.edges[loop.edges[t]].h * V[loop.edges[t]];
    }
    wabs[v] = circ + loop.area * f_cor;
  }

  EdgeField out(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Mesh::Edge& ed = m.edges[e];
    const int i = ed.cell_i, j = ed.cell_j;
    const double dbar = 0.5 * (D[i] + D[j]);

    auto node_line = [&](int node, int fi, int fj) {
      double Ki = loop_kite_share(m, node, i);
      double Kj = loop_kite_share(m, node, j);
      return wabs[node] * (Ki * 0.5 * (D[j] + D[fi]) * A(i, fi) +
                           Kj * 0.5 * (D[i] + D[fj]) * A(j, fj));
    };
    double lines = node_line(ed.node_plus, ed.cell_i_plus, ed.cell_j_plus) -
                   node_line(ed.node_minus, ed.cell_i_minus, ed.cell_j_minus);
    lines += dbar * 0.5 *
             (Af(i, ed.cell_i_minus) * A(i, ed.cell_i_minus) +
              Af(i, ed.cell_i_plus) * A(i, ed.cell_i_plus) +
              Af(i, j) * A(i, j) - Af(j, i) * A(j, i) -
              Af(j, ed.cell_j_minus) * A(j, ed.cell_j_minus) -
              Af(j, ed.cell_j_plus) * A(j, ed.cell_j_plus));
    out[e] = -lines / (dbar * ed.h);
  }
  return out;
}

}  // namespace vrsw
