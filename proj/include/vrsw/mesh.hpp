#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "vrsw/geometry.hpp"

namespace vrsw {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * Doubly periodic triangle mesh on [0,Lx)x[0,Ly) with its circumcentric dual.
 *
 * Orientation conventions used throughout:
 *  - cell vertex lists are counterclockwise,
 *  - the edge normal n points from the owner cell i to the neighbor cell j,
 *  - the edge endpoint left of n is node "-", the endpoint right of n is
 *    node "+", so the unit vector from node "+" to node "-" equals k x n,
 *  - dual loops around a node list the incident cells counterclockwise;
 *    loop sign +1 means the crossing goes owner -> neighbor.
 *
 * All lengths are km, areas km^2.
 */
struct Mesh {
  double Lx = 0.0;
  double Ly = 0.0;

  // primal vertices (the "nodes" carrying dual cells)
  std::vector<Vec2> node_xy;

  // triangles
  std::vector<std::array<int, 3>> cell_nodes;      // ccw
  std::vector<std::array<int, 3>> cell_edges;      // edge k joins vertices k and k+1 of cell_nodes
  std::vector<std::array<int, 3>> cell_neighbors;  // cell across cell_edges[k]
  std::vector<std::array<double, 3>> cell_edge_sign;  // +1 where this cell owns cell_edges[k]
  std::vector<Vec2> cell_circumcenter;  // wrapped into the domain
  std::vector<Vec2> cell_barycenter;    // wrapped
  std::vector<double> cell_area;        // Omega_ii > 0

  struct Edge {
    int cell_i = -1;  // owner
    int cell_j = -1;
    int node_minus = -1;
    int node_plus = -1;
    double f = 0.0;  // primal length
    double h = 0.0;  // dual length between circumcenters, > 0 on valid meshes
    Vec2 n;          // unit normal i -> j
    Vec2 mid;        // primal midpoint, wrapped
    // third cell at the +/- node adjacent to cell_i resp. cell_j
    int cell_i_minus = -1;
    int cell_i_plus = -1;
    int cell_j_minus = -1;
    int cell_j_plus = -1;
  };
  std::vector<Edge> edges;

  struct NodeLoop {
    std::vector<int> cells;     // ccw fan around the node
    std::vector<int> edges;     // edges[t] is crossed between cells[t] and cells[t+1 mod n]
    std::vector<double> sign;   // +1 when the crossing runs owner -> neighbor
    std::vector<double> kite;   // K^e_k for cells[k], sums to 1
    double area = 0.0;          // |zeta_e|
  };
  std::vector<NodeLoop> node_loops;

  int n_cells() const { return static_cast<int>(cell_nodes.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_nodes() const { return static_cast<int>(node_xy.size()); }

  Vec2 wrap(Vec2 p) const;
  // minimal-image displacement from a to b
  Vec2 delta(Vec2 a, Vec2 b) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Uniform tiling by 2*n1d^2 congruent triangles; n1d must be even and >= 4 so
// the periodic connectivity is simple and row parity closes up. Ly must match
// the equilateral aspect sqrt(3)/2*Lx to 1e-4 relative; rows are scaled in y
// to fill Ly exactly.
Mesh build_regular_mesh(int n1d, double Lx, double Ly);

struct MonitorParams {
  Vec2 center;            // km
  double width = 0.0;     // Gaussian length scale, km
  double strength = 0.0;  // 0 keeps the mesh unchanged
  double step = 1.0;      // relaxation factor, in (0, 1]
  // optional recovery phase: uniform-weight relaxation applied only around
  // edges whose dual length falls below this floor (0 disables)
  double h_floor = 0.0;   // km
  int recover_sweeps = 400;
};

// r-adaptive refinement: weighted-Laplacian relaxation of node positions
// toward a Gaussian monitor density. Topology is untouched; throws MeshError
// naming the first edge whose dual length would close or flip.
Mesh build_refined_mesh(const Mesh& base, const MonitorParams& monitor, int iterations);

// Derive every dual/combinatorial quantity from Lx, Ly, node_xy, cell_nodes.
// Cell vertex order is normalized to ccw in place.
void compute_dual_geometry(Mesh& mesh);

// Non-throwing diagnosis of all Mesh invariants (topology first, then
// geometry); each violation names the offending entity.
ValidationReport validate(const Mesh& mesh);

// Text format: "PERIODIC Lx Ly" header, then NODES with "id x_km y_km"
// and CELLS with "id v1 v2 v3". Loading recomputes all dual geometry.
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

}  // namespace vrsw
