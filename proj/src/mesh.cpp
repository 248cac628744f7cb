#include "vrsw/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace vrsw {

namespace {

double wrap1(double x, double L) {
  double r = std::fmod(x, L);
  if (r < 0.0) r += L;
  return r;
}

// minimal-image component difference, in [-L/2, L/2]
double diff1(double d, double L) { return std::remainder(d, L); }

std::pair<int, int> vpair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

Vec2 Mesh::wrap(Vec2 p) const { return {wrap1(p.x, Lx), wrap1(p.y, Ly)}; }

Vec2 Mesh::delta(Vec2 a, Vec2 b) const {
  return {diff1(b.x - a.x, Lx), diff1(b.y - a.y, Ly)};
}

void compute_dual_geometry(Mesh& mesh) {
  const int nc = mesh.n_cells();
  const int nn = mesh.n_nodes();
  if (mesh.Lx <= 0.0 || mesh.Ly <= 0.0) throw MeshError("domain lengths must be positive");
  if (nc == 0 || nn == 0) throw MeshError("mesh has no cells or no vertices");

  for (auto& tri : mesh.cell_nodes)
    for (int v : tri)
      if (v < 0 || v >= nn) throw MeshError("cell references vertex " + std::to_string(v) + " out of range");

  // per-cell geometry in a local chart anchored at the first vertex
  mesh.cell_area.assign(nc, 0.0);
  mesh.cell_circumcenter.assign(nc, {});
  mesh.cell_barycenter.assign(nc, {});
  std::vector<std::array<Vec2, 3>> local(nc);
  for (int c = 0; c < nc; ++c) {
    auto& tri = mesh.cell_nodes[c];
    Vec2 p0 = mesh.node_xy[tri[0]];
    Vec2 p1 = p0 + mesh.delta(p0, mesh.node_xy[tri[1]]);
    Vec2 p2 = p0 + mesh.delta(p0, mesh.node_xy[tri[2]]);
    double two_area = cross(p1 - p0, p2 - p0);
    if (two_area < 0.0) {
      std::swap(tri[1], tri[2]);
      std::swap(p1, p2);
      two_area = -two_area;
    }
    if (!(two_area > 1e-12)) throw MeshError("degenerate cell " + std::to_string(c));
    local[c] = {p0, p1, p2};
    mesh.cell_area[c] = 0.5 * two_area;
    mesh.cell_circumcenter[c] = mesh.wrap(circumcenter(p0, p1, p2));
    mesh.cell_barycenter[c] = mesh.wrap((1.0 / 3.0) * (p0 + p1 + p2));
  }

  // undirected edges from vertex pairs; torus: exactly two incident cells each
  std::map<std::pair<int, int>, std::array<int, 2>> incident;
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < 3; ++k) {
      const int a = mesh.cell_nodes[c][k];
      const int b = mesh.cell_nodes[c][(k + 1) % 3];
      if (a == b) throw MeshError("cell " + std::to_string(c) + " repeats a vertex");
      auto [it, fresh] = incident.try_emplace(vpair(a, b), std::array<int, 2>{c, -1});
      if (!fresh) {
        if (it->second[1] != -1)
          throw MeshError("more than two cells share vertices " + std::to_string(a) + "," + std::to_string(b));
        it->second[1] = c;
      }
    }
  }

  mesh.edges.clear();
  mesh.edges.reserve(incident.size());
  std::map<std::pair<int, int>, int> edge_id;
  for (auto& [vp, cells] : incident) {
    if (cells[1] == -1)
      throw MeshError("boundary edge " + std::to_string(vp.first) + "," + std::to_string(vp.second) +
                      " on a mesh that must be doubly periodic");
    Mesh::Edge e;
    e.cell_i = std::min(cells[0], cells[1]);
    e.cell_j = std::max(cells[0], cells[1]);
    edge_id[vp] = static_cast<int>(mesh.edges.size());
    mesh.edges.push_back(e);
  }

  // cell -> edge adjacency aligned with the ccw vertex order
  mesh.cell_edges.assign(nc, {-1, -1, -1});
  mesh.cell_neighbors.assign(nc, {-1, -1, -1});
  mesh.cell_edge_sign.assign(nc, {0.0, 0.0, 0.0});
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < 3; ++k) {
      const int a = mesh.cell_nodes[c][k];
      const int b = mesh.cell_nodes[c][(k + 1) % 3];
      const int id = edge_id.at(vpair(a, b));
      const Mesh::Edge& e = mesh.edges[id];
      mesh.cell_edges[c][k] = id;
      mesh.cell_neighbors[c][k] = (e.cell_i == c) ? e.cell_j : e.cell_i;
      mesh.cell_edge_sign[c][k] = (e.cell_i == c) ? 1.0 : -1.0;
    }
  }

  // edge geometry and endpoint labels
  for (auto& [vp, id] : edge_id) {
    Mesh::Edge& e = mesh.edges[id];
    const Vec2 pa = mesh.node_xy[vp.first];
    const Vec2 d = mesh.delta(pa, mesh.node_xy[vp.second]);
    e.f = norm(d);
    if (!(e.f > 0.0)) throw MeshError("zero-length edge " + std::to_string(id));
    Vec2 n = (1.0 / e.f) * perp(d);
    const Vec2 mid_raw = pa + 0.5 * d;
    const Vec2 mid = mesh.wrap(mid_raw);
    if (dot(n, mesh.delta(mid, mesh.cell_barycenter[e.cell_j])) < 0.0) n = -1.0 * n;
    e.n = n;
    e.mid = mid;
    // node "-" sits left of n: the direction node+ -> node- is k x n
    if (dot(perp(n), d) > 0.0) {
      e.node_plus = vp.first;
      e.node_minus = vp.second;
    } else {
      e.node_plus = vp.second;
      e.node_minus = vp.first;
    }
    e.h = dot(n, mesh.delta(mesh.cell_circumcenter[e.cell_i], mesh.cell_circumcenter[e.cell_j]));
  }

  // flank cells: the third cell of the fan at each endpoint, adjacent to i resp. j
  auto flank = [&](int cell, int edge, int node) {
    for (int k = 0; k < 3; ++k) {
      if (mesh.cell_edges[cell][k] == edge) continue;
      const int a = mesh.cell_nodes[cell][k];
      const int b = mesh.cell_nodes[cell][(k + 1) % 3];
      if (a == node || b == node) return mesh.cell_neighbors[cell][k];
    }
    throw MeshError("edge " + std::to_string(edge) + " has no flank at vertex " + std::to_string(node));
  };
  for (int id = 0; id < mesh.n_edges(); ++id) {
    Mesh::Edge& e = mesh.edges[id];
    e.cell_i_minus = flank(e.cell_i, id, e.node_minus);
    e.cell_i_plus = flank(e.cell_i, id, e.node_plus);
    e.cell_j_minus = flank(e.cell_j, id, e.node_minus);
    e.cell_j_plus = flank(e.cell_j, id, e.node_plus);
  }

  // ccw dual loop per node: from cell (.., e, a, b ..) the ccw-next fan cell
  // lies across the edge {e, b} where b precedes e in the ccw vertex list
  std::vector<int> seed(nn, -1);
  for (int c = 0; c < nc; ++c)
    for (int v : mesh.cell_nodes[c]) seed[v] = c;
  mesh.node_loops.assign(nn, {});
  for (int v = 0; v < nn; ++v) {
    if (seed[v] < 0) throw MeshError("vertex " + std::to_string(v) + " belongs to no cell");
    Mesh::NodeLoop& loop = mesh.node_loops[v];
    int c = seed[v];
    do {
      loop.cells.push_back(c);
      const auto& tri = mesh.cell_nodes[c];
      int pos = 0;
      while (tri[pos] != v) ++pos;
      const int prev = tri[(pos + 2) % 3];
      int k = 0;
      while (!((tri[k] == v && tri[(k + 1) % 3] == prev) || (tri[k] == prev && tri[(k + 1) % 3] == v))) ++k;
      loop.edges.push_back(mesh.cell_edges[c][k]);
      loop.sign.push_back(mesh.cell_edge_sign[c][k]);
      c = mesh.cell_neighbors[c][k];
      if (loop.cells.size() > mesh.cell_nodes.size())
        throw MeshError("dual loop around vertex " + std::to_string(v) + " does not close");
    } while (c != seed[v]);

    // chart centered on the node keeps shoelace cancellation at edge scale
    const Vec2 p = mesh.node_xy[v];
    std::vector<Vec2> hex;
    hex.reserve(loop.cells.size());
    for (int cc : loop.cells) hex.push_back(mesh.delta(p, mesh.cell_circumcenter[cc]));
    loop.area = polygon_area(hex);

    loop.kite.resize(loop.cells.size());
    for (std::size_t t = 0; t < loop.cells.size(); ++t) {
      const auto& tri = mesh.cell_nodes[loop.cells[t]];
      const Vec2 r0 = mesh.delta(p, mesh.node_xy[tri[0]]);
      const Vec2 r1 = mesh.delta(p, mesh.node_xy[tri[1]]);
      const Vec2 r2 = mesh.delta(p, mesh.node_xy[tri[2]]);
      loop.kite[t] = clipped_area(hex, r0, r1, r2) / loop.area;
    }
  }
}

Mesh build_regular_mesh(int n1d, double Lx, double Ly) {
  if (n1d < 4 || n1d % 2 != 0)
    throw MeshError("n1d must be an even integer >= 4, got " + std::to_string(n1d));
  if (!(Lx > 0.0) || !(Ly > 0.0)) throw MeshError("domain lengths must be positive");
  const double aspect = Ly / (0.5 * std::sqrt(3.0) * Lx);
  if (std::abs(aspect - 1.0) > 1e-4)
    throw MeshError("aspect-ratio mismatch: Ly/Lx = " + std::to_string(Ly / Lx) +
                    " is not an equilateral tiling aspect sqrt(3)/2 within 1e-4 relative");

  Mesh mesh;
  mesh.Lx = Lx;
  mesh.Ly = Ly;
  const double dx = Lx / n1d;
  const double dy = Ly / n1d;
  mesh.node_xy.resize(static_cast<std::size_t>(n1d) * n1d);
  for (int j = 0; j < n1d; ++j)
    for (int i = 0; i < n1d; ++i)
      mesh.node_xy[static_cast<std::size_t>(j) * n1d + i] = {(i + 0.5 * (j % 2)) * dx, j * dy};

  auto vid = [n1d](int i, int j) {
    i = ((i % n1d) + n1d) % n1d;
    j = ((j % n1d) + n1d) % n1d;
    return j * n1d + i;
  };
  mesh.cell_nodes.reserve(2 * static_cast<std::size_t>(n1d) * n1d);
  for (int j = 0; j < n1d; ++j) {
    for (int i = 0; i < n1d; ++i) {
      if (j % 2 == 0) {
        mesh.cell_nodes.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
        mesh.cell_nodes.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
      } else {
        mesh.cell_nodes.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
        mesh.cell_nodes.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
      }
    }
  }

  compute_dual_geometry(mesh);
  if (auto report = validate(mesh); !report.ok())
    throw MeshError("regular mesh failed validation: " + report.violations.front());
  return mesh;
}

Mesh build_refined_mesh(const Mesh& base, const MonitorParams& monitor, int iterations) {
  Mesh mesh = base;
  if (monitor.strength == 0.0 || iterations <= 0) return mesh;
  if (!(monitor.width > 0.0)) throw MeshError("monitor width must be positive");

  // primal vertex adjacency
  std::vector<std::vector<int>> nbr(mesh.n_nodes());
  for (const auto& e : mesh.edges) {
    nbr[e.node_minus].push_back(e.node_plus);
    nbr[e.node_plus].push_back(e.node_minus);
  }

  auto density = [&](Vec2 p) {
    const Vec2 d = mesh.delta(monitor.center, p);
    return 1.0 + monitor.strength * std::exp(-0.5 * dot(d, d) / (monitor.width * monitor.width));
  };

  std::vector<Vec2> pos = mesh.node_xy;
  std::vector<Vec2> next(pos.size());
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < pos.size(); ++v) {
      Vec2 acc{0.0, 0.0};
      double wsum = 0.0;
      for (int u : nbr[v]) {
        const Vec2 d = mesh.delta(pos[v], pos[u]);
        const double w = density(mesh.wrap(pos[v] + 0.5 * d));
        acc = acc + w * d;
        wsum += w;
      }
      next[v] = mesh.wrap(pos[v] + (monitor.step / wsum) * acc);
    }
    pos.swap(next);
  }
  mesh.node_xy = pos;

  // recovery: reopen dual edges squeezed below the floor by relaxing only the
  // vertices of the incident cells with uniform weights; leaves the rest of
  // the graded mesh untouched
  if (monitor.h_floor > 0.0) {
    std::vector<double> mobility(mesh.n_nodes());
    for (int sweep = 0; sweep < monitor.recover_sweeps; ++sweep) {
      compute_dual_geometry(mesh);
      std::fill(mobility.begin(), mobility.end(), 0.0);
      bool any = false;
      for (const auto& e : mesh.edges) {
        if (e.h >= monitor.h_floor) continue;
        any = true;
        const double deficit = 1.0 - std::max(e.h, 0.0) / monitor.h_floor;
        for (int c : {e.cell_i, e.cell_j})
          for (int v : mesh.cell_nodes[c]) mobility[v] = std::max(mobility[v], deficit);
      }
      if (!any) break;
      for (int v = 0; v < mesh.n_nodes(); ++v) {
        if (mobility[v] == 0.0) {
          next[v] = mesh.node_xy[v];
          continue;
        }
        Vec2 acc{0.0, 0.0};
        for (int u : nbr[v]) acc = acc + mesh.delta(mesh.node_xy[v], mesh.node_xy[u]);
        next[v] = mesh.wrap(mesh.node_xy[v] + (0.2 * mobility[v] / nbr[v].size()) * acc);
      }
      mesh.node_xy = next;
    }
  }

  compute_dual_geometry(mesh);
  for (int id = 0; id < mesh.n_edges(); ++id) {
    const auto& e = mesh.edges[id];
    if (!(e.h > 0.0))
      throw MeshError("refinement closed dual edge " + std::to_string(id) + " between cells " +
                      std::to_string(e.cell_i) + " and " + std::to_string(e.cell_j) +
                      " (h = " + std::to_string(e.h) + " km); reduce monitor strength or step");
  }
  return mesh;
}

ValidationReport validate(const Mesh& mesh) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  if (mesh.Lx <= 0.0 || mesh.Ly <= 0.0) {
    fail("nonpositive domain lengths");
    return rep;
  }
  const int nc = mesh.n_cells();
  const int nn = mesh.n_nodes();
  if (nc == 0 || nn == 0) {
    fail("mesh has no cells or no vertices");
    return rep;
  }

  // topology from the cell list alone
  bool topology_ok = true;
  std::map<std::pair<int, int>, int> count;
  for (int c = 0; c < nc; ++c) {
    const auto& tri = mesh.cell_nodes[c];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      fail("cell " + std::to_string(c) + " repeats a vertex");
      topology_ok = false;
    }
    for (int v : tri)
      if (v < 0 || v >= nn) {
        fail("cell " + std::to_string(c) + " references vertex out of range");
        return rep;
      }
    for (int k = 0; k < 3; ++k) ++count[vpair(tri[k], tri[(k + 1) % 3])];
  }
  for (const auto& [vp, n] : count) {
    if (n != 2) {
      fail("vertex pair " + std::to_string(vp.first) + "," + std::to_string(vp.second) +
           " belongs to " + std::to_string(n) + " cells, expected 2");
      topology_ok = false;
    }
  }
  const int ne = static_cast<int>(count.size());
  if (topology_ok && nn - ne + nc != 0)
    fail("Euler characteristic V-E+F = " + std::to_string(nn - ne + nc) + ", expected 0 on a torus");
  if (!topology_ok) return rep;

  if (mesh.n_edges() != ne || static_cast<int>(mesh.node_loops.size()) != nn ||
      static_cast<int>(mesh.cell_area.size()) != nc) {
    fail("dual geometry missing or inconsistent with the cell list");
    return rep;
  }

  const double area_domain = mesh.Lx * mesh.Ly;
  double area_sum = 0.0;
  for (int c = 0; c < nc; ++c) {
    if (!(mesh.cell_area[c] > 0.0)) fail("cell " + std::to_string(c) + " has nonpositive area");
    area_sum += mesh.cell_area[c];
  }
  if (std::abs(area_sum - area_domain) > 1e-12 * area_domain)
    fail("cell areas sum to " + std::to_string(area_sum) + ", expected Lx*Ly");

  for (int id = 0; id < ne; ++id) {
    const auto& e = mesh.edges[id];
    if (!(e.h > 0.0))
      fail("edge " + std::to_string(id) + " between cells " + std::to_string(e.cell_i) + " and " +
           std::to_string(e.cell_j) + " has nonpositive dual length h = " + std::to_string(e.h));
    if (!(e.f > 0.0)) fail("edge " + std::to_string(id) + " has nonpositive primal length");
  }

  double dual_sum = 0.0;
  for (int v = 0; v < nn; ++v) {
    const auto& loop = mesh.node_loops[v];
    if (loop.area <= 0.0) fail("dual cell around vertex " + std::to_string(v) + " has nonpositive area");
    dual_sum += loop.area;
    double ksum = 0.0;
    for (double k : loop.kite) {
      ksum += k;
      if (!(k > 0.0 && k < 1.0)) {
        fail("vertex " + std::to_string(v) + " has a kite fraction outside (0,1)");
        break;
      }
    }
    if (std::abs(ksum - 1.0) > 1e-14)
      fail("kite fractions around vertex " + std::to_string(v) + " sum to " + std::to_string(ksum));
  }
  if (std::abs(dual_sum - area_domain) > 1e-12 * area_domain)
    fail("dual areas sum to " + std::to_string(dual_sum) + ", expected Lx*Ly");

  return rep;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file " + path);
  Mesh mesh;
  enum class Section { None, Nodes, Cells } section = Section::None;
  std::string line;
  int lineno = 0;
  bool have_domain = false;
  std::vector<std::pair<int, Vec2>> nodes;
  std::vector<std::pair<int, std::array<int, 3>>> cells;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    auto bad = [&](const std::string& why) {
      return MeshError(path + ":" + std::to_string(lineno) + ": " + why);
    };
    if (tok == "PERIODIC") {
      if (!(ls >> mesh.Lx >> mesh.Ly)) throw bad("PERIODIC needs Lx Ly");
      have_domain = true;
    } else if (tok == "NODES") {
      section = Section::Nodes;
    } else if (tok == "CELLS") {
      section = Section::Cells;
    } else if (section == Section::Nodes) {
      int id;
      Vec2 p;
      std::istringstream row(line);
      if (!(row >> id >> p.x >> p.y)) throw bad("expected 'id x_km y_km'");
      nodes.emplace_back(id, p);
    } else if (section == Section::Cells) {
      int id;
      std::array<int, 3> tri;
      std::istringstream row(line);
      if (!(row >> id >> tri[0] >> tri[1] >> tri[2])) throw bad("expected 'id v1 v2 v3'");
      cells.emplace_back(id, tri);
    } else {
      throw bad("unexpected token '" + tok + "' outside NODES/CELLS");
    }
  }
  if (!have_domain) throw MeshError(path + ": missing PERIODIC header");
  if (nodes.empty() || cells.empty()) throw MeshError(path + ": missing NODES or CELLS section");

  mesh.node_xy.assign(nodes.size(), {});
  std::vector<bool> seen(nodes.size(), false);
  for (const auto& [id, p] : nodes) {
    if (id < 0 || id >= static_cast<int>(nodes.size()) || seen[id])
      throw MeshError(path + ": node ids must be 0.." + std::to_string(nodes.size() - 1) + " without repeats");
    seen[id] = true;
    mesh.node_xy[id] = mesh.wrap(p);
  }
  mesh.cell_nodes.assign(cells.size(), {});
  std::vector<bool> cseen(cells.size(), false);
  for (const auto& [id, tri] : cells) {
    if (id < 0 || id >= static_cast<int>(cells.size()) || cseen[id])
      throw MeshError(path + ": cell ids must be 0.." + std::to_string(cells.size() - 1) + " without repeats");
    cseen[id] = true;
    mesh.cell_nodes[id] = tri;
  }
  compute_dual_geometry(mesh);
  return mesh;
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write mesh file " + path);
  out.precision(17);
  out << "PERIODIC " << mesh.Lx << " " << mesh.Ly << "\n";
  out << "NODES\n";
  for (int v = 0; v < mesh.n_nodes(); ++v)
    out << v << " " << mesh.node_xy[v].x << " " << mesh.node_xy[v].y << "\n";
  out << "CELLS\n";
  for (int c = 0; c < mesh.n_cells(); ++c)
    out << c << " " << mesh.cell_nodes[c][0] << " " << mesh.cell_nodes[c][1] << " "
        << mesh.cell_nodes[c][2] << "\n";
  if (!out) throw MeshError("failed while writing " + path);
}

}  // namespace vrsw
