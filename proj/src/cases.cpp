#include "vrsw/cases.hpp"

#include <cmath>

#include "vrsw/operators.hpp"

namespace vrsw {

namespace {

constexpr double kPi = 3.14159265358979323846;

double pick(double value, double fallback) {
  return value < 0.0 ? fallback : value;
}

void require_rotation(const PhysParams& phys) {
  if (!(std::abs(phys.f) > 0.0) || !(phys.g > 0.0)) {
    throw StateError("geostrophic initialization needs f != 0 and g > 0");
  }
}

// Normal velocities in discrete geostrophic balance with the node-sampled
// surface height: V = -(g/f) Gperp(h).
EdgeField geostrophic_velocity(const Mesh& m, const PhysParams& phys,
                               const std::function<double(Vec2)>& height) {
  NodeField hn(m.n_nodes());
  for (int v = 0; v < m.n_nodes(); ++v) hn[v] = height(m.node_xy[v]);
  EdgeField tang = grad_tangential(m, hn);
  EdgeField vel(m.n_edges());
  const double scale = -phys.g / phys.f;
  for (int e = 0; e < m.n_edges(); ++e) vel[e] = scale * tang[e];
  return vel;
}

CellField sample_cells(const Mesh& m, const std::function<double(Vec2)>& fn) {
  CellField out(m.n_cells());
  for (int c = 0; c < m.n_cells(); ++c) out[c] = fn(m.cell_barycenter[c]);
  return out;
}

}  // namespace

LakeCase init_lake_at_rest(const Mesh& m, const CaseSpec& spec) {
  const double H0 = pick(spec.H0, 0.75);
  const double Bp = spec.Bprime;
  const double o = spec.offset;
  const double sx = pick(spec.sigma_x, 3.0 * m.Lx / 40.0);
  const double sy = pick(spec.sigma_y, 3.0 * m.Ly / 40.0);
  const Vec2 center{(0.5 - o) * m.Lx, (0.5 - o) * m.Ly};

  LakeCase lake;
  lake.B.assign(m.n_cells(), 0.0);
  lake.state.t = 0.0;
  lake.state.V.assign(m.n_edges(), 0.0);
  lake.state.D.assign(m.n_cells(), 0.0);
  for (int c = 0; c < m.n_cells(); ++c) {
    Vec2 d = m.delta(m.cell_barycenter[c], center);
    double ex = d.x / sx, ey = d.y / sy;
    double b = Bp * std::exp(-0.5 * (ex * ex + ey * ey));
    // Nudge depth by one rounding step per pass until the stored surface is
    // flat in floating point, so the initial pressure gradient vanishes
    // identically. A sum can straddle a round-to-even tie with no exact
    // depth; shaving one ulp off the bottom breaks the tie.
    double depth = H0 - b;
    for (int attempt = 0; attempt < 4 && depth + b != H0; ++attempt) {
      for (int it = 0; it < 6 && depth + b != H0; ++it)
        depth -= (depth + b) - H0;
      if (depth + b != H0) {
        b = std::nextafter(b, 0.0);
        depth = H0 - b;
      }
    }
    if (depth + b != H0) throw StateError("lake surface failed to flatten");
    lake.B[c] = b;
    lake.state.D[c] = depth;
  }
  return lake;
}

State init_disturbed_lake(const Mesh& m, const CaseSpec& spec) {
  const double H0 = pick(spec.H0, 0.75);
  const double Hp = pick(spec.Hprime, 0.0075);
  const double sx = pick(spec.sigma_x, 3.0 * m.Ly / 40.0);
  const double sy = pick(spec.sigma_y, 3.0 * m.Ly / 40.0);
  const double xc = 0.5 * m.Lx, yc = 0.5 * m.Ly;
  const double mean_lift = 4.0 * kPi * sx * sy / (m.Lx * m.Ly);

  auto height = [&](Vec2 p) {
    double xp = m.Lx / (kPi * sx) * std::sin(kPi * (p.x - xc) / m.Lx);
    double yp = m.Ly / (kPi * sy) * std::sin(kPi * (p.y - yc) / m.Ly);
    return H0 - Hp * (std::exp(-0.5 * (xp * xp + yp * yp)) - mean_lift);
  };

  State s;
  s.t = 0.0;
  s.V.assign(m.n_edges(), 0.0);
  s.D = sample_cells(m, height);
  return s;
}

VortexCase init_isolated_vortex(const Mesh& m, const PhysParams& phys,
                                const CaseSpec& spec) {
  require_rotation(phys);
  const double H0 = pick(spec.H0, 0.75);
  const double Hp = pick(spec.Hprime, 0.075);
  const double sx = pick(spec.sigma_x, 3.0 * m.Lx / 40.0);
  const double sy = pick(spec.sigma_y, 3.0 * m.Ly / 40.0);
  const double r0 = 0.5 * (sx + sy);
  const double d = 4.0 * r0;
  const double u0 = 2.0 * phys.g * Hp / (phys.f * d);
  const double g = phys.g, f = phys.f;
  const Vec2 center{0.5 * m.Lx, 0.5 * m.Ly};

  VortexCase vc;
  vc.u0 = u0;
  vc.r0 = r0;
  // The profile decays fast enough that the minimal-image radius keeps the
  // fields smooth everywhere except far outside the core.
  vc.depth = [=, &m](Vec2 p) {
    Vec2 dd = m.delta(center, p);
    double q = (dd.x * dd.x + dd.y * dd.y) / (r0 * r0);
    return H0 - u0 * u0 / (2.0 * g) * std::exp(-q) -
           f * u0 * r0 / g * std::exp(-0.5 * q);
  };
  vc.velocity = [=, &m](Vec2 p) {
    Vec2 dd = m.delta(center, p);
    double q = (dd.x * dd.x + dd.y * dd.y) / (r0 * r0);
    double swirl = u0 / r0 * std::exp(-0.5 * q);
    return Vec2{-swirl * dd.y, swirl * dd.x};
  };
  vc.q_rel = [=, &m, depth = vc.depth](Vec2 p) {
    Vec2 dd = m.delta(center, p);
    double q = (dd.x * dd.x + dd.y * dd.y) / (r0 * r0);
    double curl = u0 / r0 * (2.0 - q) * std::exp(-0.5 * q);
    return curl / depth(p);
  };

  vc.state.t = 0.0;
  vc.state.D = sample_cells(m, vc.depth);
  if (spec.vortex_mode == VortexMode::velocity) {
    vc.state.V.assign(m.n_edges(), 0.0);
    for (int e = 0; e < m.n_edges(); ++e) {
      Vec2 u = vc.velocity(m.edges[e].mid);
      vc.state.V[e] = u.x * m.edges[e].n.x + u.y * m.edges[e].n.y;
    }
  } else {
    NodeField psi(m.n_nodes());
    for (int v = 0; v < m.n_nodes(); ++v) {
      Vec2 dd = m.delta(center, m.node_xy[v]);
      double q = (dd.x * dd.x + dd.y * dd.y) / (r0 * r0);
      psi[v] = -u0 * r0 * std::exp(-0.5 * q);
    }
    EdgeField tang = grad_tangential(m, psi);
    vc.state.V.assign(m.n_edges(), 0.0);
    for (int e = 0; e < m.n_edges(); ++e) vc.state.V[e] = -tang[e];
  }
  return vc;
}

State init_vortex_pair(const Mesh& m, const PhysParams& phys,
                       const CaseSpec& spec) {
  require_rotation(phys);
  const double H0 = pick(spec.H0, 0.75);
  const double Hp = pick(spec.Hprime, 0.075);
  const double o = spec.offset;
  const double sx = pick(spec.sigma_x, 3.0 * m.Lx / 40.0);
  const double sy = pick(spec.sigma_y, 3.0 * m.Ly / 40.0);
  const Vec2 c1{(0.5 - o) * m.Lx, (0.5 - o) * m.Ly};
  const Vec2 c2{(0.5 + o) * m.Lx, (0.5 + o) * m.Ly};
  const double mean_lift = 4.0 * kPi * sx * sy / (m.Lx * m.Ly);

  auto bump = [&](Vec2 p, Vec2 c) {
    double xp = m.Lx / (kPi * sx) * std::sin(kPi * (p.x - c.x) / m.Lx);
    double yp = m.Ly / (kPi * sy) * std::sin(kPi * (p.y - c.y) / m.Ly);
    return std::exp(-0.5 * (xp * xp + yp * yp));
  };
  auto height = [&](Vec2 p) {
    return H0 - Hp * (bump(p, c1) + bump(p, c2) - mean_lift);
  };

  State s;
  s.t = 0.0;
  s.D = sample_cells(m, height);
  s.V = geostrophic_velocity(m, phys, height);
  return s;
}

State init_shear_flow(const Mesh& m, const PhysParams& phys,
                      const CaseSpec& spec) {
  require_rotation(phys);
  const double H0 = pick(spec.H0, 1.076);
  const double Hp = pick(spec.Hprime, 0.03);
  const double kap = spec.kappa;
  const double lx = spec.lambda_x;
  const double sy = spec.sigma_y_jet;
  const double yc = 0.5 * m.Ly;

  // x', y', y'' are dimensionless; sigma_y_jet and lambda_x are fractions of
  // the domain extents, so the profile shape is resolution independent.
  auto height = [&](Vec2 p) {
    double xp = p.x / m.Lx;
    double yp = std::sin(kPi * (p.y - yc) / m.Ly) / kPi;
    double ypp = std::sin(2.0 * kPi * (p.y - yc) / m.Ly) / (2.0 * kPi);
    double jet = ypp / sy * std::exp(-yp * yp / (2.0 * sy * sy) + 0.5);
    return H0 - Hp * jet * (1.0 + kap * std::sin(2.0 * kPi * xp / lx));
  };

  State s;
  s.t = 0.0;
  s.D = sample_cells(m, height);
  s.V = geostrophic_velocity(m, phys, height);
  return s;
}

}  // namespace vrsw
