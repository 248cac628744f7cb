#include "vrsw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace vrsw {

DiagnosticsRecord quantities(const Mesh& m, const State& s,
                             const PhysParams& params) {
  DiagnosticsRecord r;
  r.t = s.t;
  for (int c = 0; c < m.n_cells(); ++c) {
    r.mass += s.D[c] * m.cell_area[c];
    double v2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      int e = m.cell_edges[c][k];
      v2 += m.edges[e].h * m.edges[e].f * s.V[e] * s.V[e];
    }
    r.e_kin += 0.5 * s.D[c] * v2 / 2.0;
    double surf = s.D[c] + params.bottom(c);
    r.e_pot += 0.5 * params.g * surf * surf * m.cell_area[c];
  }
  NodeField w = curl(m, s.V);
  for (int v = 0; v < m.n_nodes(); ++v) {
    double wa = w[v] + params.f;
    double de = node_depth(m, s.D, v);
    if (!(de > 0.0)) {
      throw DiagnosticsError("node " + std::to_string(v) +
                             " has nonpositive averaged depth " +
                             std::to_string(de));
    }
    r.pv += wa * m.node_loops[v].area;
    r.pe += 0.5 * wa * wa / de * m.node_loops[v].area;
  }
  r.e_tot = r.e_kin + r.e_pot;
  return r;
}

void set_relative_errors(DiagnosticsRecord& r, const DiagnosticsRecord& ref) {
  r.rel_err_mass = std::abs(r.mass - ref.mass) / std::abs(ref.mass);
  r.rel_err_e_tot = std::abs(r.e_tot - ref.e_tot) / std::abs(ref.e_tot);
  r.rel_err_pv = std::abs(r.pv - ref.pv) / std::abs(ref.pv);
  r.rel_err_pe = std::abs(r.pe - ref.pe) / std::abs(ref.pe);
}

double node_depth(const Mesh& m, const CellField& D, int node) {
  const Mesh::NodeLoop& loop = m.node_loops[node];
  double d = 0.0;
  for (size_t t = 0; t < loop.cells.size(); ++t) {
    d += loop.kite[t] * D[loop.cells[t]];
  }
  return d;
}

NodeField relative_pv(const Mesh& m, const EdgeField& V, const CellField& D) {
  NodeField w = curl(m, V);
  NodeField q(m.n_nodes());
  for (int v = 0; v < m.n_nodes(); ++v) {
    double de = node_depth(m, D, v);
    if (!(de > 0.0)) {
      throw DiagnosticsError("node " + std::to_string(v) +
                             " has nonpositive averaged depth " +
                             std::to_string(de));
    }
    q[v] = w[v] / de;
  }
  return q;
}

ErrorNorms error_norms(const Mesh& m, const CellField& field_t,
                       const CellField& field_0) {
  double num2 = 0.0, den2 = 0.0, numi = 0.0, deni = 0.0;
  for (int c = 0; c < m.n_cells(); ++c) {
    double a = field_t[c] * m.cell_area[c];
    double b = field_0[c] * m.cell_area[c];
    num2 += (a - b) * (a - b);
    den2 += b * b;
    numi = std::max(numi, std::abs(a - b));
    deni = std::max(deni, std::abs(b));
  }
  if (den2 == 0.0 || deni == 0.0) {
    throw DiagnosticsError("error norm against an identically zero field");
  }
  return {std::sqrt(num2) / std::sqrt(den2), numi / deni};
}

std::vector<double> spectrum(const std::vector<double>& series,
                             double sample_interval, bool window) {
  const int n = static_cast<int>(series.size());
  if (n < 16) {
    throw DiagnosticsError("series of " + std::to_string(n) +
                           " samples cannot resolve a spectrum");
  }
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= n;

  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double w = window ? 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1))) : 1.0;
    y[i] = (series[i] - mean) * w;
  }

  const int half = n / 2;
  std::vector<double> mag(half + 1, 0.0);
  for (int k = 1; k <= half; ++k) {
    std::complex<double> acc(0.0, 0.0);
    double ang = -2.0 * M_PI * k / n;
    for (int i = 0; i < n; ++i) {
      acc += y[i] * std::polar(1.0, ang * i);
    }
    mag[k] = std::abs(acc);
  }

  std::vector<double> sorted(mag.begin() + 1, mag.end());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  double floor = 5.0 * sorted[sorted.size() / 2];

  std::vector<double> peaks;
  double domega = 2.0 * M_PI / (n * sample_interval);
  for (int k = 2; k < half; ++k) {
    if (mag[k] > floor && mag[k] > mag[k - 1] && mag[k] > mag[k + 1]) {
      peaks.push_back(k * domega);
    }
  }
  return peaks;
}

std::vector<ModeFrequency> predict_frequencies(double f, double g, double H0,
                                               double Lx, double Ly,
                                               int n_max) {
  std::vector<ModeFrequency> table;
  table.reserve((n_max + 1) * (n_max + 1));
  for (int nx = 0; nx <= n_max; ++nx) {
    for (int ny = 0; ny <= n_max; ++ny) {
      double k = nx * 2.0 * M_PI / Lx;
      double l = ny * 2.0 * M_PI / Ly;
      double w2 = f * f + g * H0 * (k * k + l * l);
      table.push_back({nx, ny, std::sqrt(w2)});
    }
  }
  return table;
}

RegimeNumbers regime_numbers(double g, double f, double H0, double Hprime,
                             double d) {
  RegimeNumbers r;
  r.U = 2.0 * g * Hprime / (f * d);
  r.Ro = r.U / (f * d);
  r.Fr = r.U / std::sqrt(g * H0);
  r.Bu = (r.Ro / r.Fr) * (r.Ro / r.Fr);
  r.L_D = std::sqrt(g * H0) / f;
  return r;
}

}  // namespace vrsw
