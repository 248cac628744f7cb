#include "vrsw/geometry.hpp"

namespace vrsw {

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const double ux = (ac.y * ab2 - ab.y * ac2) / d;
  const double uy = (ab.x * ac2 - ac.x * ab2) / d;
  return {a.x + ux, a.y + uy};
}

double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) s += cross(poly[k], poly[(k + 1) % n]);
  return 0.5 * s;
}

std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, Vec2 a, Vec2 b) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 2);
  const Vec2 dir = b - a;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 p = poly[k];
    const Vec2 q = poly[(k + 1) % n];
    const double sp = cross(dir, p - a);
    const double sq = cross(dir, q - a);
    if (sp >= 0.0) out.push_back(p);
    if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
      const double t = sp / (sp - sq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

double clipped_area(const std::vector<Vec2>& poly, Vec2 t0, Vec2 t1, Vec2 t2) {
  std::vector<Vec2> r = clip_half_plane(poly, t0, t1);
  r = clip_half_plane(r, t1, t2);
  r = clip_half_plane(r, t2, t0);
  return r.size() < 3 ? 0.0 : polygon_area(r);
}

}  // namespace vrsw
