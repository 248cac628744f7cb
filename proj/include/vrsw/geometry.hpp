#pragma once

#include <cmath>
#include <vector>

namespace vrsw {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// 90 degree counterclockwise rotation, k x a.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

// Circumcenter of a nondegenerate triangle given in one coordinate chart.
Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c);

// Signed area of a polygon (positive when counterclockwise).
double polygon_area(const std::vector<Vec2>& poly);

// Intersection of a convex polygon with the half plane
// {p : cross(b - a, p - a) >= 0}, i.e. the region left of the line a->b.
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, Vec2 a, Vec2 b);

// Area of the intersection of a convex polygon with a ccw triangle.
double clipped_area(const std::vector<Vec2>& poly, Vec2 t0, Vec2 t1, Vec2 t2);

}  // namespace vrsw
