#include "remsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace remsim {
namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

int sign(double v) { return (v > 1e-12) - (v < -1e-12); }

bool proper_crossing(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int d1 = sign(cross(a, b, c));
  const int d2 = sign(cross(a, b, d));
  const int d3 = sign(cross(c, d, a));
  const int d4 = sign(cross(c, d, b));
  return d1 * d2 < 0 && d3 * d4 < 0;
}

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance(Point3 a, Point3 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) return distance(p, a);
  double t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, Point2{a.x + t * vx, a.y + t * vy});
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int d1 = sign(cross(a, b, c));
  const int d2 = sign(cross(a, b, d));
  const int d3 = sign(cross(c, d, a));
  const int d4 = sign(cross(c, d, b));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(c, a, b)) return true;
  if (d2 == 0 && on_segment(d, a, b)) return true;
  if (d3 == 0 && on_segment(a, c, d)) return true;
  if (d4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() >= 3 && signed_area(vertices_) < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
  }
}

bool Polygon::contains(Point2 p) const {
  const std::size_t n = vertices_.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[j];
    if (point_segment_distance(p, a, b) <= 1e-12) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool Polygon::contains_strictly(Point2 p, double tol) const {
  return contains(p) && distance_to_boundary(p) > tol;
}

double Polygon::area() const { return std::abs(signed_area(vertices_)); }

double Polygon::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    s += distance(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return s;
}

double Polygon::distance_to_boundary(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  }
  return best;
}

Rect Polygon::bounding_box() const {
  Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& v : vertices_) {
    r.x_min = std::min(r.x_min, v.x);
    r.y_min = std::min(r.y_min, v.y);
    r.x_max = std::max(r.x_max, v.x);
    r.y_max = std::max(r.y_max, v.y);
  }
  return r;
}

bool Polygon::is_simple() const {
  const std::size_t n = vertices_.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(vertices_[i], vertices_[(i + 1) % n]) == 0.0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(a, b, vertices_[j], vertices_[(j + 1) % n])) return false;
    }
  }
  return std::abs(signed_area(vertices_)) > 0.0;
}

bool Polygon::overlaps(const Rect& r) const {
  const std::size_t n = vertices_.size();
  if (n < 3) return false;
  for (const auto& v : vertices_) {
    if (v.x > r.x_min && v.x < r.x_max && v.y > r.y_min && v.y < r.y_max) return true;
  }
  const Point2 corners[4] = {
      {r.x_min, r.y_min}, {r.x_max, r.y_min}, {r.x_max, r.y_max}, {r.x_min, r.y_max}};
  for (const auto& c : corners) {
    if (contains_strictly(c)) return true;
  }
  if (contains_strictly({0.5 * (r.x_min + r.x_max), 0.5 * (r.y_min + r.y_max)})) return true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % n];
    for (int k = 0; k < 4; ++k) {
      if (proper_crossing(a, b, corners[k], corners[(k + 1) % 4])) return true;
    }
  }
  return false;
}

}  // namespace remsim
