#pragma once

#include <vector>

namespace remsim {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 xy() const { return {x, y}; }
};

inline Point3 lift(Point2 p, double z) { return {p.x, p.y, z}; }

double distance(Point2 a, Point2 b);
double distance(Point3 a, Point3 b);

/// Axis-aligned rectangle, closed on all sides.
struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool contains(Point2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool valid() const { return x_max > x_min && y_max > y_min; }
};

/// Closed 2-D polygon. Vertices are stored counter-clockwise regardless of
/// the order they were given in.
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Even-odd interior test. Points on an edge count as inside.
  bool contains(Point2 p) const;
  /// Strict interior: inside and farther than `tol` from every edge.
  bool contains_strictly(Point2 p, double tol = 1e-9) const;

  double area() const;
  double perimeter() const;
  double distance_to_boundary(Point2 p) const;
  Rect bounding_box() const;

  /// No two non-adjacent edges touch and no edge has zero length.
  bool is_simple() const;
  /// True if any part of the polygon interior overlaps the rectangle.
  bool overlaps(const Rect& r) const;

 private:
  std::vector<Point2> vertices_;
};

double point_segment_distance(Point2 p, Point2 a, Point2 b);
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

}  // namespace remsim
