#pragma once

#include <span>

#include <Eigen/Core>

namespace wg {

using Point = Eigen::Vector2d;

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Shoelace area; positive for counterclockwise vertex order.
double signed_area(std::span<const Point> polygon);

/// Area centroid of a simple polygon with nonzero area.
Point area_centroid(std::span<const Point> polygon);

/// Maximum pairwise vertex distance.
double diameter(std::span<const Point> polygon);

double perimeter(std::span<const Point> polygon);

/// Distance from p to the segment [a, b].
double segment_distance(const Point& p, const Point& a, const Point& b);

/// Inclusive point-in-polygon test: points within `tol` of the boundary count
/// as inside.
bool point_in_polygon(const Point& p, std::span<const Point> polygon, double tol = 1e-13);

/// True when the segments cross at a point that is not a shared endpoint.
bool segments_properly_intersect(const Point& a0, const Point& a1, const Point& b0, const Point& b1);

/// Simple-polygon check: no two non-adjacent edges intersect.
bool is_simple_polygon(std::span<const Point> polygon);

} // namespace wg
