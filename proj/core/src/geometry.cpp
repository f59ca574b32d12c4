#include "wg/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace wg {

double signed_area(std::span<const Point> polygon)
{
    const std::size_t n = polygon.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    return 0.5 * twice;
}

Point area_centroid(std::span<const Point> polygon)
{
    // Shift to the first vertex to keep the shoelace sums well conditioned.
    const std::size_t n = polygon.size();
    const Point origin = polygon[0];
    double twice_area = 0.0;
    Point acc = Point::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = polygon[i] - origin;
        const Point b = polygon[(i + 1) % n] - origin;
        const double c = cross(a, b);
        twice_area += c;
        acc += c * (a + b);
    }
    return origin + acc / (3.0 * twice_area);
}

double diameter(std::span<const Point> polygon)
{
    double d = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        for (std::size_t j = i + 1; j < polygon.size(); ++j)
            d = std::max(d, (polygon[i] - polygon[j]).norm());
    return d;
}

double perimeter(std::span<const Point> polygon)
{
    double p = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        p += (polygon[(i + 1) % polygon.size()] - polygon[i]).norm();
    return p;
}

double segment_distance(const Point& p, const Point& a, const Point& b)
{
    const Point ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0)
        return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

bool point_in_polygon(const Point& p, std::span<const Point> polygon, double tol)
{
    const std::size_t n = polygon.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = polygon[i];
        const Point& b = polygon[j];
        if (segment_distance(p, a, b) <= tol)
            return true;
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < x)
                inside = !inside;
        }
    }
    return inside;
}

bool segments_properly_intersect(const Point& a0, const Point& a1, const Point& b0, const Point& b1)
{
    const double d1 = cross(a1 - a0, b0 - a0);
    const double d2 = cross(a1 - a0, b1 - a0);
    const double d3 = cross(b1 - b0, a0 - b0);
    const double d4 = cross(b1 - b0, a1 - b0);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool is_simple_polygon(std::span<const Point> polygon)
{
    const std::size_t n = polygon.size();
    if (n < 3)
        return false;
    const double scale = diameter(polygon);
    const double tol = 1e-12 * scale;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a0 = polygon[i];
        const Point& a1 = polygon[(i + 1) % n];
        if ((a1 - a0).norm() <= tol)
            return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent)
                continue;
            const Point& b0 = polygon[j];
            const Point& b1 = polygon[(j + 1) % n];
            if (segments_properly_intersect(a0, a1, b0, b1))
                return false;
            // A vertex touching a non-adjacent edge also breaks simplicity.
            if (segment_distance(b0, a0, a1) <= tol || segment_distance(b1, a0, a1) <= tol ||
                segment_distance(a0, b0, b1) <= tol || segment_distance(a1, b0, b1) <= tol)
                return false;
        }
    }
    return true;
}

} // namespace wg
