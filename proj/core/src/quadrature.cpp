#include "wg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "wg/errors.hpp"

namespace wg {

double QuadratureRule::measure() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

namespace {

GaussRule compute_gauss(std::size_t n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(std::size_t n)
{
    static const std::array<GaussRule, max_gauss_points + 1> table = [] {
        std::array<GaussRule, max_gauss_points + 1> t;
        t[1] = GaussRule{{0.0}, {2.0}};
        for (std::size_t m = 2; m <= max_gauss_points; ++m)
            t[m] = compute_gauss(m);
        return t;
    }();
    if (n < 1 || n > max_gauss_points)
        throw std::out_of_range("gauss_legendre: unsupported point count " + std::to_string(n));
    return table[n];
}

QuadratureRule segment_quadrature(const Point& a, const Point& b, int degree)
{
    const double len = (b - a).norm();
    if (!(len > 0.0))
        throw MeshError("segment_quadrature: zero-length segment");
    const auto& g = gauss_legendre(gauss_points_for_degree(degree));
    QuadratureRule rule;
    rule.nodes.reserve(g.nodes.size());
    rule.weights.reserve(g.nodes.size());
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double t = 0.5 * (g.nodes[q] + 1.0);
        rule.nodes.push_back(a + t * (b - a));
        rule.weights.push_back(0.5 * len * g.weights[q]);
    }
    return rule;
}

QuadratureRule edge_quadrature(const Interface& edge, int degree) { return segment_quadrature(edge.p0, edge.p1, degree); }

QuadratureRule triangle_quadrature(const Point& a, const Point& b, const Point& c, int degree)
{
    const double twice_area = cross(b - a, c - a);
    if (!(std::abs(twice_area) > 0.0))
        throw MeshError("triangle_quadrature: degenerate triangle");
    // (u, v) in [0,1]^2 -> a + u (b - a) + v (1 - u) (c - a); Jacobian 2|T| (1 - u).
    const auto& gu = gauss_legendre(gauss_points_for_degree(degree + 1));
    const auto& gv = gauss_legendre(gauss_points_for_degree(degree));
    QuadratureRule rule;
    rule.nodes.reserve(gu.nodes.size() * gv.nodes.size());
    rule.weights.reserve(gu.nodes.size() * gv.nodes.size());
    for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
        const double u = 0.5 * (gu.nodes[i] + 1.0);
        for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
            const double v = 0.5 * (gv.nodes[j] + 1.0);
            rule.nodes.push_back(a + u * (b - a) + v * (1.0 - u) * (c - a));
            rule.weights.push_back(0.25 * gu.weights[i] * gv.weights[j] * std::abs(twice_area) * (1.0 - u));
        }
    }
    return rule;
}

namespace {

bool inside_triangle(const Point& p, const Point& a, const Point& b, const Point& c)
{
    const double d1 = cross(b - a, p - a);
    const double d2 = cross(c - b, p - b);
    const double d3 = cross(a - c, p - c);
    return d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0;
}

std::vector<std::array<Point, 3>> ear_clip(std::vector<Point> poly)
{
    const double scale = diameter(poly);
    const double tol = 1e-14 * scale * scale;
    // Drop 180-degree vertices; they would produce zero-area ears.
    for (std::size_t i = 0; i < poly.size() && poly.size() > 3;) {
        const Point& prev = poly[(i + poly.size() - 1) % poly.size()];
        const Point& next = poly[(i + 1) % poly.size()];
        if (std::abs(cross(poly[i] - prev, next - poly[i])) <= tol)
            poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }

    std::vector<std::array<Point, 3>> tris;
    while (poly.size() > 3) {
        bool clipped = false;
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = poly[(i + n - 1) % n];
            const Point& b = poly[i];
            const Point& c = poly[(i + 1) % n];
            if (cross(b - a, c - b) <= tol)
                continue; // reflex or flat
            bool empty = true;
            for (std::size_t j = 0; j < n && empty; ++j) {
                if (j == i || j == (i + 1) % n || j == (i + n - 1) % n)
                    continue;
                if (inside_triangle(poly[j], a, b, c))
                    empty = false;
            }
            if (!empty)
                continue;
            tris.push_back({a, b, c});
            poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
            break;
        }
        if (!clipped)
            throw MeshError("triangulate_polygon: ear clipping failed (polygon not simple?)");
    }
    tris.push_back({poly[0], poly[1], poly[2]});
    return tris;
}

} // namespace

std::vector<std::array<Point, 3>> triangulate_polygon(std::span<const Point> polygon)
{
    const double area = signed_area(polygon);
    if (!(area > 0.0))
        throw MeshError("triangulate_polygon: polygon must be counterclockwise with positive area");
    const Point c = area_centroid(polygon);
    const std::size_t n = polygon.size();
    const double tol = 1e-12 * area;
    bool star = true;
    for (std::size_t i = 0; i < n && star; ++i)
        star = cross(polygon[i] - c, polygon[(i + 1) % n] - c) > tol;
    if (star) {
        std::vector<std::array<Point, 3>> tris;
        tris.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            tris.push_back({c, polygon[i], polygon[(i + 1) % n]});
        return tris;
    }
    return ear_clip(std::vector<Point>(polygon.begin(), polygon.end()));
}

QuadratureRule polygon_quadrature(std::span<const Point> polygon, int degree)
{
    QuadratureRule rule;
    for (const auto& t : triangulate_polygon(polygon)) {
        auto sub = triangle_quadrature(t[0], t[1], t[2], degree);
        rule.nodes.insert(rule.nodes.end(), sub.nodes.begin(), sub.nodes.end());
        rule.weights.insert(rule.weights.end(), sub.weights.begin(), sub.weights.end());
    }
    return rule;
}

QuadratureRule polygon_quadrature(const PolygonalMesh& mesh, std::size_t element, int degree)
{
    const auto poly = mesh.polygon(element);
    return polygon_quadrature(poly, degree);
}

} // namespace wg
