#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "wg/geometry.hpp"
#include "wg/mesh.hpp"

namespace wg {

struct QuadratureRule {
    std::vector<Point> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double measure() const;

    template <typename F>
    double integrate(F&& f) const
    {
        double s = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q)
            s += weights[q] * f(nodes[q]);
        return s;
    }
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline constexpr std::size_t max_gauss_points = 64;

/// n-point rule, exact for polynomials of degree 2n - 1. 1 <= n <= 64.
const GaussRule& gauss_legendre(std::size_t n);

/// Smallest n with 2n - 1 >= degree.
inline std::size_t gauss_points_for_degree(int degree) { return degree <= 0 ? 1 : static_cast<std::size_t>(degree / 2 + 1); }

QuadratureRule segment_quadrature(const Point& a, const Point& b, int degree);
QuadratureRule edge_quadrature(const Interface& edge, int degree);

/// Collapsed-coordinate (Duffy) tensor Gauss rule; positive weights, exact to `degree`.
QuadratureRule triangle_quadrature(const Point& a, const Point& b, const Point& c, int degree);

/// Fan from the area centroid when every fan triangle is positively oriented;
/// ear clipping otherwise. Collinear (180 degree) vertices are kept in the fan
/// and dropped before ear clipping.
std::vector<std::array<Point, 3>> triangulate_polygon(std::span<const Point> polygon);

QuadratureRule polygon_quadrature(std::span<const Point> polygon, int degree);
QuadratureRule polygon_quadrature(const PolygonalMesh& mesh, std::size_t element, int degree);

} // namespace wg
