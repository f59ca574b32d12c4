#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wg/assembly.hpp"
#include "wg/mesh.hpp"
#include "wg/problem.hpp"
#include "wg/space.hpp"

namespace wgtest {

using wg::Point;

/// Sum over a+b <= degree of c_ab x^a y^b with fixed coefficients.
struct Polynomial {
    int degree = 0;
    std::vector<double> coeffs; // ordered like the element basis exponents

    double operator()(const Point& p) const
    {
        double s = 0.0;
        std::size_t i = 0;
        for (int d = 0; d <= degree; ++d)
            for (int b = 0; b <= d; ++b, ++i)
                s += coeffs[i] * std::pow(p.x(), d - b) * std::pow(p.y(), b);
        return s;
    }
    Point gradient(const Point& p) const
    {
        Point g = Point::Zero();
        std::size_t i = 0;
        for (int d = 0; d <= degree; ++d)
            for (int b = 0; b <= d; ++b, ++i) {
                const int a = d - b;
                if (a > 0)
                    g.x() += coeffs[i] * a * std::pow(p.x(), a - 1) * std::pow(p.y(), b);
                if (b > 0)
                    g.y() += coeffs[i] * b * std::pow(p.x(), a) * std::pow(p.y(), b - 1);
            }
        return g;
    }
};

inline Polynomial random_polynomial(int degree, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Polynomial p;
    p.degree = degree;
    p.coeffs.resize(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2));
    for (auto& c : p.coeffs)
        c = dist(rng);
    return p;
}

/// Random member of V_h^0: random coefficients, zero on constrained traces.
inline wg::WeakFunction random_test_function(const wg::WgSpace& space, const wg::DofMap& dofs, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto v = wg::WeakFunction::zero(space);
    for (auto& c : v.interior)
        for (Eigen::Index i = 0; i < c.size(); ++i)
            c[i] = dist(rng);
    for (std::size_t e = 0; e < v.trace.size(); ++e) {
        if (dofs.status(e) != wg::TraceStatus::free)
            continue;
        for (Eigen::Index i = 0; i < v.trace[e].size(); ++i)
            v.trace[e][i] = dist(rng);
    }
    return v;
}

/// Manufactured problem with constant beta and alpha for a polynomial u.
inline wg::ProblemSpec polynomial_problem(const Polynomial& u, Point beta, double alpha)
{
    return wg::manufactured_problem(
        "polynomial", [beta](const Point&) { return beta; }, [](const Point&) { return 0.0; },
        [alpha](const Point&) { return alpha; }, u, [u](const Point& p) { return u.gradient(p); }, alpha);
}

inline double max_coefficient_difference(const wg::WeakFunction& a, const wg::WeakFunction& b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.interior.size(); ++k)
        m = std::max(m, (a.interior[k] - b.interior[k]).lpNorm<Eigen::Infinity>());
    for (std::size_t e = 0; e < a.trace.size(); ++e)
        if (a.trace[e].size() > 0)
            m = std::max(m, (a.trace[e] - b.trace[e]).lpNorm<Eigen::Infinity>());
    return m;
}

/// One-element mesh of the unit square.
inline wg::PolygonalMesh unit_square_mesh()
{
    std::vector<Point> v{Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)};
    std::vector<std::vector<std::size_t>> els{{0, 1, 2, 3}};
    auto specs = wg::match_interfaces(els);
    return wg::PolygonalMesh(std::move(v), std::move(els), std::move(specs));
}

/// Id of the interface of a one-element mesh whose outward normal is `n`.
inline std::size_t face_with_normal(const wg::PolygonalMesh& mesh, std::size_t k, const Point& n)
{
    for (std::size_t e : mesh.element(k).interface_ids)
        if ((mesh.interface(e).outward_normal(k) - n).norm() < 1e-14)
            return e;
    throw std::logic_error("no such face");
}

} // namespace wgtest
