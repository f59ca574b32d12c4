#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "wg/geometry.hpp"
#include "wg/quadrature.hpp"

namespace wg {

/// Scaled monomials ((x - x_K)/h_K)^a ((y - y_K)/h_K)^b, a + b <= k, ordered
/// by total degree. The first dim P_{k-1} functions therefore span P_{k-1}.
///
/// orthonormalized() returns the same hierarchy after a lower-triangular
/// change of basis that makes the Gram matrix |K| I on the given rule. The
/// constant function stays 1 and P_{k-1} still comes first.
class ElementBasis {
public:
    ElementBasis(int degree, const Point& center, double scale);

    static std::size_t dimension(int degree)
    {
        return degree < 0 ? 0 : static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
    }

    int degree() const { return degree_; }
    std::size_t size() const { return exponents_.size(); }
    const Point& center() const { return center_; }
    double scale() const { return scale_; }
    const std::vector<std::pair<int, int>>& exponents() const { return exponents_; }

    Eigen::VectorXd values(const Point& p) const;

    /// size() x 2: column 0 holds d/dx, column 1 d/dy (chain-rule factor 1/h included).
    Eigen::Matrix<double, Eigen::Dynamic, 2> gradients(const Point& p) const;

    /// size() x points.size()
    Eigen::MatrixXd evaluate(std::span<const Point> points) const;

    /// (d/dx, d/dy) values, each size() x points.size()
    std::pair<Eigen::MatrixXd, Eigen::MatrixXd> evaluate_gradient(std::span<const Point> points) const;

    /// Rule must integrate degree 2k exactly over the element.
    ElementBasis orthonormalized(const QuadratureRule& rule) const;
    bool is_orthonormal() const { return transform_.size() > 0; }
    /// Row i holds the monomial coefficients of function i (empty: identity).
    const Eigen::MatrixXd& transform() const { return transform_; }

private:
    Eigen::VectorXd monomials(const Point& p) const;
    Eigen::Matrix<double, Eigen::Dynamic, 2> monomial_gradients(const Point& p) const;

    int degree_;
    Point center_;
    double scale_;
    std::vector<std::pair<int, int>> exponents_;
    Eigen::MatrixXd transform_;
};

/// Legendre polynomials P_0..P_k in the arclength parameter t in [-1, 1]
/// running from `a` (t = -1) to `b` (t = 1).
class EdgeBasis {
public:
    EdgeBasis(int degree, const Point& a, const Point& b);

    int degree() const { return degree_; }
    std::size_t size() const { return static_cast<std::size_t>(degree_ + 1); }

    /// Parameter of the orthogonal projection of p onto the edge line.
    double parameter(const Point& p) const;

    Eigen::VectorXd values(const Point& p) const;
    Eigen::MatrixXd evaluate(std::span<const Point> points) const;

private:
    int degree_;
    Point a_;
    Point b_;
};

} // namespace wg
