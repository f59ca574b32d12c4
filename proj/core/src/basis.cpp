#include "wg/basis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace wg {

namespace {
constexpr int max_degree = 16;
}

ElementBasis::ElementBasis(int degree, const Point& center, double scale)
    : degree_(degree), center_(center), scale_(scale)
{
    if (degree < 0)
        throw std::invalid_argument("ElementBasis: negative degree");
    if (degree > max_degree)
        throw std::invalid_argument("ElementBasis: degree above 16");
    if (!(scale > 0.0))
        throw std::invalid_argument("ElementBasis: scale must be positive");
    for (int d = 0; d <= degree; ++d)
        for (int a = d; a >= 0; --a)
            exponents_.emplace_back(a, d - a);
}

namespace {

// powers[i] = s^i for i <= k
void fill_powers(double s, int k, double* powers)
{
    powers[0] = 1.0;
    for (int i = 1; i <= k; ++i)
        powers[i] = powers[i - 1] * s;
}

} // namespace

Eigen::VectorXd ElementBasis::monomials(const Point& p) const
{
    double px[max_degree + 1], py[max_degree + 1];
    fill_powers((p.x() - center_.x()) / scale_, degree_, px);
    fill_powers((p.y() - center_.y()) / scale_, degree_, py);
    Eigen::VectorXd v(size());
    for (std::size_t i = 0; i < exponents_.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = px[exponents_[i].first] * py[exponents_[i].second];
    return v;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> ElementBasis::monomial_gradients(const Point& p) const
{
    double px[max_degree + 1], py[max_degree + 1];
    fill_powers((p.x() - center_.x()) / scale_, degree_, px);
    fill_powers((p.y() - center_.y()) / scale_, degree_, py);
    Eigen::Matrix<double, Eigen::Dynamic, 2> g(size(), 2);
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        const auto [a, b] = exponents_[i];
        const auto r = static_cast<Eigen::Index>(i);
        g(r, 0) = a > 0 ? a * px[a - 1] * py[b] / scale_ : 0.0;
        g(r, 1) = b > 0 ? b * px[a] * py[b - 1] / scale_ : 0.0;
    }
    return g;
}

Eigen::VectorXd ElementBasis::values(const Point& p) const
{
    if (transform_.size() == 0)
        return monomials(p);
    return transform_.triangularView<Eigen::Lower>() * monomials(p);
}

Eigen::Matrix<double, Eigen::Dynamic, 2> ElementBasis::gradients(const Point& p) const
{
    if (transform_.size() == 0)
        return monomial_gradients(p);
    return transform_.triangularView<Eigen::Lower>() * monomial_gradients(p);
}

ElementBasis ElementBasis::orthonormalized(const QuadratureRule& rule) const
{
    const double measure = rule.measure();
    if (!(measure > 0.0))
        throw std::invalid_argument("ElementBasis: quadrature rule with non-positive measure");
    const auto n = static_cast<Eigen::Index>(size());
    ElementBasis out(*this);
    out.transform_ = Eigen::MatrixXd::Identity(n, n);
    // Two Cholesky passes: the second removes the loss of orthogonality
    // left by the first on badly scaled monomials.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Eigen::VectorXd v = out.values(rule.nodes[q]);
            gram.noalias() += (rule.weights[q] / measure) * v * v.transpose();
        }
        Eigen::LLT<Eigen::MatrixXd> llt(gram);
        if (llt.info() != Eigen::Success)
            throw std::invalid_argument("ElementBasis: Gram matrix is not positive definite");
        Eigen::MatrixXd lower = llt.matrixL();
        out.transform_ = lower.triangularView<Eigen::Lower>().solve(out.transform_);
    }
    out.transform_ = out.transform_.triangularView<Eigen::Lower>();
    return out;
}

Eigen::MatrixXd ElementBasis::evaluate(std::span<const Point> points) const
{
    Eigen::MatrixXd m(size(), points.size());
    for (std::size_t q = 0; q < points.size(); ++q)
        m.col(static_cast<Eigen::Index>(q)) = values(points[q]);
    return m;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ElementBasis::evaluate_gradient(std::span<const Point> points) const
{
    Eigen::MatrixXd dx(size(), points.size()), dy(size(), points.size());
    for (std::size_t q = 0; q < points.size(); ++q) {
        const auto g = gradients(points[q]);
        dx.col(static_cast<Eigen::Index>(q)) = g.col(0);
        dy.col(static_cast<Eigen::Index>(q)) = g.col(1);
    }
    return {dx, dy};
}

EdgeBasis::EdgeBasis(int degree, const Point& a, const Point& b) : degree_(degree), a_(a), b_(b)
{
    if (degree < 0)
        throw std::invalid_argument("EdgeBasis: negative degree");
    if (!((b - a).squaredNorm() > 0.0))
        throw std::invalid_argument("EdgeBasis: zero-length edge");
}

double EdgeBasis::parameter(const Point& p) const
{
    const Point d = b_ - a_;
    return 2.0 * (p - a_).dot(d) / d.squaredNorm() - 1.0;
}

Eigen::VectorXd EdgeBasis::values(const Point& p) const
{
    const double t = parameter(p);
    Eigen::VectorXd v(size());
    v[0] = 1.0;
    if (degree_ >= 1)
        v[1] = t;
    for (int n = 2; n <= degree_; ++n)
        v[n] = ((2.0 * n - 1.0) * t * v[n - 1] - (n - 1.0) * v[n - 2]) / n;
    return v;
}

Eigen::MatrixXd EdgeBasis::evaluate(std::span<const Point> points) const
{
    Eigen::MatrixXd m(size(), points.size());
    for (std::size_t q = 0; q < points.size(); ++q)
        m.col(static_cast<Eigen::Index>(q)) = values(points[q]);
    return m;
}

} // namespace wg
