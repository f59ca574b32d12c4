#include "wg/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wg/errors.hpp"

namespace wg {

double divergence(const ProblemSpec& problem, const Point& p, double length_scale)
{
    if (problem.div_beta)
        return problem.div_beta(p);
    const double step = 1e-6 * length_scale;
    const Point ex(step, 0.0), ey(0.0, step);
    return (problem.beta(p + ex).x() - problem.beta(p - ex).x() + problem.beta(p + ey).y() -
            problem.beta(p - ey).y()) /
           (2.0 * step);
}

double sigma(const ProblemSpec& problem, const Point& p, double length_scale)
{
    return problem.alpha(p) + 0.5 * divergence(problem, p, length_scale);
}

ProblemSpec manufactured_problem(std::string name, VectorField beta, ScalarField div_beta, ScalarField alpha,
                                 ScalarField u, VectorField grad_u, double sigma0, Rectangle domain)
{
    ProblemSpec p;
    p.name = std::move(name);
    p.beta = std::move(beta);
    p.div_beta = std::move(div_beta);
    p.alpha = std::move(alpha);
    p.u_exact = std::move(u);
    p.grad_u_exact = std::move(grad_u);
    p.sigma0 = sigma0;
    p.domain = domain;
    p.f = [b = p.beta, d = p.div_beta, a = p.alpha, uu = p.u_exact, gu = p.grad_u_exact](const Point& x) {
        const double div = d ? d(x) : 0.0;
        return div * uu(x) + b(x).dot(gu(x)) + a(x) * uu(x);
    };
    p.g = p.u_exact;
    return p;
}

namespace {

ProblemSpec example1()
{
    ProblemSpec p;
    p.name = "example1";
    p.beta = [](const Point&) { return Point(1.0, 0.0); };
    p.div_beta = [](const Point&) { return 0.0; };
    p.alpha = [](const Point&) { return 2.0; };
    p.u_exact = [](const Point& x) { return std::exp(x.x() * x.y()); };
    p.grad_u_exact = [](const Point& x) {
        const double e = std::exp(x.x() * x.y());
        return Point(x.y() * e, x.x() * e);
    };
    p.f = [](const Point& x) {
        const double e = std::exp(x.x() * x.y());
        return x.y() * e + 2.0 * e;
    };
    p.g = p.u_exact;
    p.sigma0 = 2.0;
    return p;
}

ProblemSpec example2()
{
    ProblemSpec p;
    p.name = "example2";
    p.beta = [](const Point&) { return Point(1.0, 1.0); };
    p.div_beta = [](const Point&) { return 0.0; };
    p.alpha = [](const Point&) { return 1.0; };
    p.u_exact = [](const Point& x) { return std::sin(4.0 * x.x()) * std::sin(4.0 * x.y()); };
    p.grad_u_exact = [](const Point& x) {
        return Point(4.0 * std::cos(4.0 * x.x()) * std::sin(4.0 * x.y()),
                     4.0 * std::sin(4.0 * x.x()) * std::cos(4.0 * x.y()));
    };
    p.f = [](const Point& x) {
        const double sx = std::sin(4.0 * x.x()), cx = std::cos(4.0 * x.x());
        const double sy = std::sin(4.0 * x.y()), cy = std::cos(4.0 * x.y());
        return 4.0 * cx * sy + 4.0 * sx * cy + sx * sy;
    };
    p.g = p.u_exact;
    p.sigma0 = 1.0;
    return p;
}

ProblemSpec example3()
{
    ProblemSpec p;
    p.name = "example3";
    p.beta = [](const Point& x) { return x; };
    p.div_beta = [](const Point&) { return 2.0; };
    p.alpha = [](const Point&) { return 1.0; };
    p.u_exact = [](const Point& x) {
        const double s = x.x() + x.y();
        return s * s * (s - 1.0) * (s - 1.0);
    };
    p.grad_u_exact = [](const Point& x) {
        const double s = x.x() + x.y();
        const double d = 2.0 * s * (s - 1.0) * (2.0 * s - 1.0);
        return Point(d, d);
    };
    // (x + y) du/ds + 3u with du/ds = 2 s (s - 1)(2 s - 1)
    p.f = [](const Point& x) {
        const double s = x.x() + x.y();
        const double d = 2.0 * s * (s - 1.0) * (2.0 * s - 1.0);
        return x.x() * d + x.y() * d + 3.0 * (s * s * (s - 1.0) * (s - 1.0));
    };
    p.g = p.u_exact;
    p.sigma0 = 2.0;
    return p;
}

ProblemSpec example4()
{
    ProblemSpec p;
    p.name = "example4";
    p.beta = [](const Point& x) { return Point(-x.y(), x.x()); };
    p.div_beta = [](const Point&) { return 0.0; };
    p.alpha = [](const Point&) { return 0.0; };
    p.f = [](const Point&) { return 0.0; };
    // Only the upper slit side is inflow on y = 0, so the value there is
    // never requested from the lower (outflow) side.
    p.g = [](const Point& x) {
        if (x.y() == 0.0 && x.x() >= 0.0 && x.x() <= 1.0) {
            const double s = std::sin(std::numbers::pi * x.x());
            return s * s;
        }
        return 0.0;
    };
    p.sigma0 = 0.0;
    p.domain = Rectangle{Point(-1.0, -1.0), Point(1.0, 1.0)};
    return p;
}

} // namespace

std::vector<ProblemSpec> builtin_problems() { return {example1(), example2(), example3(), example4()}; }

ProblemSpec builtin_problem(int id)
{
    switch (id) {
    case 1: return example1();
    case 2: return example2();
    case 3: return example3();
    case 4: return example4();
    default: throw std::invalid_argument("unknown problem id " + std::to_string(id) + " (expected 1..4)");
    }
}

ProblemCheck verify_problem(const ProblemSpec& problem, std::size_t samples_per_axis)
{
    ProblemCheck check;
    check.min_sigma = std::numeric_limits<double>::infinity();
    const Point lo = problem.domain.lower, hi = problem.domain.upper;
    const double n = static_cast<double>(std::max<std::size_t>(samples_per_axis, 2) - 1);
    for (std::size_t j = 0; j < samples_per_axis; ++j)
        for (std::size_t i = 0; i < samples_per_axis; ++i) {
            const Point x(lo.x() + (hi.x() - lo.x()) * static_cast<double>(i) / n,
                          lo.y() + (hi.y() - lo.y()) * static_cast<double>(j) / n);
            const double s = sigma(problem, x);
            check.min_sigma = std::min(check.min_sigma, s);
            if (s < problem.sigma0 - 1e-14 * std::max(1.0, std::abs(problem.sigma0)))
                throw SetupError(problem.name + ": sigma = " + std::to_string(s) + " below sigma0 = " +
                                 std::to_string(problem.sigma0));
            if (!problem.has_exact() || !problem.grad_u_exact)
                continue;
            const double u = problem.u_exact(x);
            const double transport = divergence(problem, x) * u + problem.beta(x).dot(problem.grad_u_exact(x));
            const double reaction = problem.alpha(x) * u;
            const double rhs = problem.f(x);
            const double scale = std::max({1.0, std::abs(transport), std::abs(reaction), std::abs(rhs)});
            const double rel = std::abs(rhs - transport - reaction) / scale;
            check.max_relative_residual = std::max(check.max_relative_residual, rel);
            if (rel > 1e-10)
                throw SetupError(problem.name + ": f does not match div(beta u) + alpha u at (" +
                                 std::to_string(x.x()) + ", " + std::to_string(x.y()) + ")");
        }
    return check;
}

} // namespace wg
