#include "wg/error_analysis.hpp"

#include <cmath>

#include "wg/errors.hpp"
#include "wg/parallel.hpp"
#include "wg/wg_ops.hpp"

namespace wg {

namespace {

// Sums per-element contributions in element order.
template <typename F>
double element_sum(const WgSpace& space, F&& term)
{
    const std::size_t ne = space.mesh().num_elements();
    std::vector<double> parts(ne);
    parallel_for(ne, [&](std::size_t k) { parts[k] = term(k); });
    double s = 0.0;
    for (double p : parts)
        s += p;
    return s;
}

} // namespace

double l2_error(const WgSpace& space, const ScalarField& u, const WeakFunction& uh)
{
    const double sq = element_sum(space, [&](std::size_t k) {
        const auto& basis = space.element_basis(k);
        return space.element_rule(k).integrate([&](const Point& x) {
            const double d = u(x) - basis.values(x).dot(uh.interior[k]);
            return d * d;
        });
    });
    return std::sqrt(sq);
}

double l2_norm(const WgSpace& space, const ScalarField& f)
{
    const double sq = element_sum(space, [&](std::size_t k) {
        return space.element_rule(k).integrate([&](const Point& x) { return f(x) * f(x); });
    });
    return std::sqrt(sq);
}

double energy_norm(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& v)
{
    const auto& mesh = space.mesh();
    const auto& beta = space.beta();
    const double sq = element_sum(space, [&](std::size_t k) {
        const auto& basis = space.element_basis(k);
        const double hk = mesh.element(k).diameter;
        double s = space.element_rule(k).integrate([&](const Point& x) {
            const double v0 = basis.values(x).dot(v.interior[k]);
            return sigma(problem, x, hk) * v0 * v0;
        });
        for (auto e : mesh.element(k).interface_ids) {
            const auto& f = mesh.interface(e);
            const Point n = f.outward_normal(k);
            const auto& rule = space.edge_rule(e);
            const bool live = space.is_live(e);
            const auto eb = space.edge_basis(e);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Point& x = rule.nodes[q];
                const double flux = beta(x).dot(n);
                const double v0 = basis.values(x).dot(v.interior[k]);
                const double vb = live ? eb.values(x).dot(v.trace[e]) : 0.0;
                s += 0.5 * rule.weights[q] * std::abs(flux) * (v0 - vb) * (v0 - vb);
                if (f.is_boundary() && flux > 0.0)
                    s += 0.5 * rule.weights[q] * flux * vb * vb;
            }
        }
        return s;
    });
    return std::sqrt(std::max(sq, 0.0));
}

double stabilizer(const WgSpace& space, const WeakFunction& w, const WeakFunction& v)
{
    const auto& mesh = space.mesh();
    return element_sum(space, [&](std::size_t k) {
        const auto& basis = space.element_basis(k);
        double s = 0.0;
        for (auto e : mesh.element(k).interface_ids) {
            const Point n = mesh.interface(e).outward_normal(k);
            const auto& rule = space.edge_rule(e);
            const bool live = space.is_live(e);
            const auto eb = space.edge_basis(e);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Point& x = rule.nodes[q];
                const double flux = space.beta()(x).dot(n);
                if (flux <= 0.0)
                    continue;
                const Eigen::VectorXd phi = basis.values(x);
                const Eigen::VectorXd psi = live ? eb.values(x) : Eigen::VectorXd();
                const double wj = phi.dot(w.interior[k]) - (live ? psi.dot(w.trace[e]) : 0.0);
                const double vj = phi.dot(v.interior[k]) - (live ? psi.dot(v.trace[e]) : 0.0);
                s += rule.weights[q] * flux * wj * vj;
            }
        }
        return s;
    });
}

double RecoveredDerivative::operator()(std::size_t k, const Point& x) const
{
    const double hk = space_->mesh().element(k).diameter;
    const double uh0 = evaluate_interior(*space_, *uh_, k, x);
    return problem_->f(x) - (problem_->alpha(x) + divergence(*problem_, x, hk)) * uh0;
}

RecoveredDerivative recover_derivative(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& uh)
{
    return RecoveredDerivative(space, problem, uh);
}

double recovery_error(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& uh)
{
    if (!problem.u_exact || !problem.grad_u_exact)
        throw SetupError(problem.name + ": recovery error needs the exact solution and gradient");
    const double sq = element_sum(space, [&](std::size_t k) {
        const auto& basis = space.element_basis(k);
        const double hk = space.mesh().element(k).diameter;
        return space.element_rule(k).integrate([&](const Point& x) {
            // dbeta(u) - (f - c uh0) = (dbeta(u) + c u - f) + c (uh0 - u)
            const double c = problem.alpha(x) + divergence(problem, x, hk);
            const double u = problem.u_exact(x);
            const double uh0 = basis.values(x).dot(uh.interior[k]);
            const double d = problem.beta(x).dot(problem.grad_u_exact(x)) + c * u - problem.f(x) + c * (uh0 - u);
            return d * d;
        });
    });
    return std::sqrt(sq);
}

ErrorReport error_report(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& uh,
                         bool with_energy_plus)
{
    if (!problem.has_exact())
        throw SetupError(problem.name + ": error report needs the exact solution");
    ErrorReport r;
    r.h = space.mesh().mesh_size();
    r.l2_interior = l2_error(space, problem.u_exact, uh);
    r.energy = energy_norm(space, problem, project_qh(space, problem.u_exact) - uh);
    if (with_energy_plus)
        r.energy_plus = energy_norm(space, problem, project_qh_plus(space, problem.u_exact) - uh);
    r.recovery = recovery_error(space, problem, uh);
    return r;
}

ConsistencyTerms consistency_terms(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& v)
{
    if (!problem.has_exact())
        throw SetupError(problem.name + ": consistency terms need the exact solution");
    const auto& mesh = space.mesh();
    const auto& u = problem.u_exact;
    const WeakFunction qh = project_qh(space, u);

    // Q_b u on every interface, including eliminated ones, for the l2 term.
    std::vector<Eigen::VectorXd> qb(mesh.num_interfaces());
    for (std::size_t e = 0; e < mesh.num_interfaces(); ++e)
        qb[e] = project_qb(space, e, u);

    ConsistencyTerms t;
    t.l1 = element_sum(space, [&](std::size_t k) {
        const auto& basis = space.element_basis(k);
        return space.element_rule(k).integrate([&](const Point& x) {
            const double q0u = basis.values(x).dot(qh.interior[k]);
            const double bgrad = (basis.gradients(x) * space.beta()(x)).dot(v.interior[k]);
            return (u(x) - q0u) * bgrad;
        });
    });
    t.l3 = element_sum(space, [&](std::size_t k) {
        const auto& basis = space.element_basis(k);
        return space.element_rule(k).integrate([&](const Point& x) {
            const Eigen::VectorXd phi = basis.values(x);
            return problem.alpha(x) * (phi.dot(qh.interior[k]) - u(x)) * phi.dot(v.interior[k]);
        });
    });
    t.l2 = element_sum(space, [&](std::size_t k) {
        const auto& basis = space.element_basis(k);
        double s = 0.0;
        for (auto e : mesh.element(k).interface_ids) {
            const auto& f = mesh.interface(e);
            const Point n = f.outward_normal(k);
            const auto& rule = space.edge_rule(e);
            const bool live = space.is_live(e);
            const auto eb = space.edge_basis(e);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Point& x = rule.nodes[q];
                const double flux = space.beta()(x).dot(n);
                const Eigen::VectorXd psi = eb.values(x);
                const double defect = u(x) - psi.dot(qb[e]);
                const double v0 = basis.values(x).dot(v.interior[k]);
                const double vb = live ? psi.dot(v.trace[e]) : 0.0;
                s += rule.weights[q] * flux * defect * (v0 - vb);
                if (f.is_boundary() && flux > 0.0)
                    s += rule.weights[q] * flux * defect * vb;
            }
        }
        return s;
    });
    t.stabilizer = stabilizer(space, qh, v);
    return t;
}

std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors)
{
    std::vector<std::optional<double>> rates(errors.size());
    for (std::size_t i = 1; i < errors.size(); ++i)
        if (errors[i] > 0.0 && errors[i - 1] > 0.0)
            rates[i] = std::log2(errors[i - 1] / errors[i]);
    return rates;
}

} // namespace wg
