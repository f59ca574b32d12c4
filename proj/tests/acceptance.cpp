// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "wg/assembly.hpp"
#include "wg/error_analysis.hpp"
#include "wg/mesh_generators.hpp"
#include "wg/quadrature.hpp"
#include "wg/study.hpp"
#include "wg/wg_ops.hpp"

using namespace wg;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_seconds, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    if (budget_seconds > 0.0 && secs >= budget_seconds) {
        pass = false;
        o.detail += "; over time budget";
    }
    failures += pass ? 0 : 1;
    std::printf("%s  [%2d] %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::vector<ConvergenceRow> study(int problem, MeshFamily mesh, std::vector<int> degrees, int first, int last)
{
    StudyConfig c;
    c.problem = problem;
    c.mesh = mesh;
    c.degrees = std::move(degrees);
    c.first_level = first;
    c.last_level = last;
    return run_convergence(c);
}

const ConvergenceRow& finest(const std::vector<ConvergenceRow>& rows, int degree)
{
    const ConvergenceRow* best = nullptr;
    for (const auto& r : rows)
        if (r.degree == degree && (!best || r.level > best->level))
            best = &r;
    return *best;
}

double trace_error(const WgSpace& space, const WeakFunction& uh, const ScalarField& u)
{
    double m = 0.0;
    for (std::size_t e = 0; e < space.mesh().num_interfaces(); ++e) {
        if (!space.is_live(e))
            continue;
        for (const auto& x : space.edge_rule(e).nodes)
            m = std::max(m, std::abs(evaluate_trace(space, uh, e, x) - u(x)));
    }
    return m;
}

// Least-squares slope of -log2(error) against level.
double fitted_slope(const std::vector<double>& errors)
{
    const double n = static_cast<double>(errors.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        const double x = static_cast<double>(i), y = -std::log2(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

int main()
{
    std::printf("wgtransport acceptance suite\n");

    run(1, "polynomial exactness, k = 0..3, tri and poly meshes", 5.0, [] {
        std::mt19937_64 rng(2024);
        double worst_l2 = 0.0, worst_trace = 0.0;
        for (const auto& mesh : {generate_structured_triangles(4), generate_noncompatible_quads(4, 0.5, 0)})
            for (int k = 0; k <= 3; ++k) {
                const auto u = wgtest::random_polynomial(k, rng);
                const auto problem = wgtest::polynomial_problem(u, Point(1, 1), 1.0);
                const WgSpace space(mesh, problem.beta, k);
                const auto uh = solve_problem(space, problem);
                worst_l2 = std::max(worst_l2, l2_error(space, u, uh));
                worst_trace = std::max(worst_trace, trace_error(space, uh, u));
            }
        return Outcome{worst_l2 <= 1e-10 && worst_trace <= 1e-9,
                       "max L2 " + fmt("%.2e", worst_l2) + " (<= 1e-10), max trace " + fmt("%.2e", worst_trace) +
                           " (<= 1e-9)"};
    });

    run(2, "norm identity a(v,v) = |||v|||^2, 20 random v per example", 5.0, [] {
        double worst = 0.0;
        for (int id : {1, 2, 3}) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(100 + id));
            const auto problem = builtin_problem(id);
            const auto mesh = make_level_mesh(id == 1 ? MeshFamily::tri : MeshFamily::poly, 3, 0);
            const WgSpace space(mesh, problem.beta, 2);
            const auto dofs = build_dofmap(space, problem);
            for (int i = 0; i < 20; ++i) {
                const auto v = wgtest::random_test_function(space, dofs, rng);
                const double a = bilinear_form(space, problem.alpha, v, v);
                const double n2 = std::pow(energy_norm(space, problem, v), 2);
                worst = std::max(worst, std::abs(a - n2) / n2);
            }
        }
        return Outcome{worst <= 1e-10, "max relative gap " + fmt("%.2e", worst) + " (<= 1e-10)"};
    });

    run(3, "stability |||u_h||| <= |f| / sqrt(sigma0), Examples 1-3, levels 3-5", 0.0, [] {
        double worst = 0.0;
        bool ok = true;
        for (int id : {1, 2, 3}) {
            const auto problem = builtin_problem(id);
            for (int k : {1, 2})
                for (int level = 3; level <= 5; ++level) {
                    const auto mesh = make_level_mesh(id == 1 ? MeshFamily::tri : MeshFamily::poly, level, 0);
                    const WgSpace space(mesh, problem.beta, k);
                    const auto uh = solve_problem(space, problem);
                    const double lhs = energy_norm(space, problem, uh);
                    const double rhs = l2_norm(space, problem.f) / std::sqrt(problem.sigma0);
                    ok = ok && lhs <= rhs;
                    worst = std::max(worst, lhs / rhs);
                }
        }
        return Outcome{ok, "max |||u_h||| / bound = " + fmt("%.4f", worst) + " (<= 1)"};
    });

    std::vector<ConvergenceRow> ex1, ex2_energy, ex2, ex3;

    run(4, "Example 1 L2 rates on triangles, k = 1, 2, 3", 120.0, [&] {
        ex1 = study(1, MeshFamily::tri, {1, 2, 3}, 3, 5);
        bool ok = true;
        std::string d;
        for (int k : {1, 2, 3}) {
            const double r = *finest(ex1, k).l2_rate;
            ok = ok && r >= k + 0.85 && r <= k + 1.2;
            d += "k=" + std::to_string(k) + ": " + fmt("%.3f", r) + " ";
        }
        return Outcome{ok, d + "(in [k+0.85, k+1.2], levels 4->5)"};
    });

    run(5, "energy rates, Examples 1 (tri) and 2 (poly), k = 1, 2", 120.0, [&] {
        ex2_energy = study(2, MeshFamily::poly, {1, 2}, 3, 5);
        bool ok = !ex1.empty();
        std::string d;
        for (int k : {1, 2}) {
            for (const auto* rows : {&ex1, &ex2_energy}) {
                if (rows->empty())
                    continue;
                const double r = *finest(*rows, k).energy_rate;
                ok = ok && r >= k + 0.35 && r <= k + 0.75;
                d += std::string(rows == &ex1 ? "Ex1" : "Ex2") + " k=" + std::to_string(k) + ": " + fmt("%.3f", r) +
                     " ";
            }
        }
        return Outcome{ok, d + "(in [k+0.35, k+0.75])"};
    });

    run(6, "L2 rates on non-compatible meshes, Examples 2 and 3, k = 1, 2", 0.0, [&] {
        ex2 = study(2, MeshFamily::poly, {1, 2}, 5, 6);
        ex3 = study(3, MeshFamily::poly, {1, 2}, 5, 6);
        bool ok = true;
        std::string d;
        for (const auto* rows : {&ex2, &ex3})
            for (int k : {1, 2}) {
                const double r = *finest(*rows, k).l2_rate;
                ok = ok && r >= k + 0.8;
                d += std::string(rows == &ex2 ? "Ex2" : "Ex3") + " k=" + std::to_string(k) + ": " + fmt("%.3f", r) +
                     " ";
            }
        return Outcome{ok, d + "(>= k+0.8, levels 5->6)"};
    });

    run(7, "recovery ratio identity 2, 1, 3", 0.0, [&] {
        double worst = 0.0;
        std::size_t rows = 0;
        auto check = [&](const std::vector<ConvergenceRow>& rs, double c) {
            for (const auto& r : rs) {
                worst = std::max(worst, std::abs(r.errors.recovery / r.errors.l2_interior - c) / c);
                ++rows;
            }
        };
        check(ex1, 2.0);
        check(ex2_energy, 1.0);
        check(ex2, 1.0);
        check(ex3, 3.0);
        return Outcome{rows > 0 && worst <= 1e-10,
                       std::to_string(rows) + " rows, max relative deviation " + fmt("%.2e", worst) + " (<= 1e-10)"};
    });

    run(8, "projection orders for exp(xy), k = 1, 2", 30.0, [] {
        const ScalarField u = [](const Point& p) { return std::exp(p.x() * p.y()); };
        const auto beta = builtin_problem(1).beta;
        bool ok = true;
        std::string d;
        for (int k : {1, 2}) {
            std::vector<double> q0_err, pp_err;
            for (int level = 2; level <= 6; ++level) {
                const auto mesh = make_level_mesh(MeshFamily::tri, level, 0);
                const WgSpace space(mesh, beta, k, 2 * k + 6);
                double q0 = 0.0, pp = 0.0;
                for (std::size_t el = 0; el < mesh.num_elements(); ++el) {
                    const auto& basis = space.element_basis(el);
                    const auto c0 = project_q0(space, el, u);
                    const auto cp = project_pplus(space, el, u);
                    const auto& rule = space.element_rule(el);
                    q0 += rule.integrate([&](const Point& x) { return std::pow(u(x) - basis.values(x).dot(c0), 2); });
                    const double interior = rule.integrate(
                        [&](const Point& x) { return std::pow(u(x) - basis.values(x).dot(cp), 2); });
                    double boundary = 0.0;
                    for (std::size_t e : mesh.element(el).interface_ids)
                        boundary += space.edge_rule(e).integrate(
                            [&](const Point& x) { return std::pow(u(x) - basis.values(x).dot(cp), 2); });
                    const double local = std::sqrt(interior) + std::sqrt(mesh.element(el).diameter * boundary);
                    pp += local * local;
                }
                q0_err.push_back(std::sqrt(q0));
                pp_err.push_back(std::sqrt(pp));
            }
            for (const auto* errs : {&q0_err, &pp_err}) {
                const double slope = fitted_slope(*errs);
                double lo = slope, hi = slope;
                for (const auto& r : convergence_rates(*errs))
                    if (r) {
                        lo = std::min(lo, *r);
                        hi = std::max(hi, *r);
                    }
                ok = ok && lo >= k + 1 - 0.15 && hi <= k + 1 + 0.15;
                d += std::string(errs == &q0_err ? "Q0" : "P+") + " k=" + std::to_string(k) + ": " +
                     fmt("%.3f", slope) + " [" + fmt("%.3f", lo) + "," + fmt("%.3f", hi) + "] ";
            }
        }
        return Outcome{ok, d + "(every rate within k+1 +- 0.15)"};
    });

    run(9, "circular flow outflow profile, P_2", 60.0, [] {
        StudyConfig c;
        c.problem = 4;
        c.mesh = MeshFamily::slit;
        c.degrees = {2};
        c.first_level = 1;
        c.last_level = 3;
        const auto rows = run_circular_flow(c, builtin_problem(4));
        bool monotone = true;
        std::string d;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0)
                monotone = monotone && rows[i].outflow_distance < rows[i - 1].outflow_distance;
            d += "L" + std::to_string(rows[i].level) + "=" + fmt("%.4f", rows[i].outflow_distance) + " ";
        }
        const double last = rows.back().outflow_distance;
        return Outcome{monotone && last <= 0.1, d + "(level 3 <= 0.1, decreasing)"};
    });

    run(10, "consistency residual, Example 1, level 3, k = 2", 10.0, [] {
        std::mt19937_64 rng(310);
        const auto problem = builtin_problem(1);
        const auto mesh = make_level_mesh(MeshFamily::tri, 3, 0);
        const WgSpace space(mesh, problem.beta, 2);
        const auto dofs = build_dofmap(space, problem);
        const auto uh = solve_problem(space, problem);
        const auto eh = project_qh(space, problem.u_exact) - uh;
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const auto v = wgtest::random_test_function(space, dofs, rng);
            const auto t = consistency_terms(space, problem, v);
            const double gap = std::abs(bilinear_form(space, problem.alpha, eh, v) - t.combined());
            worst = std::max(worst, gap / energy_norm(space, problem, v));
        }
        return Outcome{worst <= 1e-9, "max residual / |||v||| = " + fmt("%.2e", worst) + " (<= 1e-9)"};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
