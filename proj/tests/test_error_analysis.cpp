#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wg/assembly.hpp"
#include "wg/error_analysis.hpp"
#include "wg/mesh_generators.hpp"
#include "wg/study.hpp"
#include "wg/wg_ops.hpp"

using namespace wg;
using wgtest::face_with_normal;
using wgtest::random_polynomial;
using wgtest::random_test_function;
using wgtest::unit_square_mesh;

TEST_CASE("L2 error")
{
    const auto square = unit_square_mesh();
    const WgSpace s2(square, [](const Point&) { return Point(1, 0); }, 2);
    const ScalarField x2 = [](const Point& p) { return p.x() * p.x(); };
    CHECK(l2_error(s2, x2, WeakFunction::zero(s2)) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(l2_error(s2, x2, project_qh(s2, x2)) <= 1e-12);
    CHECK(l2_norm(s2, [](const Point&) { return 3.0; }) == doctest::Approx(3.0));
}

TEST_CASE("energy norm by hand")
{
    const auto square = unit_square_mesh();
    ProblemSpec problem;
    problem.beta = [](const Point&) { return Point(1, 0); };
    problem.alpha = [](const Point&) { return 2.0; };
    problem.div_beta = [](const Point&) { return 0.0; };
    problem.sigma0 = 2.0;
    for (int degree = 0; degree <= 2; ++degree) {
        const WgSpace space(square, problem.beta, degree);
        auto v = WeakFunction::zero(space);
        CHECK(energy_norm(space, problem, v) == 0.0);
        v.interior[0][0] = 1.0;
        v.trace[face_with_normal(square, 0, Point(1, 0))][0] = 1.0;
        // sigma term 2, inflow jump 1/2, outflow boundary 1/2
        CHECK(energy_norm(space, problem, v) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    }
}

TEST_CASE("a(v, v) equals the squared energy norm")
{
    std::mt19937_64 rng(99);
    for (int id : {1, 2, 3}) {
        const auto problem = builtin_problem(id);
        const auto mesh = id == 1 ? generate_structured_triangles(8) : generate_noncompatible_quads(8, 0.5, 1);
        const WgSpace space(mesh, problem.beta, 2);
        const auto dofs = build_dofmap(space, problem);
        for (int trial = 0; trial < 5; ++trial) {
            const auto v = random_test_function(space, dofs, rng);
            const double a = bilinear_form(space, problem.alpha, v, v);
            const double n = energy_norm(space, problem, v);
            CHECK(std::abs(a - n * n) <= 1e-10 * n * n);
        }
    }
}

TEST_CASE("energy norm is a norm on sampled functions")
{
    std::mt19937_64 rng(7);
    const auto problem = builtin_problem(3);
    const auto mesh = generate_noncompatible_quads(4, 0.5, 2);
    const WgSpace space(mesh, problem.beta, 1);
    const auto dofs = build_dofmap(space, problem);
    for (int trial = 0; trial < 10; ++trial) {
        const auto v = random_test_function(space, dofs, rng);
        const auto w = random_test_function(space, dofs, rng);
        const double nv = energy_norm(space, problem, v);
        const double nw = energy_norm(space, problem, w);
        CHECK(nv > 0.0);
        CHECK(energy_norm(space, problem, v + w) <= (nv + nw) * (1.0 + 1e-14));
        CHECK(energy_norm(space, problem, -2.5 * v) == doctest::Approx(2.5 * nv).epsilon(1e-13));
    }
}

TEST_CASE("derivative recovery")
{
    SUBCASE("exact when the discrete solution is exact")
    {
        std::mt19937_64 rng(2);
        const auto u = random_polynomial(2, rng);
        const auto problem = wgtest::polynomial_problem(u, Point(1.0, 0.5), 1.5);
        const auto mesh = generate_noncompatible_quads(4, 0.5, 0);
        const WgSpace space(mesh, problem.beta, 2);
        const auto uh = solve_problem(space, problem);
        const auto r = recover_derivative(space, problem, uh);
        for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
            const Point x = mesh.element(k).centroid;
            CHECK(r(k, x) == doctest::Approx(problem.beta(x).dot(u.gradient(x))).epsilon(1e-10));
        }
        const auto report = error_report(space, problem, uh, true);
        CHECK(report.l2_interior <= 1e-10);
        CHECK(report.energy <= 1e-10);
        CHECK(report.recovery <= 1e-10);
        CHECK(*report.energy_plus <= 1e-10);
    }
    SUBCASE("pointwise error identity")
    {
        for (int id : {1, 2, 3}) {
            const auto problem = builtin_problem(id);
            const auto mesh = generate_noncompatible_quads(4, 0.5, 3);
            const WgSpace space(mesh, problem.beta, 1);
            const auto uh = solve_problem(space, problem);
            const auto r = recover_derivative(space, problem, uh);
            for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
                const auto& rule = space.element_rule(k);
                for (const auto& x : rule.nodes) {
                    const double dbu = problem.beta(x).dot(problem.grad_u_exact(x));
                    const double u0 = evaluate_interior(space, uh, k, x);
                    const double c = problem.alpha(x) + divergence(problem, x);
                    CHECK(std::abs((dbu - r(k, x)) + c * (problem.u_exact(x) - u0)) <= 1e-12 * (1.0 + std::abs(dbu)));
                }
            }
        }
    }
    SUBCASE("Example 1 ratio")
    {
        const auto problem = builtin_problem(1);
        const auto mesh = generate_structured_triangles(8);
        const WgSpace space(mesh, problem.beta, 1);
        const auto report = error_report(space, problem, solve_problem(space, problem));
        CHECK(report.recovery / report.l2_interior == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("energy error dominates the sigma-weighted interior error")
{
    for (int id : {1, 2, 3}) {
        const auto problem = builtin_problem(id);
        const auto mesh = generate_noncompatible_quads(8, 0.5, 4);
        const WgSpace space(mesh, problem.beta, 1);
        const auto uh = solve_problem(space, problem);
        const auto e = project_qh(space, problem.u_exact) - uh;
        auto interior_only = e;
        for (auto& t : interior_only.trace)
            t.setZero();
        double sq = 0.0;
        for (std::size_t k = 0; k < mesh.num_elements(); ++k)
            sq += e.interior[k].dot(mass_matrix(space, k) * e.interior[k]);
        CHECK(energy_norm(space, problem, e) >= std::sqrt(problem.sigma0) * std::sqrt(sq));
    }
}

TEST_CASE("stability bound for Example 2")
{
    const auto problem = builtin_problem(2);
    for (int level = 1; level <= 4; ++level) {
        const auto mesh = make_level_mesh(MeshFamily::poly, level, 0);
        const WgSpace space(mesh, problem.beta, 1);
        const auto uh = solve_problem(space, problem);
        CHECK(energy_norm(space, problem, uh) <= l2_norm(space, problem.f) / std::sqrt(problem.sigma0));
    }
}

TEST_CASE("consistency terms reproduce the error equation")
{
    // quad_degree 0 is the default rule; 13 integrates the exponential data
    // of Example 1 to roundoff, where the identity becomes exact.
    for (int id : {1, 3})
        for (int quad : {0, 13}) {
            std::mt19937_64 rng(5);
            const auto problem = builtin_problem(id);
            const auto mesh = id == 1 ? generate_structured_triangles(8) : generate_noncompatible_quads(8, 0.5, 2);
            const WgSpace space(mesh, problem.beta, 2, quad);
            const auto dofs = build_dofmap(space, problem);
            const auto uh = solve_problem(space, problem);
            const auto eh = project_qh(space, problem.u_exact) - uh;
            const double tol = (quad == 0 && id == 1) ? 1e-9 : 1e-12;
            for (int trial = 0; trial < 3; ++trial) {
                const auto v = random_test_function(space, dofs, rng);
                const auto t = consistency_terms(space, problem, v);
                const double lhs = bilinear_form(space, problem.alpha, eh, v);
                CHECK(std::abs(lhs - t.combined()) <= tol * energy_norm(space, problem, v));
            }
        }
}

TEST_CASE("stabilizer")
{
    std::mt19937_64 rng(1);
    const auto problem = builtin_problem(3);
    const auto mesh = generate_noncompatible_quads(4, 0.5, 2);
    const WgSpace space(mesh, problem.beta, 1);
    const auto dofs = build_dofmap(space, problem);
    const auto v = random_test_function(space, dofs, rng);
    const auto w = random_test_function(space, dofs, rng);
    CHECK(stabilizer(space, v, v) >= 0.0);
    CHECK(stabilizer(space, v, w) == doctest::Approx(stabilizer(space, w, v)).epsilon(1e-13));
    const auto c = project_qh(space, [](const Point&) { return 2.0; });
    CHECK(std::abs(stabilizer(space, c, v)) <= 1e-13);
}

TEST_CASE("convergence rates")
{
    const auto r = convergence_rates({1.0, 0.25, 0.0625});
    REQUIRE(r.size() == 3);
    CHECK_FALSE(r[0].has_value());
    CHECK(*r[1] == doctest::Approx(2.0));
    CHECK(*r[2] == doctest::Approx(2.0));
    CHECK(convergence_rates({}).empty());
}

TEST_CASE("errors decrease monotonically under refinement")
{
    for (int id : {1, 2, 3}) {
        StudyConfig c;
        c.problem = id;
        c.degrees = {1, 2};
        c.first_level = 2;
        c.last_level = 4;
        c.mesh = id == 1 ? MeshFamily::tri : MeshFamily::poly;
        c.with_energy_plus = true;
        const auto rows = run_convergence(c);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].degree != rows[i - 1].degree)
                continue;
            CHECK(rows[i].errors.l2_interior < rows[i - 1].errors.l2_interior);
            CHECK(rows[i].errors.energy < rows[i - 1].errors.energy);
            CHECK(rows[i].errors.recovery < rows[i - 1].errors.recovery);
            CHECK(*rows[i].errors.energy_plus < *rows[i - 1].errors.energy_plus);
        }
    }
}
