#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "support.hpp"
#include "wg/errors.hpp"
#include "wg/mesh_generators.hpp"
#include "wg/study.hpp"
#include "wg/wg_ops.hpp"

using namespace wg;

namespace {

std::string csv_of(const StudyConfig& c)
{
    std::ostringstream out;
    write_convergence_csv(out, run_convergence(c), c.with_energy_plus);
    return out.str();
}

std::vector<std::string> split_lines(const std::string& s)
{
    std::vector<std::string> lines;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        lines.push_back(l);
    return lines;
}

} // namespace

TEST_CASE("built-in problems")
{
    const auto all = builtin_problems();
    REQUIRE(all.size() == 4);
    const auto p1 = builtin_problem(1);
    // d/dx e^{xy} + 2 e^{xy} = (y + 2) e^{xy}
    CHECK(p1.f(Point(0, 0)) == doctest::Approx(2.0));
    CHECK(p1.f(Point(0.5, 0.3)) == doctest::Approx((0.3 + 2.0) * std::exp(0.15)).epsilon(1e-15));

    const auto p3 = builtin_problem(3);
    CHECK(divergence(p3, Point(0.2, 0.7)) == doctest::Approx(2.0));
    CHECK(sigma(p3, Point(0.2, 0.7)) == doctest::Approx(2.0));
    CHECK(p3.sigma0 == 2.0);

    const auto p4 = builtin_problem(4);
    CHECK_FALSE(p4.has_exact());
    CHECK(p4.g(Point(0.5, 0.0)) == doctest::Approx(1.0));
    CHECK(p4.g(Point(-0.5, 1.0)) == 0.0);
    CHECK(p4.f(Point(0.3, -0.2)) == 0.0);

    for (const auto& p : all) {
        const auto check = verify_problem(p);
        CHECK(check.max_relative_residual <= 1e-10);
        CHECK(check.min_sigma >= p.sigma0);
    }
    CHECK_THROWS(builtin_problem(5));
}

TEST_CASE("manufactured-solution self-check rejects bad data")
{
    auto broken = builtin_problem(2);
    broken.f = [](const Point& p) { return 1e-6 + std::sin(4 * p.x()); };
    CHECK_THROWS_AS(verify_problem(broken), SetupError);
    auto low = builtin_problem(1);
    low.sigma0 = 2.5;
    CHECK_THROWS_AS(verify_problem(low), SetupError);
    StudyConfig c;
    c.last_level = 3;
    CHECK_THROWS_AS(run_convergence(c, broken), SetupError);
}

TEST_CASE("study configuration validation")
{
    StudyConfig c;
    CHECK_NOTHROW(c.validate());
    c.degrees = {5};
    CHECK_THROWS_AS(c.validate(), SetupError);
    c.degrees = {};
    CHECK_THROWS_AS(c.validate(), SetupError);
    c = StudyConfig{};
    c.first_level = 4;
    c.last_level = 3;
    CHECK_THROWS_AS(c.validate(), SetupError);
    c = StudyConfig{};
    c.problem = 0;
    CHECK_THROWS_AS(c.validate(), SetupError);
    c = StudyConfig{};
    c.mesh = MeshFamily::slit;
    c.first_level = 0;
    CHECK_THROWS_AS(c.validate(), SetupError);
    c = StudyConfig{};
    c.problem = 4;
    CHECK_THROWS_AS(run_convergence(c), SetupError);

    CHECK(parse_mesh_family("poly") == MeshFamily::poly);
    CHECK_FALSE(parse_mesh_family("hex").has_value());
    CHECK(to_string(MeshFamily::slit) == "slit");
}

TEST_CASE("level meshes halve h")
{
    for (auto family : {MeshFamily::tri, MeshFamily::poly, MeshFamily::slit}) {
        const auto a = make_level_mesh(family, 2, 0);
        const auto b = make_level_mesh(family, 3, 0);
        CHECK(a.mesh_size() == doctest::Approx(2.0 * b.mesh_size()));
    }
    CHECK(make_level_mesh(MeshFamily::tri, 3, 0).num_elements() == 2 * 64);
}

TEST_CASE("single-level run has empty rates")
{
    StudyConfig c;
    c.first_level = c.last_level = 2;
    c.degrees = {1};
    const auto rows = run_convergence(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].errors.l2_interior > 0.0);
    CHECK_FALSE(rows[0].l2_rate.has_value());
    const auto lines = split_lines(csv_of(c));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "degree,level,l2_err,l2_rate,energy_err,energy_rate,recovery_err,recovery_rate");
    CHECK(lines[1].find(",,") != std::string::npos);
    CHECK(lines[1].back() == ',');
}

TEST_CASE("rows are ordered by degree then level and CSV is deterministic")
{
    StudyConfig c;
    c.problem = 2;
    c.mesh = MeshFamily::poly;
    c.degrees = {2, 1};
    c.first_level = 1;
    c.last_level = 3;
    c.seed = 12;
    c.with_energy_plus = true;
    const auto rows = run_convergence(c);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].degree == 2);
    CHECK(rows[2].level == 3);
    CHECK(rows[3].degree == 1);
    const auto a = csv_of(c);
    CHECK(a == csv_of(c));
    CHECK(split_lines(a)[0].ends_with(",energy_plus_err,energy_plus_rate"));
    auto other = c;
    other.seed = 13;
    CHECK(a != csv_of(other));

    std::ostringstream table;
    write_convergence_table(table, rows, true);
    CHECK(table.str().find("P_2 WG") != std::string::npos);
    CHECK(table.str().find("P_1 WG") != std::string::npos);
}

TEST_CASE("quadrature degree escalation changes errors by less than 1%")
{
    StudyConfig c;
    c.problem = 1;
    c.degrees = {2};
    c.first_level = 2;
    c.last_level = 5;
    const auto base = run_convergence(c);
    c.quad_degree = 2 * 2 + 5;
    const auto fine = run_convergence(c);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(std::abs(fine[i].errors.l2_interior - base[i].errors.l2_interior) < 0.01 * base[i].errors.l2_interior);
        CHECK(std::abs(fine[i].errors.energy - base[i].errors.energy) < 0.01 * base[i].errors.energy);
        CHECK(std::abs(fine[i].errors.recovery - base[i].errors.recovery) < 0.01 * base[i].errors.recovery);
    }
}

TEST_CASE("circular flow")
{
    StudyConfig c;
    c.problem = 4;
    c.mesh = MeshFamily::slit;
    c.degrees = {1};
    c.first_level = 1;
    c.last_level = 3;
    SUBCASE("zero inflow data")
    {
        auto p = builtin_problem(4);
        p.g = [](const Point&) { return 0.0; };
        c.quad_degree = 31;
        for (const auto& row : run_circular_flow(c, p)) {
            CHECK(row.outflow_distance == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-10));
            CHECK(row.inflow_trace_error == 0.0);
        }
    }
    SUBCASE("strong inflow imposition and samples")
    {
        const auto rows = run_circular_flow(c, builtin_problem(4), 9);
        REQUIRE(rows.size() == 3);
        for (const auto& row : rows) {
            CHECK(row.inflow_trace_error == 0.0);
            CHECK(row.samples.size() == 81);
        }
        std::ostringstream out;
        write_circular_flow_csv(out, rows);
        const auto lines = split_lines(out.str());
        CHECK(lines[0] == "degree,level,outflow_distance,inflow_trace_error");
        CHECK(lines.size() == 4);
    }
}

TEST_CASE("field sampling")
{
    const auto mesh = generate_slit_mesh(4);
    const auto problem = builtin_problem(4);
    const WgSpace space(mesh, problem.beta, 1);
    SUBCASE("constant field and points outside the box")
    {
        const auto c = project_qh(space, [](const Point&) { return 1.25; });
        const auto samples = sample_field(space, c, 5, Rectangle{Point(-1, -1), Point(3, 1)});
        std::size_t missing = 0;
        for (const auto& s : samples) {
            if (s.x.x() > 1.0 + 1e-12) {
                CHECK_FALSE(s.value.has_value());
                ++missing;
            } else {
                REQUIRE(s.value.has_value());
                CHECK(*s.value == doctest::Approx(1.25).epsilon(1e-14));
            }
        }
        CHECK(missing == 10);
        std::ostringstream out;
        write_samples_csv(out, samples);
        const auto lines = split_lines(out.str());
        CHECK(lines[0] == "x,y,value");
        CHECK(lines.size() == 26);
        CHECK(lines[5].back() == ',');
    }
    SUBCASE("slit points take the upper side")
    {
        // value 1 above the slit line, 0 below
        auto w = WeakFunction::zero(space);
        for (std::size_t k = 0; k < mesh.num_elements(); ++k)
            if (mesh.element(k).centroid.y() > 0.0)
                w.interior[k][0] = 1.0;
        const auto samples = sample_field(space, w, 5, problem.domain);
        for (const auto& s : samples)
            if (s.x.y() == 0.0 && s.x.x() > 0.0)
                CHECK(*s.value == 1.0);
    }
    SUBCASE("polynomial field is reproduced")
    {
        const ScalarField u = [](const Point& p) { return 1.0 + 2.0 * p.x() - p.y(); };
        const auto w = project_qh(space, u);
        for (const auto& s : sample_field(space, w, 13, problem.domain))
            CHECK(std::abs(*s.value - u(s.x)) <= 1e-10);
    }
}
