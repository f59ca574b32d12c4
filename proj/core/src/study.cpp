#include "wg/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "wg/assembly.hpp"
#include "wg/errors.hpp"
#include "wg/mesh_generators.hpp"
#include "wg/wg_ops.hpp"

namespace wg {

std::string_view to_string(MeshFamily family)
{
    switch (family) {
    case MeshFamily::tri: return "tri";
    case MeshFamily::poly: return "poly";
    case MeshFamily::slit: return "slit";
    }
    return "tri";
}

std::optional<MeshFamily> parse_mesh_family(std::string_view text)
{
    if (text == "tri") return MeshFamily::tri;
    if (text == "poly") return MeshFamily::poly;
    if (text == "slit") return MeshFamily::slit;
    return std::nullopt;
}

void StudyConfig::validate() const
{
    if (problem < 1 || problem > 4)
        throw SetupError("problem must be one of 1..4");
    if (degrees.empty())
        throw SetupError("at least one degree is required");
    for (int k : degrees)
        if (k < 0 || k > 4)
            throw SetupError("degree " + std::to_string(k) + " outside 0..4");
    if (first_level < 0 || last_level < first_level)
        throw SetupError("levels must form an increasing range of non-negative integers");
    if (mesh == MeshFamily::slit && first_level < 1)
        throw SetupError("slit meshes need level >= 1");
    if (last_level > 12)
        throw SetupError("level above 12 is not supported");
    if (!(refine_fraction >= 0.0 && refine_fraction <= 1.0))
        throw SetupError("refine fraction must lie in [0, 1]");
}

PolygonalMesh make_level_mesh(MeshFamily family, int level, std::uint64_t seed, double refine_fraction)
{
    const std::size_t n = std::size_t{1} << level;
    switch (family) {
    case MeshFamily::tri: return generate_structured_triangles(n);
    case MeshFamily::poly:
        return generate_noncompatible_quads(std::max<std::size_t>(n, 2), refine_fraction,
                                            seed + static_cast<std::uint64_t>(level));
    case MeshFamily::slit: return generate_slit_mesh(std::max<std::size_t>(n, 2));
    }
    throw SetupError("unknown mesh family");
}

namespace {

std::string context(int degree, int level)
{
    return "degree " + std::to_string(degree) + ", level " + std::to_string(level) + ": ";
}

void put_number(std::ostream& out, double v, const char* fmt)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    out << buf;
}

void put_rate(std::ostream& out, const std::optional<double>& r, const char* fmt)
{
    if (r)
        put_number(out, *r, fmt);
}

} // namespace

std::vector<ConvergenceRow> run_convergence(const StudyConfig& config)
{
    return run_convergence(config, builtin_problem(config.problem));
}

std::vector<ConvergenceRow> run_convergence(const StudyConfig& config, const ProblemSpec& problem)
{
    config.validate();
    if (!problem.has_exact())
        throw SetupError(problem.name + ": convergence studies need an exact solution");
    verify_problem(problem);

    std::vector<ConvergenceRow> rows;
    for (int k : config.degrees) {
        const ConvergenceRow* prev = nullptr;
        for (int level = config.first_level; level <= config.last_level; ++level) {
            const auto mesh = make_level_mesh(config.mesh, level, config.seed, config.refine_fraction);
            ConvergenceRow row;
            row.degree = k;
            row.level = level;
            row.elements = mesh.num_elements();
            try {
                const WgSpace space(mesh, problem.beta, k, config.quad_degree);
                const auto dofs = build_dofmap(space, problem);
                row.unknowns = dofs.num_free();
                const auto system = assemble(space, problem, dofs);
                const auto uh = scatter(space, dofs, solve(system));
                row.errors = error_report(space, problem, uh, config.with_energy_plus);
            } catch (const SolverError& e) {
                throw SolverError(context(k, level) + e.what());
            } catch (const SetupError& e) {
                throw SetupError(context(k, level) + e.what());
            }
            if (prev) {
                auto rate = [](double coarse, double fine) -> std::optional<double> {
                    if (coarse > 0.0 && fine > 0.0)
                        return std::log2(coarse / fine);
                    return std::nullopt;
                };
                row.l2_rate = rate(prev->errors.l2_interior, row.errors.l2_interior);
                row.energy_rate = rate(prev->errors.energy, row.errors.energy);
                row.recovery_rate = rate(prev->errors.recovery, row.errors.recovery);
                if (prev->errors.energy_plus && row.errors.energy_plus)
                    row.energy_plus_rate = rate(*prev->errors.energy_plus, *row.errors.energy_plus);
            }
            rows.push_back(row);
            prev = &rows.back();
        }
    }
    return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows, bool with_energy_plus)
{
    out << "degree,level,l2_err,l2_rate,energy_err,energy_rate,recovery_err,recovery_rate";
    if (with_energy_plus)
        out << ",energy_plus_err,energy_plus_rate";
    out << '\n';
    for (const auto& r : rows) {
        out << r.degree << ',' << r.level << ',';
        put_number(out, r.errors.l2_interior, "%.10e");
        out << ',';
        put_rate(out, r.l2_rate, "%.4f");
        out << ',';
        put_number(out, r.errors.energy, "%.10e");
        out << ',';
        put_rate(out, r.energy_rate, "%.4f");
        out << ',';
        put_number(out, r.errors.recovery, "%.10e");
        out << ',';
        put_rate(out, r.recovery_rate, "%.4f");
        if (with_energy_plus) {
            out << ',';
            if (r.errors.energy_plus)
                put_number(out, *r.errors.energy_plus, "%.10e");
            out << ',';
            put_rate(out, r.energy_plus_rate, "%.4f");
        }
        out << '\n';
    }
}

void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows, bool with_energy_plus)
{
    int current = -1;
    char buf[256];
    auto rate_text = [](const std::optional<double>& r) {
        char b[16];
        if (r)
            std::snprintf(b, sizeof b, "%5.2f", *r);
        else
            std::snprintf(b, sizeof b, "%5s", "");
        return std::string(b);
    };
    for (const auto& r : rows) {
        if (r.degree != current) {
            current = r.degree;
            out << "P_" << current << " WG\n";
            std::snprintf(buf, sizeof buf, "%5s %11s %5s %11s %5s %11s %5s", "level", "|u-uh0|", "rate",
                          "|||Qu-uh|||", "rate", "|dbu-Rh|", "rate");
            out << buf;
            if (with_energy_plus) {
                std::snprintf(buf, sizeof buf, " %11s %5s", "|||Q+u-uh|||", "rate");
                out << buf;
            }
            out << '\n';
        }
        std::snprintf(buf, sizeof buf, "%5d %11.4e %s %11.4e %s %11.4e %s", r.level, r.errors.l2_interior,
                      rate_text(r.l2_rate).c_str(), r.errors.energy, rate_text(r.energy_rate).c_str(),
                      r.errors.recovery, rate_text(r.recovery_rate).c_str());
        out << buf;
        if (with_energy_plus && r.errors.energy_plus) {
            std::snprintf(buf, sizeof buf, " %11.4e %s", *r.errors.energy_plus, rate_text(r.energy_plus_rate).c_str());
            out << buf;
        }
        out << '\n';
    }
}

std::vector<FieldSample> sample_field(const WgSpace& space, const WeakFunction& uh, std::size_t resolution,
                                      const Rectangle& box)
{
    const auto& mesh = space.mesh();
    struct Box {
        Point lo, hi;
    };
    std::vector<Box> boxes(mesh.num_elements());
    std::vector<std::vector<Point>> polys(mesh.num_elements());
    for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
        polys[k] = mesh.polygon(k);
        Box b{polys[k][0], polys[k][0]};
        for (const auto& p : polys[k]) {
            b.lo = b.lo.cwiseMin(p);
            b.hi = b.hi.cwiseMax(p);
        }
        boxes[k] = b;
    }
    auto locate = [&](const Point& p) -> std::optional<std::size_t> {
        constexpr double tol = 1e-13;
        for (std::size_t k = 0; k < polys.size(); ++k) {
            const auto& b = boxes[k];
            if (p.x() < b.lo.x() - tol || p.x() > b.hi.x() + tol || p.y() < b.lo.y() - tol || p.y() > b.hi.y() + tol)
                continue;
            if (point_in_polygon(p, polys[k], tol))
                return k;
        }
        return std::nullopt;
    };

    std::vector<FieldSample> out;
    out.reserve(resolution * resolution);
    const double denom = resolution > 1 ? static_cast<double>(resolution - 1) : 1.0;
    for (std::size_t j = 0; j < resolution; ++j)
        for (std::size_t i = 0; i < resolution; ++i) {
            Point p = resolution > 1
                          ? Point(box.lower.x() + (box.upper.x() - box.lower.x()) * static_cast<double>(i) / denom,
                                  box.lower.y() + (box.upper.y() - box.lower.y()) * static_cast<double>(j) / denom)
                          : Point(0.5 * (box.lower + box.upper));
            auto k = locate(p + Point(0.0, 1e-12));
            if (!k)
                k = locate(p);
            FieldSample s{p, std::nullopt};
            if (k)
                s.value = evaluate_interior(space, uh, *k, p);
            out.push_back(s);
        }
    return out;
}

void write_samples_csv(std::ostream& out, const std::vector<FieldSample>& samples)
{
    out << "x,y,value\n";
    char buf[96];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.10e,%.10e,", s.x.x(), s.x.y());
        out << buf;
        if (s.value)
            put_number(out, *s.value, "%.10e");
        out << '\n';
    }
}

double outflow_profile_distance(const WgSpace& space, const WeakFunction& uh)
{
    const auto& mesh = space.mesh();
    double sq = 0.0;
    for (std::size_t e = 0; e < mesh.num_interfaces(); ++e) {
        if (mesh.interface(e).tag != BoundaryTag::bottom_slit)
            continue;
        const auto& rule = space.edge_rule(e);
        sq += rule.integrate([&](const Point& x) {
            const double s = std::sin(std::numbers::pi * x.x());
            const double d = evaluate_trace(space, uh, e, x) - s * s;
            return d * d;
        });
    }
    return std::sqrt(sq);
}

std::vector<CircularFlowRow> run_circular_flow(const StudyConfig& config, const ProblemSpec& problem,
                                               std::size_t sample_resolution)
{
    StudyConfig cfg = config;
    cfg.mesh = MeshFamily::slit;
    cfg.validate();
    verify_problem(problem);

    std::vector<CircularFlowRow> rows;
    for (int k : cfg.degrees)
        for (int level = cfg.first_level; level <= cfg.last_level; ++level) {
            const auto mesh = make_level_mesh(MeshFamily::slit, level, cfg.seed);
            CircularFlowRow row;
            row.degree = k;
            row.level = level;
            try {
                const WgSpace space(mesh, problem.beta, k, cfg.quad_degree);
                const auto dofs = build_dofmap(space, problem);
                const auto uh = scatter(space, dofs, solve(assemble(space, problem, dofs)));
                row.outflow_distance = outflow_profile_distance(space, uh);
                for (std::size_t e = 0; e < mesh.num_interfaces(); ++e)
                    if (mesh.interface(e).tag == BoundaryTag::top_slit && space.is_live(e))
                        row.inflow_trace_error = std::max(
                            row.inflow_trace_error,
                            (uh.trace[e] - project_qb(space, e, problem.g)).lpNorm<Eigen::Infinity>());
                if (sample_resolution > 0)
                    row.samples = sample_field(space, uh, sample_resolution, problem.domain);
            } catch (const SolverError& e) {
                throw SolverError(context(k, level) + e.what());
            } catch (const SetupError& e) {
                throw SetupError(context(k, level) + e.what());
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

void write_circular_flow_csv(std::ostream& out, const std::vector<CircularFlowRow>& rows)
{
    out << "degree,level,outflow_distance,inflow_trace_error\n";
    for (const auto& r : rows) {
        out << r.degree << ',' << r.level << ',';
        put_number(out, r.outflow_distance, "%.10e");
        out << ',';
        put_number(out, r.inflow_trace_error, "%.10e");
        out << '\n';
    }
}

} // namespace wg
