#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wg/assembly.hpp"
#include "wg/errors.hpp"
#include "wg/mesh_io.hpp"
#include "wg/study.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_validation = 2;
constexpr int exit_solver = 3;

std::vector<int> parse_degrees(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw wg::SetupError("bad degree list '" + text + "'");
        }
        if (used != item.size())
            throw wg::SetupError("bad degree list '" + text + "'");
        out.push_back(k);
    }
    if (out.empty())
        throw wg::SetupError("empty degree list");
    return out;
}

std::pair<int, int> parse_levels(const std::string& text)
{
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const int l = std::stoi(text, &used);
            if (used != text.size())
                throw wg::SetupError("");
            return {l, l};
        }
        const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        const int lo = std::stoi(a, &used);
        if (used != a.size())
            throw wg::SetupError("");
        const int hi = std::stoi(b, &used);
        if (used != b.size())
            throw wg::SetupError("");
        return {lo, hi};
    } catch (const std::exception&) {
        throw wg::SetupError("bad level range '" + text + "' (expected L or A..B)");
    }
}

wg::MeshFamily default_family(int problem)
{
    switch (problem) {
    case 1: return wg::MeshFamily::tri;
    case 4: return wg::MeshFamily::slit;
    default: return wg::MeshFamily::poly;
    }
}

fs::path sibling(const fs::path& out, const std::string& suffix)
{
    fs::path p = out;
    p.replace_filename(out.stem().string() + suffix);
    return p;
}

std::ofstream open_output(const fs::path& path)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f)
        throw wg::SetupError("cannot open '" + path.string() + "' for writing");
    return f;
}

struct StudyArgs {
    int problem = 1;
    std::string degrees = "1";
    std::string levels = "3..5";
    std::string mesh;
    std::uint64_t seed = 0;
    int quad_degree = 0;
    double refine_fraction = 0.5;
    std::string out;
    std::string dump_matrix;
    std::size_t sample_grid = 0;
    bool energy_plus = false;
    bool quiet = false;
};

wg::StudyConfig make_config(const StudyArgs& a)
{
    wg::StudyConfig c;
    c.problem = a.problem;
    c.degrees = parse_degrees(a.degrees);
    std::tie(c.first_level, c.last_level) = parse_levels(a.levels);
    c.mesh = default_family(a.problem);
    if (!a.mesh.empty()) {
        auto family = wg::parse_mesh_family(a.mesh);
        if (!family)
            throw wg::SetupError("unknown mesh family '" + a.mesh + "'");
        c.mesh = *family;
    }
    if (a.problem == 4 && c.mesh != wg::MeshFamily::slit)
        throw wg::SetupError("problem 4 runs on the slit mesh only");
    c.seed = a.seed;
    c.quad_degree = a.quad_degree;
    c.refine_fraction = a.refine_fraction;
    c.with_energy_plus = a.energy_plus;
    c.validate();
    return c;
}

void dump_matrix(const wg::StudyConfig& c, const wg::ProblemSpec& problem, const fs::path& path)
{
    const auto mesh = wg::make_level_mesh(c.mesh, c.last_level, c.seed, c.refine_fraction);
    const wg::WgSpace space(mesh, problem.beta, c.degrees.back(), c.quad_degree);
    const auto dofs = wg::build_dofmap(space, problem);
    const auto system = wg::assemble(space, problem, dofs);
    auto f = open_output(path);
    wg::write_matrix_market(f, system.matrix);
}

void write_sample_file(const fs::path& path, const std::vector<wg::FieldSample>& samples)
{
    auto f = open_output(path);
    wg::write_samples_csv(f, samples);
}

void sample_convergence(const wg::StudyConfig& c, const wg::ProblemSpec& problem, std::size_t resolution,
                        const fs::path& out)
{
    const auto mesh = wg::make_level_mesh(c.mesh, c.last_level, c.seed, c.refine_fraction);
    for (int k : c.degrees) {
        const wg::WgSpace space(mesh, problem.beta, k, c.quad_degree);
        const auto uh = wg::solve_problem(space, problem);
        write_sample_file(sibling(out, "_k" + std::to_string(k) + "_samples.csv"),
                          wg::sample_field(space, uh, resolution, problem.domain));
    }
}

int run_study(const StudyArgs& a)
{
    const auto config = make_config(a);
    const auto problem = wg::builtin_problem(config.problem);
    std::ostream* csv = &std::cout;
    std::ofstream file;
    if (!a.out.empty()) {
        file = open_output(a.out);
        csv = &file;
    }

    if (config.problem == 4) {
        const auto rows = wg::run_circular_flow(config, problem, a.sample_grid);
        wg::write_circular_flow_csv(*csv, rows);
        if (!a.quiet && !a.out.empty()) {
            for (const auto& r : rows)
                std::printf("P_%d level %d  outflow distance %.6e  inflow trace error %.3e\n", r.degree, r.level,
                            r.outflow_distance, r.inflow_trace_error);
        }
        if (a.sample_grid > 0) {
            const fs::path base = a.out.empty() ? fs::path("circular_flow.csv") : fs::path(a.out);
            for (const auto& r : rows)
                if (r.level == config.last_level)
                    write_sample_file(sibling(base, "_k" + std::to_string(r.degree) + "_samples.csv"), r.samples);
        }
    } else {
        const auto rows = wg::run_convergence(config, problem);
        wg::write_convergence_csv(*csv, rows, config.with_energy_plus);
        if (!a.quiet && !a.out.empty())
            wg::write_convergence_table(std::cout, rows, config.with_energy_plus);
        if (a.sample_grid > 0)
            sample_convergence(config, problem, a.sample_grid,
                               a.out.empty() ? fs::path("study.csv") : fs::path(a.out));
    }
    if (!a.dump_matrix.empty())
        dump_matrix(config, problem, a.dump_matrix);
    return 0;
}

struct MeshArgs {
    std::string family = "tri";
    int level = 3;
    std::uint64_t seed = 0;
    double refine_fraction = 0.5;
    std::string out;
};

int run_mesh(const MeshArgs& a)
{
    auto family = wg::parse_mesh_family(a.family);
    if (!family)
        throw wg::SetupError("unknown mesh family '" + a.family + "'");
    if (a.level < 0 || a.level > 12)
        throw wg::SetupError("level must lie in 0..12");
    const auto mesh = wg::make_level_mesh(*family, a.level, a.seed, a.refine_fraction);
    if (a.out.empty())
        wg::write_mesh(std::cout, mesh);
    else {
        auto f = open_output(a.out);
        wg::write_mesh(f, mesh);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weak Galerkin solver for steady transport-reaction problems"};
    app.require_subcommand(1);

    StudyArgs study;
    auto* s = app.add_subcommand("study", "Run a convergence study or the circular-flow example");
    s->add_option("--problem", study.problem, "Built-in problem 1..4")->check(CLI::Range(1, 4));
    s->add_option("--degrees", study.degrees, "Comma-separated polynomial degrees");
    s->add_option("--levels", study.levels, "Level range A..B (n = 2^L)");
    s->add_option("--mesh", study.mesh, "Mesh family: tri, poly or slit");
    s->add_option("--seed", study.seed, "Seed for poly meshes");
    s->add_option("--quad-degree", study.quad_degree, "Quadrature degree override (default 2k+3)");
    s->add_option("--refine-fraction", study.refine_fraction, "Split probability for poly meshes");
    s->add_option("--out", study.out, "CSV output path (stdout if omitted)");
    s->add_option("--dump-matrix", study.dump_matrix, "Write the finest system matrix in Matrix Market format");
    s->add_option("--sample-grid", study.sample_grid, "Sample u_h on an N x N grid");
    s->add_flag("--energy-plus", study.energy_plus, "Also report the error against the P_h^+ projection");
    s->add_flag("-q,--quiet", study.quiet, "Suppress the text table");

    MeshArgs mesh;
    auto* m = app.add_subcommand("mesh", "Generate a mesh and write it in wgmesh format");
    m->add_option("--family", mesh.family, "tri, poly or slit");
    m->add_option("--level", mesh.level, "Level (n = 2^L)");
    m->add_option("--seed", mesh.seed, "Seed for poly meshes");
    m->add_option("--refine-fraction", mesh.refine_fraction, "Split probability for poly meshes");
    m->add_option("--out", mesh.out, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    }

    try {
        if (*s)
            return run_study(study);
        return run_mesh(mesh);
    } catch (const wg::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return exit_solver;
    } catch (const wg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_solver;
    }
}
