#include <benchmark/benchmark.h>

#include "wg/assembly.hpp"
#include "wg/error_analysis.hpp"
#include "wg/quadrature.hpp"
#include "wg/study.hpp"

using namespace wg;

namespace {

MeshFamily family_for(int problem) { return problem == 1 ? MeshFamily::tri : MeshFamily::poly; }

// Args: problem, degree, level.
void BM_SpaceSetup(benchmark::State& state)
{
    const int problem = static_cast<int>(state.range(0));
    const auto spec = builtin_problem(problem);
    const auto mesh = make_level_mesh(family_for(problem), static_cast<int>(state.range(2)), 0);
    for (auto _ : state) {
        WgSpace space(mesh, spec.beta, static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(space);
    }
    state.counters["elements"] = static_cast<double>(mesh.num_elements());
}

void BM_Assemble(benchmark::State& state)
{
    const int problem = static_cast<int>(state.range(0));
    const auto spec = builtin_problem(problem);
    const auto mesh = make_level_mesh(family_for(problem), static_cast<int>(state.range(2)), 0);
    const WgSpace space(mesh, spec.beta, static_cast<int>(state.range(1)));
    const auto dofs = build_dofmap(space, spec);
    for (auto _ : state) {
        auto system = assemble(space, spec, dofs);
        benchmark::DoNotOptimize(system);
    }
    state.counters["dofs"] = static_cast<double>(dofs.num_free());
}

void BM_Solve(benchmark::State& state)
{
    const int problem = static_cast<int>(state.range(0));
    const auto spec = builtin_problem(problem);
    const auto mesh = make_level_mesh(family_for(problem), static_cast<int>(state.range(2)), 0);
    const WgSpace space(mesh, spec.beta, static_cast<int>(state.range(1)));
    const auto dofs = build_dofmap(space, spec);
    const auto system = assemble(space, spec, dofs);
    for (auto _ : state) {
        auto x = solve(system);
        benchmark::DoNotOptimize(x);
    }
    state.counters["nnz"] = static_cast<double>(system.matrix.nonZeros());
}

void BM_ErrorReport(benchmark::State& state)
{
    const int problem = static_cast<int>(state.range(0));
    const auto spec = builtin_problem(problem);
    const auto mesh = make_level_mesh(family_for(problem), static_cast<int>(state.range(2)), 0);
    const WgSpace space(mesh, spec.beta, static_cast<int>(state.range(1)));
    const auto uh = solve_problem(space, spec);
    for (auto _ : state)
        benchmark::DoNotOptimize(error_report(space, spec, uh));
}

void BM_PolygonQuadrature(benchmark::State& state)
{
    const auto mesh = make_level_mesh(MeshFamily::poly, 4, 0);
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state)
        for (std::size_t k = 0; k < mesh.num_elements(); ++k)
            benchmark::DoNotOptimize(polygon_quadrature(mesh, k, degree));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mesh.num_elements()));
}

void problem_grid(benchmark::internal::Benchmark* b)
{
    for (int problem : {1, 2})
        for (int k : {1, 2})
            for (int level : {4, 5})
                b->Args({problem, k, level});
}

} // namespace

BENCHMARK(BM_SpaceSetup)->Apply(problem_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->Apply(problem_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve)->Apply(problem_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErrorReport)->Apply(problem_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PolygonQuadrature)->DenseRange(3, 11, 4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
