#include "wg/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/SparseLU>

#include "wg/errors.hpp"
#include "wg/parallel.hpp"

namespace wg {

std::vector<std::ptrdiff_t> DofMap::local_indices(const WgSpace& space, std::size_t k) const
{
    const auto layout = space.layout(k);
    std::vector<std::ptrdiff_t> idx(layout.size, -1);
    for (std::size_t i = 0; i < layout.interior; ++i)
        idx[i] = static_cast<std::ptrdiff_t>(interior_index(k, i));
    for (const auto& [e, off] : layout.traces)
        if (status_[e] == TraceStatus::free)
            for (std::size_t l = 0; l < space.trace_size(); ++l)
                idx[off + l] = static_cast<std::ptrdiff_t>(trace_start_[e] + l);
    return idx;
}

Eigen::VectorXd DofMap::local_prescribed(const WgSpace& space, std::size_t k) const
{
    const auto layout = space.layout(k);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.size));
    for (const auto& [e, off] : layout.traces)
        if (status_[e] == TraceStatus::constrained)
            v.segment(static_cast<Eigen::Index>(off), static_cast<Eigen::Index>(space.trace_size())) = prescribed_[e];
    return v;
}

DofMap build_dofmap(const WgSpace& space, const ProblemSpec& problem)
{
    const auto& mesh = space.mesh();
    DofMap map;
    map.interior_start_.resize(mesh.num_elements());
    std::size_t next = 0;
    for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
        map.interior_start_[k] = next;
        next += space.interior_size();
    }
    map.num_interior_ = next;

    map.status_.resize(mesh.num_interfaces());
    map.trace_start_.assign(mesh.num_interfaces(), 0);
    map.prescribed_.resize(mesh.num_interfaces());
    for (std::size_t e = 0; e < mesh.num_interfaces(); ++e) {
        const auto& f = mesh.interface(e);
        if (!space.is_live(e)) {
            map.status_[e] = TraceStatus::eliminated;
            continue;
        }
        if (f.is_boundary()) {
            const auto flow = space.classification().face(f.left, e).flow;
            if (flow == FlowClass::mixed)
                throw SetupError("boundary interface " + std::to_string(e) + " from (" + std::to_string(f.p0.x()) +
                                 ", " + std::to_string(f.p0.y()) + ") to (" + std::to_string(f.p1.x()) + ", " +
                                 std::to_string(f.p1.y()) + ") has mixed inflow/outflow sign");
            if (flow == FlowClass::inflow) {
                map.status_[e] = TraceStatus::constrained;
                map.prescribed_[e] = project_qb(space, e, problem.g);
                continue;
            }
        }
        map.status_[e] = TraceStatus::free;
        map.trace_start_[e] = next;
        next += space.trace_size();
    }
    map.num_free_ = next;
    return map;
}

SparseSystem assemble(const WgSpace& space, const ProblemSpec& problem, const DofMap& dofs)
{
    const auto& mesh = space.mesh();
    const std::size_t ne = mesh.num_elements();
    std::vector<LocalOperator> ops(ne);
    std::vector<Eigen::VectorXd> loads(ne);
    parallel_for(ne, [&](std::size_t k) {
        ops[k] = local_bilinear(space, k, problem.alpha);
        loads[k] = local_rhs(space, k, problem.f);
    });

    SparseSystem sys;
    const auto n = static_cast<Eigen::Index>(dofs.num_free());
    sys.rhs = Eigen::VectorXd::Zero(n);
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t k = 0; k < ne; ++k) {
        const auto idx = dofs.local_indices(space, k);
        const auto lifted = dofs.local_prescribed(space, k);
        const auto& a = ops[k].matrix;
        const auto sz = static_cast<Eigen::Index>(idx.size());
        for (Eigen::Index r = 0; r < sz; ++r) {
            const auto gr = idx[static_cast<std::size_t>(r)];
            if (gr < 0)
                continue;
            for (Eigen::Index c = 0; c < sz; ++c) {
                const auto gc = idx[static_cast<std::size_t>(c)];
                if (gc >= 0)
                    triplets.emplace_back(static_cast<int>(gr), static_cast<int>(gc), a(r, c));
                else
                    sys.rhs[gr] -= a(r, c) * lifted[c];
            }
        }
        for (Eigen::Index i = 0; i < loads[k].size(); ++i)
            sys.rhs[idx[static_cast<std::size_t>(i)]] += loads[k][i];
    }
    sys.matrix.resize(n, n);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix.makeCompressed();
    return sys;
}

namespace {

double inf_norm(const Eigen::SparseMatrix<double>& a)
{
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
    for (Eigen::Index c = 0; c < a.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it)
            rows[it.row()] += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
}

} // namespace

Eigen::VectorXd solve(const SparseSystem& system)
{
    const auto& a = system.matrix;
    const auto& b = system.rhs;
    if (a.rows() == 0)
        return Eigen::VectorXd();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw SolverError("sparse LU factorization failed: " + lu.lastErrorMessage());
    Eigen::VectorXd x = lu.solve(b);
    if (lu.info() != Eigen::Success || !x.allFinite())
        throw SolverError("sparse LU solve failed");

    const double norm_a = inf_norm(a);
    auto bound = [&](const Eigen::VectorXd& v) {
        return 1e-12 * (norm_a * v.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>());
    };
    Eigen::VectorXd r = b - a * x;
    // A couple of refinement sweeps absorb pivot growth on poorly scaled rows.
    for (int sweep = 0; sweep < 2 && r.lpNorm<Eigen::Infinity>() > bound(x); ++sweep) {
        x += lu.solve(r);
        r = b - a * x;
    }
    if (r.lpNorm<Eigen::Infinity>() > bound(x))
        throw SolverError("residual " + std::to_string(r.lpNorm<Eigen::Infinity>()) +
                          " exceeds the solver tolerance (near-singular system)");
    return x;
}

WeakFunction scatter(const WgSpace& space, const DofMap& dofs, const Eigen::VectorXd& x)
{
    WeakFunction v = WeakFunction::zero(space);
    const auto m = static_cast<Eigen::Index>(space.interior_size());
    const auto nt = static_cast<Eigen::Index>(space.trace_size());
    for (std::size_t k = 0; k < space.mesh().num_elements(); ++k)
        v.interior[k] = x.segment(static_cast<Eigen::Index>(dofs.interior_index(k, 0)), m);
    for (std::size_t e = 0; e < space.mesh().num_interfaces(); ++e) {
        switch (dofs.status(e)) {
        case TraceStatus::free:
            v.trace[e] = x.segment(static_cast<Eigen::Index>(dofs.trace_start(e)), nt);
            break;
        case TraceStatus::constrained:
            v.trace[e] = dofs.prescribed(e);
            break;
        case TraceStatus::eliminated:
            break;
        }
    }
    return v;
}

WeakFunction solve_problem(const WgSpace& space, const ProblemSpec& problem)
{
    const auto dofs = build_dofmap(space, problem);
    const auto system = assemble(space, problem, dofs);
    return scatter(space, dofs, solve(system));
}

double bilinear_form(const WgSpace& space, const ScalarField& alpha, const WeakFunction& w, const WeakFunction& v)
{
    const std::size_t ne = space.mesh().num_elements();
    std::vector<double> parts(ne);
    parallel_for(ne, [&](std::size_t k) {
        const auto op = local_bilinear(space, k, alpha);
        parts[k] = v.local_vector(space, k).dot(op.matrix * w.local_vector(space, k));
    });
    double s = 0.0;
    for (double p : parts)
        s += p;
    return s;
}

void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& matrix)
{
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros() << '\n';
    char buf[96];
    for (Eigen::Index c = 0; c < matrix.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, c); it; ++it) {
            std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n", static_cast<long long>(it.row() + 1),
                          static_cast<long long>(it.col() + 1), it.value());
            out << buf;
        }
}

} // namespace wg
