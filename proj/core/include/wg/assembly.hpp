#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "wg/problem.hpp"
#include "wg/space.hpp"
#include "wg/wg_ops.hpp"

namespace wg {

enum class TraceStatus {
    free,        ///< unknown of the linear system
    constrained, ///< inflow boundary, fixed to Q_b g
    eliminated,  ///< characteristic interface, no DOFs
};

/// Global numbering of the free unknowns. All interior coefficients come
/// first (element by element), followed by the free trace coefficients in
/// interface order.
class DofMap {
public:
    std::size_t num_free() const { return num_free_; }
    std::size_t num_interior() const { return num_interior_; }

    std::size_t interior_index(std::size_t k, std::size_t i) const { return interior_start_[k] + i; }
    TraceStatus status(std::size_t e) const { return status_[e]; }
    std::size_t trace_start(std::size_t e) const { return trace_start_[e]; }
    const Eigen::VectorXd& prescribed(std::size_t e) const { return prescribed_[e]; }

    /// Global index of every local DOF of element k, -1 for constrained ones.
    std::vector<std::ptrdiff_t> local_indices(const WgSpace& space, std::size_t k) const;

    /// Prescribed values at constrained local DOFs, zero elsewhere.
    Eigen::VectorXd local_prescribed(const WgSpace& space, std::size_t k) const;

private:
    friend DofMap build_dofmap(const WgSpace& space, const ProblemSpec& problem);

    std::size_t num_free_ = 0;
    std::size_t num_interior_ = 0;
    std::vector<std::size_t> interior_start_;
    std::vector<TraceStatus> status_;
    std::vector<std::size_t> trace_start_;
    std::vector<Eigen::VectorXd> prescribed_;
};

/// Inflow boundary traces are fixed to Q_b g, characteristic interfaces are
/// dropped, everything else is free. Throws SetupError for a boundary
/// interface on which beta.n changes sign.
DofMap build_dofmap(const WgSpace& space, const ProblemSpec& problem);

struct SparseSystem {
    Eigen::SparseMatrix<double> matrix; ///< column-major, N_free x N_free
    Eigen::VectorXd rhs;
};

/// Rows are free test functions, columns free trial unknowns; prescribed
/// traces are lifted into the right-hand side.
SparseSystem assemble(const WgSpace& space, const ProblemSpec& problem, const DofMap& dofs);

/// Sparse LU. Guarantees |Ax - b|_inf <= 1e-12 (|A|_inf |x|_inf + |b|_inf),
/// throws SolverError otherwise or when A is singular.
Eigen::VectorXd solve(const SparseSystem& system);

/// Free unknowns plus prescribed values into a WeakFunction.
WeakFunction scatter(const WgSpace& space, const DofMap& dofs, const Eigen::VectorXd& x);

/// build_dofmap -> assemble -> solve -> scatter.
WeakFunction solve_problem(const WgSpace& space, const ProblemSpec& problem);

/// Global a(w, v) summed element by element.
double bilinear_form(const WgSpace& space, const ScalarField& alpha, const WeakFunction& w, const WeakFunction& v);

/// MatrixMarket coordinate (real general) dump.
void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& matrix);

} // namespace wg
