#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "wg/fields.hpp"
#include "wg/space.hpp"

namespace wg {

/// Gram matrix of the element basis, (phi_j, phi_i)_K.
Eigen::MatrixXd mass_matrix(const WgSpace& space, std::size_t k);

/// (w phi_j, phi_i)_K
Eigen::MatrixXd weighted_mass_matrix(const WgSpace& space, std::size_t k, const ScalarField& weight);

/// Right-hand side of the weak divergence definition over the local layout:
/// row i, interior column j:  -(phi_j, beta.grad phi_i)_K
/// row i, trace column (e,l): <beta.n_K psi_l, phi_i>_e   (live interfaces only)
Eigen::MatrixXd weak_divergence_load(const WgSpace& space, std::size_t k);

/// Local matrix of the weak divergence: maps local coefficients (LocalLayout
/// order) to P_k(K) coefficients of div_w(beta v). Equals M^{-1} times the load.
Eigen::MatrixXd weak_divergence_matrix(const WgSpace& space, std::size_t k);

Eigen::VectorXd weak_divergence(const WgSpace& space, std::size_t k, const Eigen::VectorXd& local);

/// L2 projection onto P_k(K).
Eigen::VectorXd project_q0(const WgSpace& space, std::size_t k, const ScalarField& u);

/// L2 projection onto P_k(e).
Eigen::VectorXd project_qb(const WgSpace& space, std::size_t e, const ScalarField& u);

/// {Q_0 u, Q_b u}; eliminated interfaces carry no trace.
WeakFunction project_qh(const WgSpace& space, const ScalarField& u);

/// Face used by P_h^+ on element k: the outflow (or mixed) face outside
/// E_h^0 with the largest flux integral of |beta.n|; if there is none, the
/// face with the largest flux integral overall. Ties go to the lowest id.
std::size_t select_pplus_face(const WgSpace& space, std::size_t k);

/// p in P_k(K) with (u - p, v)_K = 0 for v in P_{k-1}(K) and
/// <u - p, w>_e = 0 for w in P_k(e) on the selected face.
/// Throws SetupError when the local system is singular.
Eigen::VectorXd project_pplus(const WgSpace& space, std::size_t k, const ScalarField& u,
                              std::optional<std::size_t> face = std::nullopt);

/// {P_h^+ u, Q_b u}
WeakFunction project_qh_plus(const WgSpace& space, const ScalarField& u);

/// Dense local form over (interior + live traces) DOFs; entry (i, j) is
/// a_K(phi_j, phi_i), i.e. rows are test functions.
struct LocalOperator {
    std::size_t element = 0;
    LocalLayout layout;
    Eigen::MatrixXd matrix;
};

/// a_K(w, v) = (div_w(beta w), v^0)_K + (alpha w^0, v^0)_K
///           + <(beta.n)_+ (w^0 - w^b), v^0 - v^b>_{dK}
/// with (beta.n)_+ taken pointwise at the quadrature nodes.
LocalOperator local_bilinear(const WgSpace& space, std::size_t k, const ScalarField& alpha);

/// (f, phi_i)_K over the interior basis.
Eigen::VectorXd local_rhs(const WgSpace& space, std::size_t k, const ScalarField& f);

} // namespace wg
