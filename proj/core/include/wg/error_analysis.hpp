#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wg/problem.hpp"
#include "wg/space.hpp"

namespace wg {

/// sqrt(sum_K |u - u_h^0|^2_{0,K}) with the space's element quadrature.
double l2_error(const WgSpace& space, const ScalarField& u, const WeakFunction& uh);

/// sqrt(sum_K |f|^2_{0,K})
double l2_norm(const WgSpace& space, const ScalarField& f);

/// Triple-bar norm
///   |||v|||^2 = (sigma v^0, v^0) + 1/2 <|beta.n| (v^0 - v^b), v^0 - v^b>_{dT_h}
///             + 1/2 <|beta.n| v^b, v^b>_{dOmega_+},
/// sigma = alpha + div(beta)/2, every |beta.n| and the outflow indicator
/// evaluated pointwise at quadrature nodes.
double energy_norm(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& v);

/// s(w, v) = <(beta.n)_+ (w^0 - w^b), v^0 - v^b>_{dT_h}
double stabilizer(const WgSpace& space, const WeakFunction& w, const WeakFunction& v);

/// Streamline derivative recovered element by element as
/// f - (alpha + div beta) u_h^0.
class RecoveredDerivative {
public:
    RecoveredDerivative(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& uh)
        : space_(&space), problem_(&problem), uh_(&uh) {}

    double operator()(std::size_t k, const Point& x) const;

private:
    const WgSpace* space_;
    const ProblemSpec* problem_;
    const WeakFunction* uh_;
};

/// The returned object references its arguments.
RecoveredDerivative recover_derivative(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& uh);

/// |beta.grad u - R_h| in L2; needs grad_u_exact.
double recovery_error(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& uh);

struct ErrorReport {
    double h = 0.0;
    double l2_interior = 0.0;           ///< |u - u_h^0|
    double energy = 0.0;                ///< |||Q_h u - u_h|||
    std::optional<double> energy_plus;  ///< |||Q_h^+ u - u_h|||
    double recovery = 0.0;              ///< |beta.grad u - R_h|
};

ErrorReport error_report(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& uh,
                         bool with_energy_plus = false);

/// Consistency terms of the error equation for the exact solution u and a
/// test function v in V_h^0:
///   l1 = (u - Q_0 u, beta.grad v^0)
///   l2 = <beta.n (u - Q_b u), v^0 - v^b>_{dT_h} + <beta.n (u - Q_b u), v^b>_{dOmega_+}
///   l3 = (alpha (Q_0 u - u), v^0)
///   s  = s(Q_h u, v)
struct ConsistencyTerms {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
    double stabilizer = 0.0;

    /// Right-hand side of a(Q_h u - u_h, v) = l1 - l2 + l3 + s(Q_h u, v).
    double combined() const { return l1 - l2 + l3 + stabilizer; }
};

ConsistencyTerms consistency_terms(const WgSpace& space, const ProblemSpec& problem, const WeakFunction& v);

/// log2(e_{i-1} / e_i) for consecutive entries; the first entry is empty.
std::vector<std::optional<double>> convergence_rates(const std::vector<double>& errors);

} // namespace wg
