#pragma once

#include <span>
#include <string>
#include <vector>

#include "wg/fields.hpp"
#include "wg/mesh_generators.hpp"

namespace wg {

/// Steady transport-reaction problem  div(beta u) + alpha u = f  in Omega,
/// u = g on the inflow boundary.
struct ProblemSpec {
    std::string name;
    VectorField beta;
    ScalarField alpha;
    ScalarField f;
    ScalarField g;
    ScalarField u_exact;      ///< empty when unknown
    VectorField grad_u_exact; ///< empty when unknown
    ScalarField div_beta;     ///< empty: central differences are used
    double sigma0 = 0.0;      ///< lower bound of alpha + div(beta)/2
    Rectangle domain;         ///< bounding box used for sampling checks

    bool has_exact() const { return static_cast<bool>(u_exact); }
};

/// div(beta) at p: analytic when available, otherwise central differences
/// with step 1e-6 * length_scale.
double divergence(const ProblemSpec& problem, const Point& p, double length_scale = 1.0);

/// sigma = alpha + div(beta) / 2
double sigma(const ProblemSpec& problem, const Point& p, double length_scale = 1.0);

/// Builds f = div(beta) u + beta.grad(u) + alpha u and g = u.
ProblemSpec manufactured_problem(std::string name, VectorField beta, ScalarField div_beta, ScalarField alpha,
                                 ScalarField u, VectorField grad_u, double sigma0,
                                 Rectangle domain = {});

/// Examples 1-4 (index 0-3); see builtin_problem.
std::vector<ProblemSpec> builtin_problems();

/// id 1: u = exp(xy),                    beta = (1, 0),  alpha = 2
/// id 2: u = sin 4x sin 4y,              beta = (1, 1),  alpha = 1
/// id 3: u = (x+y)^2 (x+y-1)^2,          beta = (x, y),  alpha = 1
/// id 4: circular flow beta = (-y, x), alpha = 0, f = 0 on the slit square,
///       g = sin^2(pi x) on the upper slit side and 0 elsewhere. No exact solution.
ProblemSpec builtin_problem(int id);

struct ProblemCheck {
    double max_relative_residual = 0.0; ///< |f - div(beta u) - alpha u| / scale
    double min_sigma = 0.0;
};

/// Manufactured-solution self-check on a sample grid of the bounding box:
/// f must match div(beta u) + alpha u within 1e-10 relative, and
/// sigma >= sigma0. Throws SetupError on violation.
ProblemCheck verify_problem(const ProblemSpec& problem, std::size_t samples_per_axis = 17);

} // namespace wg
