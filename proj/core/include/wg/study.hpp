#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "wg/error_analysis.hpp"
#include "wg/mesh.hpp"
#include "wg/problem.hpp"
#include "wg/space.hpp"

namespace wg {

enum class MeshFamily { tri, poly, slit };

std::string_view to_string(MeshFamily family);
std::optional<MeshFamily> parse_mesh_family(std::string_view text);

struct StudyConfig {
    int problem = 1;
    std::vector<int> degrees{1};
    int first_level = 3;
    int last_level = 5;
    MeshFamily mesh = MeshFamily::tri;
    std::uint64_t seed = 0;
    int quad_degree = 0;          ///< <= 0: 2k + 3
    double refine_fraction = 0.5; ///< poly meshes only
    bool with_energy_plus = false;

    /// Throws SetupError: levels must be increasing and >= 0 (>= 1 for slit
    /// meshes), degrees within 0..4.
    void validate() const;
};

/// Level L uses n = 2^L subdivisions per axis. Poly meshes draw their
/// refinement pattern from seed + L.
PolygonalMesh make_level_mesh(MeshFamily family, int level, std::uint64_t seed, double refine_fraction = 0.5);

struct ConvergenceRow {
    int degree = 0;
    int level = 0;
    std::size_t elements = 0;
    std::size_t unknowns = 0;
    ErrorReport errors;
    std::optional<double> l2_rate;
    std::optional<double> energy_rate;
    std::optional<double> recovery_rate;
    std::optional<double> energy_plus_rate;
};

/// Solves the problem on every (degree, level) pair and tabulates errors and
/// consecutive-level rates. Runs verify_problem first. Solver failures are
/// rethrown as SolverError tagged with the degree and level.
std::vector<ConvergenceRow> run_convergence(const StudyConfig& config);
std::vector<ConvergenceRow> run_convergence(const StudyConfig& config, const ProblemSpec& problem);

/// degree,level,l2_err,l2_rate,energy_err,energy_rate,recovery_err,recovery_rate
/// (+ energy_plus_err,energy_plus_rate when requested).
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows, bool with_energy_plus = false);

/// Aligned text table, one block per degree.
void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows,
                             bool with_energy_plus = false);

struct FieldSample {
    Point x;
    std::optional<double> value; ///< empty outside the domain
};

/// u_h^0 on a uniform (resolution x resolution) grid over `box`. A point is
/// assigned to the first element (by id) containing it after an upward shift
/// of 1e-12, falling back to the unshifted point; this puts slit points on
/// the upper side.
std::vector<FieldSample> sample_field(const WgSpace& space, const WeakFunction& uh, std::size_t resolution,
                                      const Rectangle& box);

void write_samples_csv(std::ostream& out, const std::vector<FieldSample>& samples);

struct CircularFlowRow {
    int degree = 0;
    int level = 0;
    double outflow_distance = 0.0;   ///< |u_h^b - sin^2(pi x)|_{L2(0,1)} on the lower slit side
    double inflow_trace_error = 0.0; ///< max |u_h^b - Q_b g| coefficient on the upper slit side
    std::vector<FieldSample> samples;
};

/// L2 distance on [0,1] between the lower-slit trace of u_h and sin^2(pi x).
double outflow_profile_distance(const WgSpace& space, const WeakFunction& uh);

/// Circular-flow runs on slit meshes. sample_resolution = 0 skips sampling.
std::vector<CircularFlowRow> run_circular_flow(const StudyConfig& config, const ProblemSpec& problem,
                                               std::size_t sample_resolution = 0);

void write_circular_flow_csv(std::ostream& out, const std::vector<CircularFlowRow>& rows);

} // namespace wg
