#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "wg/fields.hpp"
#include "wg/mesh.hpp"

namespace wg {

enum class FlowClass { inflow, outflow, characteristic, mixed };

std::string_view to_string(FlowClass c);

/// Label of one (element, interface) pair, measured with the element's
/// outward normal.
struct FaceClass {
    std::size_t interface = 0;
    FlowClass flow = FlowClass::characteristic;
    bool in_eh0 = false;       ///< min |beta.n| over the nodes <= h_K
    double min_abs_flux = 0.0; ///< min |beta.n| over the nodes
    double flux_integral = 0.0; ///< integral of |beta.n| over the interface
};

/// Flow labels for every (element, interface) pair. Sampling uses the
/// Gauss rule of the given degree on each interface; a pair is
/// characteristic when |beta.n| <= 1e-12 * max|beta| at every node.
class FaceClassification {
public:
    FaceClassification() = default;
    FaceClassification(std::vector<std::vector<FaceClass>> faces, int node_degree)
        : faces_(std::move(faces)), node_degree_(node_degree) {}

    /// Entries aligned with mesh.element(k).interface_ids.
    const std::vector<FaceClass>& element_faces(std::size_t k) const { return faces_[k]; }
    const FaceClass& face(std::size_t k, std::size_t interface) const;
    int node_degree() const { return node_degree_; }
    std::size_t num_elements() const { return faces_.size(); }

private:
    std::vector<std::vector<FaceClass>> faces_;
    int node_degree_ = 0;
};

/// Relative threshold defining characteristic samples.
inline constexpr double characteristic_tolerance = 1e-12;

FaceClassification classify_faces(const PolygonalMesh& mesh, const VectorField& beta, int node_degree = 4);

/// Classification of one interface seen from its left element.
FlowClass interface_flow(const PolygonalMesh& mesh, const FaceClassification& cls, std::size_t interface);

struct MeshConditionReport {
    bool satisfied = true;
    /// Per element: number of outflow or mixed faces outside E_h^0.
    std::vector<std::size_t> candidate_faces;
    std::vector<std::size_t> violating_elements;
};

/// Every element has at most one outflow (or mixed) face outside E_h^0.
MeshConditionReport check_mesh_condition(const PolygonalMesh& mesh, const FaceClassification& cls);

} // namespace wg
