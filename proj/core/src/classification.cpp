#include "wg/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wg/quadrature.hpp"

namespace wg {

std::string_view to_string(FlowClass c)
{
    switch (c) {
    case FlowClass::inflow: return "inflow";
    case FlowClass::outflow: return "outflow";
    case FlowClass::characteristic: return "characteristic";
    case FlowClass::mixed: return "mixed";
    }
    return "characteristic";
}

const FaceClass& FaceClassification::face(std::size_t k, std::size_t interface) const
{
    for (const auto& f : faces_[k])
        if (f.interface == interface)
            return f;
    throw std::out_of_range("FaceClassification: interface " + std::to_string(interface) +
                            " does not border element " + std::to_string(k));
}

FaceClassification classify_faces(const PolygonalMesh& mesh, const VectorField& beta, int node_degree)
{
    std::vector<std::vector<FaceClass>> faces(mesh.num_elements());
    for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
        const auto& el = mesh.element(k);
        faces[k].reserve(el.interface_ids.size());
        for (auto e : el.interface_ids) {
            const auto& f = mesh.interface(e);
            const Point n = f.outward_normal(k);
            const auto rule = edge_quadrature(f, node_degree);
            double max_beta = 0.0;
            std::vector<double> flux(rule.size());
            FaceClass fc;
            fc.interface = e;
            fc.min_abs_flux = std::numeric_limits<double>::infinity();
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Point b = beta(rule.nodes[q]);
                max_beta = std::max(max_beta, b.norm());
                flux[q] = b.dot(n);
                fc.min_abs_flux = std::min(fc.min_abs_flux, std::abs(flux[q]));
                fc.flux_integral += rule.weights[q] * std::abs(flux[q]);
            }
            const double eps = characteristic_tolerance * max_beta;
            const bool any_out = std::any_of(flux.begin(), flux.end(), [&](double v) { return v > eps; });
            const bool any_in = std::any_of(flux.begin(), flux.end(), [&](double v) { return v < -eps; });
            if (any_out && any_in)
                fc.flow = FlowClass::mixed;
            else if (any_out)
                fc.flow = FlowClass::outflow;
            else if (any_in)
                fc.flow = FlowClass::inflow;
            else
                fc.flow = FlowClass::characteristic;
            fc.in_eh0 = fc.min_abs_flux <= el.diameter;
            faces[k].push_back(fc);
        }
    }
    return FaceClassification(std::move(faces), node_degree);
}

FlowClass interface_flow(const PolygonalMesh& mesh, const FaceClassification& cls, std::size_t interface)
{
    return cls.face(mesh.interface(interface).left, interface).flow;
}

MeshConditionReport check_mesh_condition(const PolygonalMesh& mesh, const FaceClassification& cls)
{
    MeshConditionReport report;
    report.candidate_faces.assign(mesh.num_elements(), 0);
    for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
        for (const auto& f : cls.element_faces(k))
            if ((f.flow == FlowClass::outflow || f.flow == FlowClass::mixed) && !f.in_eh0)
                ++report.candidate_faces[k];
        if (report.candidate_faces[k] > 1) {
            report.satisfied = false;
            report.violating_elements.push_back(k);
        }
    }
    return report;
}

} // namespace wg
