#include "wg/space.hpp"

#include <stdexcept>

#include "wg/errors.hpp"

namespace wg {

WgSpace::WgSpace(const PolygonalMesh& mesh, VectorField beta, int degree, int quad_degree)
    : mesh_(&mesh), beta_(std::move(beta)), degree_(degree),
      quad_degree_(quad_degree > 0 ? quad_degree : 2 * degree + 3)
{
    if (degree < 0 || degree > 8)
        throw std::invalid_argument("WgSpace: degree must lie in [0, 8]");
    classification_ = classify_faces(mesh, beta_, 2 * degree + 2);

    element_rules_.reserve(mesh.num_elements());
    element_bases_.reserve(mesh.num_elements());
    for (std::size_t k = 0; k < mesh.num_elements(); ++k)
    {
        element_rules_.push_back(polygon_quadrature(mesh, k, quad_degree_));
        const auto& el = mesh.element(k);
        element_bases_.push_back(ElementBasis(degree, el.centroid, el.diameter).orthonormalized(element_rules_.back()));
    }
    edge_rules_.reserve(mesh.num_interfaces());
    live_.resize(mesh.num_interfaces());
    for (std::size_t e = 0; e < mesh.num_interfaces(); ++e) {
        const auto& f = mesh.interface(e);
        edge_rules_.push_back(edge_quadrature(f, quad_degree_));
        const bool char_left = classification_.face(f.left, e).flow == FlowClass::characteristic;
        bool char_right = char_left;
        if (f.right)
            char_right = classification_.face(*f.right, e).flow == FlowClass::characteristic;
        if (char_left != char_right)
            throw SetupError("interface " + std::to_string(e) + " is characteristic on one side only");
        live_[e] = !char_left;
    }
}

EdgeBasis WgSpace::edge_basis(std::size_t e) const
{
    const auto& f = mesh_->interface(e);
    return EdgeBasis(degree_, f.p0, f.p1);
}

LocalLayout WgSpace::layout(std::size_t k) const
{
    LocalLayout l;
    l.interior = interior_size();
    l.size = l.interior;
    for (auto e : mesh_->element(k).interface_ids)
        if (live_[e]) {
            l.traces.emplace_back(e, l.size);
            l.size += trace_size();
        }
    return l;
}

WeakFunction WeakFunction::zero(const WgSpace& space)
{
    WeakFunction v;
    v.interior.assign(space.mesh().num_elements(), Eigen::VectorXd::Zero(space.interior_size()));
    v.trace.resize(space.mesh().num_interfaces());
    for (std::size_t e = 0; e < v.trace.size(); ++e)
        v.trace[e] = space.is_live(e) ? Eigen::VectorXd::Zero(space.trace_size()) : Eigen::VectorXd();
    return v;
}

Eigen::VectorXd WeakFunction::local_vector(const WgSpace& space, std::size_t k) const
{
    const auto l = space.layout(k);
    Eigen::VectorXd x(l.size);
    x.head(l.interior) = interior[k];
    for (const auto& [e, off] : l.traces)
        x.segment(off, space.trace_size()) = trace[e];
    return x;
}

WeakFunction& WeakFunction::operator+=(const WeakFunction& other)
{
    for (std::size_t k = 0; k < interior.size(); ++k)
        interior[k] += other.interior[k];
    for (std::size_t e = 0; e < trace.size(); ++e)
        trace[e] += other.trace[e];
    return *this;
}

WeakFunction& WeakFunction::operator-=(const WeakFunction& other)
{
    for (std::size_t k = 0; k < interior.size(); ++k)
        interior[k] -= other.interior[k];
    for (std::size_t e = 0; e < trace.size(); ++e)
        trace[e] -= other.trace[e];
    return *this;
}

WeakFunction& WeakFunction::operator*=(double s)
{
    for (auto& c : interior)
        c *= s;
    for (auto& c : trace)
        c *= s;
    return *this;
}

double evaluate_interior(const WgSpace& space, const WeakFunction& v, std::size_t k, const Point& p)
{
    return space.element_basis(k).values(p).dot(v.interior[k]);
}

double evaluate_trace(const WgSpace& space, const WeakFunction& v, std::size_t e, const Point& p)
{
    if (!space.is_live(e))
        return 0.0;
    return space.edge_basis(e).values(p).dot(v.trace[e]);
}

} // namespace wg
