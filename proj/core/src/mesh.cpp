#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "wg/errors.hpp"

namespace wg {

std::string_view to_string(BoundaryTag tag)
{
    switch (tag) {
    case BoundaryTag::interior: return "interior";
    case BoundaryTag::boundary: return "boundary";
    case BoundaryTag::top_slit: return "top-slit";
    case BoundaryTag::bottom_slit: return "bottom-slit";
    }
    return "interior";
}

std::optional<BoundaryTag> parse_boundary_tag(std::string_view text)
{
    if (text == "interior") return BoundaryTag::interior;
    if (text == "boundary") return BoundaryTag::boundary;
    if (text == "top-slit") return BoundaryTag::top_slit;
    if (text == "bottom-slit") return BoundaryTag::bottom_slit;
    return std::nullopt;
}

namespace {

// Arclength coordinate of a boundary point along the polygon, measured from
// vertex 0 in counterclockwise order. Returns nullopt when p is off the boundary.
std::optional<double> boundary_coordinate(std::span<const Point> poly, const Point& p, double tol)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        if (segment_distance(p, a, b) <= tol)
            return acc + (p - a).norm();
        acc += (b - a).norm();
    }
    return std::nullopt;
}

double wrap(double s, double period)
{
    s = std::fmod(s, period);
    return s < 0 ? s + period : s;
}

std::string elem_name(std::size_t k) { return "element " + std::to_string(k); }
std::string iface_name(std::size_t e) { return "interface " + std::to_string(e); }

} // namespace

PolygonalMesh::PolygonalMesh(std::vector<Point> vertices,
                             std::vector<std::vector<std::size_t>> element_vertices,
                             std::vector<InterfaceSpec> interfaces,
                             MeshOptions options)
    : vertices_(std::move(vertices))
{
    elements_.resize(element_vertices.size());
    for (std::size_t k = 0; k < element_vertices.size(); ++k)
        elements_[k].vertex_ids = std::move(element_vertices[k]);
    interfaces_.resize(interfaces.size());
    for (std::size_t e = 0; e < interfaces.size(); ++e) {
        auto& f = interfaces_[e];
        f.v0 = interfaces[e].v0;
        f.v1 = interfaces[e].v1;
        f.left = interfaces[e].left;
        f.right = interfaces[e].right;
        f.tag = interfaces[e].tag;
    }
    build(options);
}

std::vector<Point> PolygonalMesh::polygon(std::size_t k) const
{
    std::vector<Point> poly;
    poly.reserve(elements_[k].vertex_ids.size());
    for (auto v : elements_[k].vertex_ids)
        poly.push_back(vertices_[v]);
    return poly;
}

double PolygonalMesh::mesh_size() const
{
    double h = 0.0;
    for (const auto& el : elements_)
        h = std::max(h, el.diameter);
    return h;
}

double PolygonalMesh::total_area() const
{
    double a = 0.0;
    for (const auto& el : elements_)
        a += el.area;
    return a;
}

std::vector<InterfaceSpec> PolygonalMesh::interface_specs() const
{
    std::vector<InterfaceSpec> specs;
    specs.reserve(interfaces_.size());
    for (const auto& f : interfaces_)
        specs.push_back({f.v0, f.v1, f.left, f.right, f.tag});
    return specs;
}

bool operator==(const PolygonalMesh& a, const PolygonalMesh& b)
{
    if (a.vertices_ != b.vertices_ || a.elements_.size() != b.elements_.size())
        return false;
    for (std::size_t k = 0; k < a.elements_.size(); ++k)
        if (a.elements_[k].vertex_ids != b.elements_[k].vertex_ids)
            return false;
    return a.interface_specs() == b.interface_specs();
}

void PolygonalMesh::build(MeshOptions options)
{
    const std::size_t nv = vertices_.size();
    const std::size_t ne = elements_.size();

    for (std::size_t k = 0; k < ne; ++k) {
        auto& el = elements_[k];
        if (el.vertex_ids.size() < 3)
            throw MeshError(elem_name(k) + " has fewer than 3 vertices");
        for (auto v : el.vertex_ids)
            if (v >= nv)
                throw MeshError(elem_name(k) + " references missing vertex " + std::to_string(v));
        auto poly = polygon(k);
        if (!is_simple_polygon(poly))
            throw MeshError(elem_name(k) + " is not a simple polygon");
        double area = signed_area(poly);
        if (area == 0.0 || std::abs(area) <= 1e-14 * std::pow(diameter(poly), 2))
            throw MeshError(elem_name(k) + " has zero area");
        if (area < 0) {
            if (options.strict_orientation)
                throw MeshError(elem_name(k) + " is clockwise");
            std::reverse(el.vertex_ids.begin(), el.vertex_ids.end());
            poly = polygon(k);
            area = -area;
        }
        el.area = area;
        el.centroid = area_centroid(poly);
        el.diameter = diameter(poly);
        el.interface_ids.clear();
    }

    // Per element: (start coordinate, interface id) for boundary ordering.
    std::vector<std::vector<std::pair<double, std::size_t>>> pieces(ne);
    std::vector<double> perimeters(ne);
    std::vector<std::vector<Point>> polys(ne);
    for (std::size_t k = 0; k < ne; ++k) {
        polys[k] = polygon(k);
        perimeters[k] = perimeter(polys[k]);
    }

    for (std::size_t e = 0; e < interfaces_.size(); ++e) {
        auto& f = interfaces_[e];
        if (f.v0 >= nv || f.v1 >= nv)
            throw MeshError(iface_name(e) + " references a missing vertex");
        if (f.left >= ne)
            throw MeshError(iface_name(e) + " has no valid left element");
        if (f.right && (*f.right >= ne || *f.right == f.left))
            throw MeshError(iface_name(e) + " has an invalid right element");
        if (f.right.has_value() != (f.tag == BoundaryTag::interior))
            throw MeshError(iface_name(e) + " tag '" + std::string(to_string(f.tag)) +
                            "' disagrees with its element count");
        f.p0 = vertices_[f.v0];
        f.p1 = vertices_[f.v1];
        f.length = (f.p1 - f.p0).norm();
        if (!(f.length > 0.0))
            throw MeshError(iface_name(e) + " has zero length");

        // The segment runs counterclockwise along the left element's boundary:
        // the boundary path from p0 to p1 must be as long as the chord.
        auto runs_ccw = [&](std::size_t k, const Point& a, const Point& b) -> std::optional<double> {
            const double tol = 1e-10 * elements_[k].diameter;
            auto sa = boundary_coordinate(polys[k], a, tol);
            auto sb = boundary_coordinate(polys[k], b, tol);
            if (!sa || !sb)
                return std::nullopt;
            const double along = wrap(*sb - *sa, perimeters[k]);
            if (std::abs(along - (b - a).norm()) > 1e-9 * perimeters[k])
                return std::nullopt;
            const Point mid = 0.5 * (a + b);
            if (!boundary_coordinate(polys[k], mid, tol))
                return std::nullopt;
            return wrap(*sa, perimeters[k]);
        };

        auto start_left = runs_ccw(f.left, f.p0, f.p1);
        if (!start_left && !options.strict_orientation) {
            std::swap(f.v0, f.v1);
            std::swap(f.p0, f.p1);
            start_left = runs_ccw(f.left, f.p0, f.p1);
        }
        if (!start_left)
            throw MeshError(iface_name(e) + " does not lie counterclockwise on the boundary of its left element");
        pieces[f.left].emplace_back(*start_left, e);
        if (f.right) {
            auto start_right = runs_ccw(*f.right, f.p1, f.p0);
            if (!start_right)
                throw MeshError(iface_name(e) + " does not lie on the boundary of its right element");
            pieces[*f.right].emplace_back(*start_right, e);
        }

        const Point t = (f.p1 - f.p0) / f.length;
        f.normal = Point(t.y(), -t.x());
    }

    // Tiling: the interfaces of each element cover its boundary exactly once.
    for (std::size_t k = 0; k < ne; ++k) {
        auto& list = pieces[k];
        if (list.empty())
            throw MeshError(elem_name(k) + " has no interfaces");
        std::sort(list.begin(), list.end());
        const double tol = 1e-9 * perimeters[k];
        double covered = 0.0;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& f = interfaces_[list[i].second];
            covered += f.length;
            const double end = list[i].first + f.length;
            const double next = (i + 1 < list.size()) ? list[i + 1].first : list[0].first + perimeters[k];
            if (std::abs(next - end) > tol)
                throw MeshError(elem_name(k) + " boundary is not tiled by its interfaces (gap or overlap near " +
                                iface_name(list[i].second) + ")");
        }
        if (std::abs(covered - perimeters[k]) > 1e-12 * perimeters[k] + 1e-15)
            throw MeshError(elem_name(k) + " interface lengths do not sum to its perimeter");
        auto& ids = elements_[k].interface_ids;
        ids.reserve(list.size());
        for (const auto& [s, e] : list)
            ids.push_back(e);
    }
}

std::vector<InterfaceSpec> match_interfaces(const std::vector<std::vector<std::size_t>>& element_vertices,
                                            const BoundaryTagger& tagger)
{
    std::vector<InterfaceSpec> out;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> open;
    for (std::size_t k = 0; k < element_vertices.size(); ++k) {
        const auto& vs = element_vertices[k];
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const std::size_t a = vs[i];
            const std::size_t b = vs[(i + 1) % vs.size()];
            auto it = open.find({b, a});
            if (it != open.end()) {
                out[it->second].right = k;
                out[it->second].tag = BoundaryTag::interior;
                open.erase(it);
            } else {
                open.emplace(std::make_pair(a, b), out.size());
                out.push_back({a, b, k, std::nullopt, BoundaryTag::boundary});
            }
        }
    }
    for (auto& f : out)
        if (!f.right)
            f.tag = tagger ? tagger(f.left, f.v0, f.v1) : BoundaryTag::boundary;
    return out;
}

} // namespace wg
