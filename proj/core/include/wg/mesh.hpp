#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "wg/geometry.hpp"

namespace wg {

enum class BoundaryTag { interior, boundary, top_slit, bottom_slit };

std::string_view to_string(BoundaryTag tag);
std::optional<BoundaryTag> parse_boundary_tag(std::string_view text);

/// Raw interface description, as produced by generators and mesh files.
struct InterfaceSpec {
    std::size_t v0 = 0;
    std::size_t v1 = 0;
    std::size_t left = 0;
    std::optional<std::size_t> right;
    BoundaryTag tag = BoundaryTag::interior;

    friend bool operator==(const InterfaceSpec&, const InterfaceSpec&) = default;
};

struct Element {
    std::vector<std::size_t> vertex_ids;    // counterclockwise
    std::vector<std::size_t> interface_ids; // in boundary order, starting at vertex_ids[0]
    double area = 0.0;
    double diameter = 0.0;
    Point centroid = Point::Zero();
};

/// A maximal straight segment shared by two elements, or owned by one
/// element on the domain boundary. The element on the left of v0 -> v1 is
/// `left`; `normal` points from left to right (outward on the boundary).
struct Interface {
    std::size_t v0 = 0;
    std::size_t v1 = 0;
    Point p0 = Point::Zero();
    Point p1 = Point::Zero();
    std::size_t left = 0;
    std::optional<std::size_t> right;
    BoundaryTag tag = BoundaryTag::interior;
    Point normal = Point::Zero();
    double length = 0.0;

    bool is_boundary() const { return !right.has_value(); }
    bool borders(std::size_t element) const { return left == element || right == element; }

    /// +1 when `element` is the left element, -1 when it is the right one.
    double orientation(std::size_t element) const { return element == left ? 1.0 : -1.0; }
    Point outward_normal(std::size_t element) const { return orientation(element) * normal; }
};

struct MeshOptions {
    /// Reject clockwise element polygons instead of reordering them.
    bool strict_orientation = true;
};

/// Immutable polygonal partition of a 2D domain. Construction validates
/// every structural invariant and throws MeshError on violation.
class PolygonalMesh {
public:
    PolygonalMesh() = default;
    PolygonalMesh(std::vector<Point> vertices,
                  std::vector<std::vector<std::size_t>> element_vertices,
                  std::vector<InterfaceSpec> interfaces,
                  MeshOptions options = {});

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Element>& elements() const { return elements_; }
    const std::vector<Interface>& interfaces() const { return interfaces_; }

    const Point& vertex(std::size_t i) const { return vertices_[i]; }
    const Element& element(std::size_t k) const { return elements_[k]; }
    const Interface& interface(std::size_t e) const { return interfaces_[e]; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_elements() const { return elements_.size(); }
    std::size_t num_interfaces() const { return interfaces_.size(); }

    std::vector<Point> polygon(std::size_t k) const;

    /// h = max over elements of h_K.
    double mesh_size() const;
    double total_area() const;

    std::vector<InterfaceSpec> interface_specs() const;

    friend bool operator==(const PolygonalMesh& a, const PolygonalMesh& b);

private:
    void build(MeshOptions options);

    std::vector<Point> vertices_;
    std::vector<Element> elements_;
    std::vector<Interface> interfaces_;
};

using BoundaryTagger = std::function<BoundaryTag(std::size_t element, std::size_t v0, std::size_t v1)>;

/// Pairs up element edges that share both vertex ids. Unmatched edges become
/// boundary interfaces tagged by `tagger` (plain `boundary` when empty).
std::vector<InterfaceSpec> match_interfaces(const std::vector<std::vector<std::size_t>>& element_vertices,
                                            const BoundaryTagger& tagger = {});

} // namespace wg
