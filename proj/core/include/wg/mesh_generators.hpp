#pragma once

#include <cstddef>
#include <cstdint>

#include "wg/mesh.hpp"

namespace wg {

struct Rectangle {
    Point lower{0.0, 0.0};
    Point upper{1.0, 1.0};
};

/// n x n grid, every square split along its (lower-left, upper-right)
/// diagonal: 2 n^2 right triangles.
PolygonalMesh generate_structured_triangles(std::size_t n, const Rectangle& domain = {});

/// n x n quads where each cell is, with probability `refine_fraction`, split
/// in half by a vertical or horizontal midline. Neighbours of a split cell
/// get the split point as a hanging vertex, so their long edge is carried by
/// two interfaces. Deterministic for a fixed seed.
PolygonalMesh generate_noncompatible_quads(std::size_t n, double refine_fraction, std::uint64_t seed,
                                           const Rectangle& domain = {});

/// Slit square (-1,1)^2 minus [0,1]x{0} on an n x n grid of squares, n even.
/// Slit points with x > 0 are duplicated so that the elements above and below
/// own separate boundary interfaces, tagged top-slit and bottom-slit.
PolygonalMesh generate_slit_mesh(std::size_t n);

} // namespace wg
