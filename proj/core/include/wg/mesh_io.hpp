#pragma once

#include <filesystem>
#include <iosfwd>

#include "wg/mesh.hpp"

namespace wg {

// Text format, version 1:
//
//   wgmesh 1
//   vertices N
//   x y                      (N lines)
//   elements M
//   v0 v1 v2 ...             (M lines, vertex ids)
//   interfaces P
//   v0 v1 left right tag     (P lines, right = -1 on the boundary)
//
// tag is one of interior, boundary, top-slit, bottom-slit.

/// Throws ParseError (with line number) on malformed input and MeshError when
/// the parsed mesh violates an invariant.
PolygonalMesh read_mesh(std::istream& in, MeshOptions options = {});
PolygonalMesh read_mesh(const std::filesystem::path& path, MeshOptions options = {});

void write_mesh(std::ostream& out, const PolygonalMesh& mesh);
void write_mesh(const std::filesystem::path& path, const PolygonalMesh& mesh);

} // namespace wg
