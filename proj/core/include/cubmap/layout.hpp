#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cubmap/map.hpp"

namespace cubmap {

// Straight-line drawing of a spherical map: the chosen outer face is pinned
// to a regular polygon and every interior vertex relaxes to the average of
// its neighbours (barycentric embedding).  Vertex indices follow the order
// of CombMap::vertex_index() on the input map.
struct Drawing {
  std::vector<std::array<double, 2>> pos;         // per vertex index
  std::vector<std::vector<std::int32_t>> faces;   // vertex cycles
  std::vector<std::array<std::int32_t, 2>> edges; // one entry per edge
  std::size_t outer = 0;                          // index into faces
  FaceVector census;
  double residual = 0.0;   // final max per-coordinate residual
  std::int64_t sweeps = 0;
  bool converged = false;
  std::string warning;     // non-empty when the drawing may degenerate
};

// outer_face is a canonical face id of m (CombMap::face_id_of_state); pass a
// negative value to pick a largest face automatically.  Throws
// std::invalid_argument unless m is a connected orientable map with Euler
// characteristic 2.  A map that is not 3-connected is still drawn but sets
// Drawing::warning, as does a relaxation that fails to converge.
Drawing barycentric_layout(const CombMap& m, std::int64_t outer_face = -1);

// Number of properly crossing segment pairs in the drawing (segments that
// share an endpoint never count); 0 for every embedding of a 3-connected
// spherical map.
std::int64_t count_crossings(const Drawing& d);

// SVG 1.1 document with one polygon per face except the outer one, filled by
// a size-keyed palette (pentagons and heptagons clearly distinct) and the
// face census embedded as a comment.
std::string render_svg(const Drawing& d);

}  // namespace cubmap
