// Hexagonal-lattice patch generation and patch validators.
//
// A patch is a closed sphere map including its outer face, plus the dart
// of one outer-walk position.  Interior faces are listed counterclockwise,
// so the outer walk runs clockwise around the patch.  Lattice vertices are
// keyed by exact integer coordinates (no floating point).
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubmap/map.hpp"

namespace cubmap {

// Integer key of a lattice vertex: corner i (angle 60i degrees) of the
// hexagon at axial position (q, r).
using LatticeKey = std::pair<int, int>;
std::array<LatticeKey, 6> hex_corner_keys(int q, int r);

using Hex = std::pair<int, int>;

struct Cluster {
  CombMap map;
  // Directed soup edge -> dart.
  std::map<std::pair<std::int64_t, std::int64_t>, Dart> dart_of;
  std::vector<std::int64_t> outer;  // outer-face vertex cycle (soup ids)
  Dart outer_dart = kNil;
  std::map<LatticeKey, std::int64_t> id_of_key;
  std::vector<std::vector<std::int64_t>> hex_faces;
};

// Assemble a simply-connected cluster of hexagons into a sphere map with
// one outer face.  The boundary must be a simple cycle.
Cluster build_cluster(const std::vector<Hex>& hexes);

std::vector<Hex> triangle_hexes(int n);
std::vector<Hex> para_hexes(int a, int b);

// Dart of the edge shared by two adjacent hexagons of the cluster.
Dart shared_edge_dart(const Cluster& cl, Hex ha, Hex hb);

// (5,7)-tiled parallelogram: 2m x 2l hexagons, one central flip per 2x2
// block.  Census {5: 2ml, 7: 2ml}.
Cluster make_parallelogram(int m, int l);

struct BoundaryProfile {
  std::vector<Dart> walk;           // outer-walk darts
  std::vector<std::int32_t> tails;  // vertex id at each walk dart's tail
  std::vector<int> degs;            // degree of each tail vertex
  VertexIndex vi;
};
BoundaryProfile boundary_profile(const CombMap& m, Dart outer_dart);

struct TriarcDiagnostics {
  bool ok = false;
  std::string error;                 // first violation when !ok
  std::array<std::int64_t, 3> sides{};  // walk order (s0, s1, s2)
  FaceVector census;                 // interior faces only
  std::int64_t boundary = 0;         // outer walk length
  std::int64_t nucleus_size = -1;    // when a nucleus dart was given
};

// Validate the triarc shape: three distinct degree-2 corners on the outer
// walk, 2/3-alternating sides, interior degree 3, zero total curvature.
// Returns the first violation or the measured sides and census.
TriarcDiagnostics validate_triarc(
    const CombMap& m, Dart outer_dart, const std::array<Dart, 3>& corner_darts,
    const std::optional<std::array<std::int64_t, 3>>& expect_sides = {},
    std::optional<Dart> nucleus_dart = {});

// Corner candidates: boundary degree-2 vertices flanked by degree-2
// neighbors on both sides (works for patches with all sides >= 2).
std::vector<Dart> find_corner_darts(const CombMap& m, Dart outer_dart);

// Side lengths of a parallelogram patch, measured as the degree-2 counts
// of the four boundary arcs cut at the two 60-degree corners and through
// the middle of the two 120-degree corner pairs.
std::array<std::int64_t, 4> parallelogram_profile(const CombMap& m,
                                                  Dart outer_dart);

}  // namespace cubmap
