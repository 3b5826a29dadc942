#pragma once
// Independent structural checks for combinatorial maps: cubicity,
// connectivity, contractibility of cycles, exact edge-width and face-width,
// and an aggregate pass/fail report for built maps.
//
// Width conventions: a width of "unbounded" (std::nullopt) means the map has
// no non-contractible cycle at all, which happens exactly for maps of Euler
// characteristic 2 (sphere maps).  Every bounded width comes with an explicit
// witness that callers can re-check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubmap/map.hpp"
#include "cubmap/sphere_builder.hpp"

namespace cubmap {

// True iff every vertex orbit has exactly three darts.
bool check_cubic(const CombMap& m);

// True iff the underlying graph has no loops and no parallel edges.
bool simple_graph(const CombMap& m);

// Vertex connectivity of the underlying simple graph (loops dropped,
// parallel edges collapsed).  Exact for k <= 3 at any size: small maps use
// unit-capacity flows between a minimum-degree vertex (plus its neighbours)
// and every non-adjacent target; large cubic simple maps use the fact that
// vertex and edge connectivity coincide for 3-regular graphs, with edge
// connectivity established by a near-linear bridge / 2-edge-cut scan.
bool vertex_connectivity_at_least(const CombMap& m, int k);

// Largest k in {0,1,2,3} with vertex_connectivity_at_least(m, k).
// (Cubic maps never exceed vertex connectivity 3, so the cap is exact
// for every map this library builds.)
int connectivity(const CombMap& m);

// Edge connectivity >= 3 of the underlying simple graph.  Bridges and
// 2-edge-cuts are first located by random tree-cover hashing and then every
// candidate is confirmed or refuted by an exact reachability check, so the
// answer is deterministic and exact.
bool three_edge_connected(const CombMap& m);

// Decides whether a simple closed walk (dart sequence d0 .. d_{L-1} with
// head(d_i) == tail(d_{i+1}) cyclically, no edge repeated) bounds a disk.
// One-sided walks (negative sign product) are never contractible.  Two-sided
// walks are cut along: the walk is contractible iff one side closes up into
// a region of Euler characteristic 1.  Throws std::invalid_argument if the
// input is not a simple closed walk.
bool is_contractible(const CombMap& m, const std::vector<Dart>& cycle);

struct WidthResult {
  // std::nullopt when every cycle is contractible (sphere maps).
  std::optional<std::int64_t> value;
  // edge_width: a shortest non-contractible cycle as a closed dart walk,
  // |witness| == value.  Empty when unbounded.
  std::vector<Dart> witness;
  // face_width: canonical face ids (face_id_of_state values) of a minimum
  // face set whose boundary union carries a non-contractible cycle, listed
  // in traversal order, |faces| == value.  Empty for edge_width results.
  std::vector<std::int64_t> faces;
};

// Length of a shortest non-contractible cycle, found by breadth-first trees
// from every vertex and testing the fundamental cycle of each non-tree edge.
// Later roots are truncated to balls that could still improve the best
// cycle, which keeps the scan exact while near-linear in practice.
WidthResult edge_width(const CombMap& m);

// Radial (vertex-face incidence) map: one radial edge per dart of the
// primal.  Radial edge i occupies darts 2i and 2i+1 of the radial map; its
// even end lies at the primal vertex containing primal[i] and its odd end at
// the primal face recorded in face_of_edge[i] (a canonical face id).  All
// radial faces are quadrangles and the radial map lives on the same surface.
struct RadialMap {
  CombMap map;
  std::vector<Dart> primal;
  std::vector<std::int64_t> face_of_edge;
};

RadialMap radial_map(const CombMap& m);

// Structural audit of a radial map against its primal: vertex/edge/face
// counts, quadrangular faces, Euler characteristic and orientability.
// Throws std::logic_error on any mismatch.
void validate_radial(const CombMap& primal, const RadialMap& r);

// Minimum number of faces whose boundary union contains a non-contractible
// cycle: computed as edge_width(radial map) / 2 with the witness mapped back
// to the crossed faces.
WidthResult face_width(const CombMap& m);

// ---- Exhaustive small-instance oracles (fixtures, tests) ----------------

// Every simple cycle of the map, each as a closed dart walk.  Exponential;
// intended for maps with at most a few dozen edges.
std::vector<std::vector<Dart>> all_simple_cycles(const CombMap& m);

// Shortest non-contractible cycle length by full enumeration.
std::optional<std::int64_t> edge_width_oracle(const CombMap& m);

// face-width via the radial construction with the exhaustive cycle oracle.
std::optional<std::int64_t> face_width_oracle(const CombMap& m);

// face-width by direct search over face subsets of increasing size, testing
// whether the boundary union of the subset carries a non-contractible cycle.
std::optional<std::int64_t> face_width_subset_oracle(const CombMap& m);

// Length of a shortest cycle of the underlying simple graph (loops and
// parallel edges are ignored); std::nullopt when that graph is a forest.
std::optional<std::int64_t> girth(const CombMap& m);

// ---- Aggregate verification ---------------------------------------------

struct VerifyOutcome {
  bool pass = false;
  bool polyhedral = false;  // 3-connected and face-width >= 3
  RealizationReport report;
  // Line-oriented log: one "CHECK <name> PASS|FAIL <detail>" per property
  // followed by a final "RESULT PASS|FAIL".
  std::string log;
};

// Checks a built map against the requested face counts p (sizes 5 and 7 are
// reserved for the builder and excluded from the census comparison), the
// target surface S, and the face-width target w.
VerifyOutcome verify_realization(const CombMap& m, const FaceVector& p,
                                 SurfaceSpec S, int w);

}  // namespace cubmap
