// Combinatorial maps: a graph with a rotation system (cyclic dart order at
// each vertex) and an edge signature (+1/-1 per edge), encoding a 2-cell
// embedding in a closed surface.  Darts are dense integer ids; every edge
// owns two consecutive darts (2k, 2k+1) at allocation time.
//
// Face tracing works on signed states (dart, sense): crossing a negative
// edge toggles the sense, which swaps the rotation direction used at the
// next vertex.  Each face of the embedding corresponds to a pair of state
// orbits exchanged by the reversal involution rho.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubmap {

using Dart = std::int32_t;
inline constexpr Dart kNil = -1;

// Face sizes -> counts.
using FaceVector = std::map<int, std::int64_t>;

// One step of a face traversal: a dart plus the sense it is walked with.
struct State {
  Dart d;
  int s;  // +1 or -1
  friend bool operator==(const State&, const State&) = default;
};

// Dense encoding of a state, used for orbit bookkeeping.
inline std::int64_t encode_state(State st) {
  return 2 * static_cast<std::int64_t>(st.d) + (st.s > 0 ? 0 : 1);
}

struct Counts {
  std::int64_t v = 0, e = 0, f = 0;
};

struct VertexIndex {
  std::vector<std::int32_t> of;            // dart -> vertex id (-1 if dead)
  std::vector<std::vector<Dart>> orbits;   // vertex id -> rotation cycle
};

class CombMap {
 public:
  CombMap() = default;

  // Build a map directly from parallel dart arrays (all darts live).
  // Runs check() on the result.
  static CombMap from_arrays(std::vector<Dart> twin, std::vector<Dart> next,
                             std::vector<std::int8_t> sign);

  friend bool operator==(const CombMap&, const CombMap&) = default;

  // ---- storage ----
  int dart_limit() const { return static_cast<int>(twin_.size()); }
  int live_darts() const { return live_; }
  bool alive(Dart d) const { return alive_[d] != 0; }
  Dart twin(Dart d) const { return twin_[d]; }
  Dart next(Dart d) const { return next_[d]; }
  Dart prev(Dart d) const { return prev_[d]; }
  int sign(Dart d) const { return sign_[d]; }
  std::vector<Dart> darts() const;  // live darts, ascending

  // ---- allocation / wiring ----
  std::pair<Dart, Dart> new_edge(int sign = +1);
  void kill_edge(Dart d);  // tombstones both darts; ids are never reused
  void set_next(Dart d, Dart e) {
    next_[d] = e;
    prev_[e] = d;
  }
  void set_rotation(const std::vector<Dart>& cycle);
  void set_sign(Dart d, int s) {
    sign_[d] = static_cast<std::int8_t>(s);
    sign_[twin_[d]] = static_cast<std::int8_t>(s);
  }

  // Structural invariants: twin involutive and fixed-point free, signs equal
  // on twins, next a bijection on live darts with prev its inverse.
  // Throws std::logic_error with a description on violation.
  void check() const;

  // ---- orbits ----
  std::vector<std::vector<Dart>> vertices() const;  // rotation orbits
  VertexIndex vertex_index() const;

  State step(State st) const {
    int s2 = st.s * sign_[st.d];
    Dart t = twin_[st.d];
    return s2 > 0 ? State{next_[t], +1} : State{prev_[t], -1};
  }
  State rho(State st) const { return {twin_[st.d], -st.s * sign_[st.d]}; }

  std::vector<State> face_walk_from(Dart d, int s = +1) const;
  // One representative orbit per face (the orbit holding the smaller
  // minimal encoded state of the rho-pair).
  std::vector<std::vector<State>> faces() const;
  // Canonical face id: minimum encoded state over the orbit pair through
  // (d, s).  Stable under choice of starting state.
  std::int64_t face_id_of_state(Dart d, int s = +1) const;
  FaceVector face_census() const;

  Counts counts() const;
  int euler_characteristic() const;
  bool orientable() const;

  // ---- mutations ----
  // Reverse the rotation at one vertex and negate the signs of its
  // non-loop edges; a local re-orientation (the embedding is unchanged).
  void vertex_flip(const std::vector<Dart>& vertex_darts);

  // Contract-uncontract flip of the edge carrying d.  Preconditions:
  // endpoints of degree 3, the four surrounding faces pairwise distinct.
  // A negative edge is first normalized positive by a vertex_flip.
  void flip_edge(Dart d);

  // Insert a degree-2 vertex on the edge of d.  d keeps its tail; returns
  // the new dart pair (g toward the old head, gb back).
  std::pair<Dart, Dart> subdivide_edge(Dart d);

  // Dense renumbering of live darts, order preserving.
  // remap[old] = new id (or kNil for dead darts).
  CombMap compact(std::vector<Dart>* remap = nullptr) const;

 private:
  std::vector<Dart> twin_, next_, prev_;
  std::vector<std::int8_t> sign_;
  std::vector<std::uint8_t> alive_;
  int live_ = 0;
};

// Disjoint union in one dart arena; darts of b are shifted by the returned
// offset.
CombMap map_union(const CombMap& a, const CombMap& b, Dart* offset_b);

// Build a map from oriented face cycles over integer vertex labels; every
// directed edge must appear exactly once across all faces (orientable
// closed maps only).  Returns the map and the dart of each directed edge.
struct FaceSoupResult {
  CombMap map;
  std::map<std::pair<std::int64_t, std::int64_t>, Dart> dart_of;
};
FaceSoupResult from_face_soup(
    const std::vector<std::vector<std::int64_t>>& faces);

// Fuse the edge of y onto the edge of x so that x coincides with twin(y):
// tail(x)~head(y) and head(x)~tail(y).  Both edges must be positive; the
// edge of y dies, x survives and carries the merged edge.  Used to zip
// boundary walks together.
void sew_edges(CombMap& m, Dart x, Dart y);

// Relabeling- and mirror-invariant signature of a small map.
std::vector<std::int32_t> canonical_form(const CombMap& m);

// A map with one face marked as an open boundary (the face is not removed
// from the data structure; the walk records its traversal order).
struct BoundedMap {
  CombMap map;
  std::vector<Dart> boundary;
};

// Mark the face through face_dart as a boundary.  The face walk must visit
// no vertex twice.
BoundedMap excise_face(const CombMap& m, Dart face_dart);

// Identify the boundaries of two equal-size faces with a half twist: both
// walks are subdivided at edge midpoints and zipped so that original
// vertices of one side land on midpoints of the other.  Drops the Euler
// characteristic by 2; the merged boundary is a cycle of length 2k.  The
// rotational alignment is canonical: the smallest dart of the first walk
// meets the smallest dart of the second subdivided walk.
CombMap glue_half_twist(const CombMap& m, Dart face_a, Dart face_b);

// Replace a 6N-gonal face by the one-sided crosscap patch, glued in with
// the same half twist.  Drops the Euler characteristic by 1 and makes the
// map non-orientable.  Faces touching the seam are left for the repair
// pass (surface_builder).  N must be odd.
CombMap insert_crosscap_gadget(const CombMap& m, Dart face_dart, int N);

}  // namespace cubmap
