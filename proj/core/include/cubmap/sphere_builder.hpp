// Sphere pipeline: realize a prescribed face vector as a cubic sphere map,
// padding with pentagons and heptagons only.
//
// Pipeline: plausibilize (pad the vector so the curvature identity
// sum (6-k) p_k = 6 chi holds) -> assemble_T (one triarc per prescribed
// face, glued into a single isosceles-even triarc) -> equilateralize ->
// adjust_congruence (side to 0 mod 8 and 2 mod 3, plus optional growth)
// -> fill_triarc (the neutral partner) -> icosahedral closure (20 pieces,
// 30 offset-by-one seams; the 12 leftover cycles become pentagons).
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cubmap/triarc.hpp"

namespace cubmap {

struct SurfaceSpec {
  bool orientable = true;
  int h = 0;  // handles, when orientable
  int c = 0;  // crosscaps, when non-orientable
  int chi() const { return orientable ? 2 - 2 * h : 2 - c; }
  friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;
  static SurfaceSpec sphere() { return {true, 0, 0}; }
  static SurfaceSpec torus() { return {true, 1, 0}; }
  static SurfaceSpec with_handles(int h) { return {true, h, 0}; }
  static SurfaceSpec with_crosscaps(int c) { return {false, 0, c}; }
};

struct BuildRequest {
  FaceVector faces;  // keys >= 3, none equal to 5 or 7
  int growth = 0;    // extra enlargement rounds (strictly grows the output)
};

struct RealizationReport {
  FaceVector census;
  int chi = 0;
  bool orientable = true;
  std::int64_t n5 = 0;  // pentagons in the output
  std::int64_t n7 = 0;  // heptagons in the output
  std::int64_t deficit = 0;  // required n7 - n5 for the request
  int connectivity = 0;
  std::optional<std::int64_t> edge_width;  // nullopt = unbounded (sphere)
  std::optional<std::int64_t> face_width;  // nullopt = unbounded (sphere)
};

// Required heptagon-minus-pentagon difference of face vector p on S:
// sum over k not in {5,7} of (6-k) p(k), minus 6 chi(S).
std::int64_t compute_deficit(const FaceVector& p, SurfaceSpec S);

// Pad p with pentagons or heptagons (never both) so the padded vector
// satisfies the curvature identity on S; zero counts and 5/7 keys of the
// input are dropped first.
FaceVector plausibilize(const FaceVector& p, SurfaceSpec S);

// One glued isosceles-even triarc containing one tracked nucleus of size
// k for every prescribed face of p' (5s and 7s carry no nucleus and are
// skipped), each nucleus at vertex distance >= z from the boundary.
// Blocks are glued in descending size order.
Triarc assemble_T(const FaceVector& pp, std::int64_t z = 0);

// Deepen each block to z, then fold with componentwise gluing (descending
// insertion order is the caller's responsibility).  Used by assemble_T
// and by the surface pipeline, which mixes in scaled auxiliary blocks.
Triarc assemble_blocks(std::vector<Triarc> blocks, std::int64_t z);

// 20 consistently oriented triangles on vertices 0..11 (0 north, 1-5
// upper ring, 6-10 lower ring, 11 south); every directed edge once.
std::vector<std::array<int, 3>> icosa_faces();

struct ClosedAssembly {
  CombMap map;
  std::vector<Dart> piece_offset;  // dart offset of each piece in map
};

// Close 20 equilateral triarcs of equal side n into a sphere: piece i
// sits on icosahedral face i with corner j on face-cycle vertex j; each
// of the 30 seams fuses 2n-1 of the 2n boundary edges offset by one, and
// the 12 leftover cycles at assembly vertices close up as pentagons.
ClosedAssembly close20(const std::vector<const Triarc*>& pieces);

// Sphere closure of a prescribed piece Tp and its neutral filler R (19
// copies).  Requires equal equilateral sides n with n = 2 (mod 3) and
// n = 0 (mod 8).
CombMap close_sphere(const Triarc& Tp, const Triarc& R);

// Full pipeline.  The report's width fields are unbounded (sphere);
// connectivity is measured on the output.
std::pair<CombMap, RealizationReport> build_sphere(const BuildRequest& req);

}  // namespace cubmap
