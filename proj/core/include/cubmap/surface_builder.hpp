#pragma once
// Realization on arbitrary closed surfaces.  The sphere pipeline is extended
// by auxiliary 6N-gon nuclei; handle surgery fuses two such nuclei with a
// half twist and crosscap surgery patches one with a one-sided gadget.  A
// repair pass of edge flips along each surgery seam restores the all-5/7
// regime around the seam.

#include <cstdint>
#include <utility>
#include <vector>

#include "cubmap/map.hpp"
#include "cubmap/sphere_builder.hpp"
#include "cubmap/triarc.hpp"

namespace cubmap {

struct BuildPlan {
  std::int64_t z = 0;  // edge-width target driving nucleus deepening
  int N = 1;           // odd scale of the auxiliary 6N-gon nuclei
  int aux = 0;         // auxiliary nuclei injected = 2*handles + crosscaps
  int handles = 0;
  int crosscaps = 0;
};

// Smallest admissible plan for realizing p on S with face-width at least w:
// z = ceil(r' * w / 2) where r' = max(largest requested face size, 7), and
// N = least odd integer greater than z/2.  Auxiliary nuclei are consumed in
// construction order: the first 2*handles pairwise for handles, the rest
// one each for crosscaps.  A sphere target needs no surgery (z = 0, aux = 0).
BuildPlan plan(const FaceVector& p, SurfaceSpec S, int w);

// Diagnostics of one surgery seam.
struct SurgeryInfo {
  std::vector<Dart> seam;   // merged boundary cycle (surviving darts, in order)
  std::vector<Dart> thick;  // seam darts flipped by the repair pass
  std::int64_t tau = 0;     // rotational alignment used when zipping
  int phi = 0;              // phase (mod 4) of the repair selection
};

// One-sided patch used by crosscap surgery: a bounded map whose boundary
// face is a 6N-gon and whose interior carries 9N pentagons and 3N heptagons
// around an antipodally closed core.  N must be odd.
BoundedMap crosscap_gadget(int N);

// Fuse the two 6N-gon faces through nucleus_a and nucleus_b with a half
// twist and repair the seam by flipping every fourth seam edge.  The faces
// must be vertex-disjoint 6N-gons; afterwards every face incident with the
// seam has size 5 or 7, the map stays cubic, and the Euler characteristic
// drops by 2.
CombMap add_handle(CombMap m, Dart nucleus_a, Dart nucleus_b, int N,
                   SurgeryInfo* info = nullptr);

// Replace the 6N-gon face through nucleus by the crosscap patch and repair
// the seam.  Afterwards every face incident with the seam has size 5 or 7,
// the map stays cubic and becomes non-orientable, and the Euler
// characteristic drops by 1.
CombMap add_crosscap(CombMap m, Dart nucleus, int N,
                     SurgeryInfo* info = nullptr);

// Full pipeline: plan, inject aux nuclei, build the deepened sphere map,
// perform the surgeries, and double-check the promised invariants.  The
// report carries exact widths measured by the verifier.
std::pair<CombMap, RealizationReport> build_surface(const FaceVector& p,
                                                    SurfaceSpec S, int w,
                                                    int growth = 0);

}  // namespace cubmap
