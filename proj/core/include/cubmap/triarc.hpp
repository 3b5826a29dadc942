// Triarcs and their gluing algebra.
//
// A Triarc is a closed sphere map with a marked outer face; `corners`
// holds three outer-walk darts (their tails are the corner vertices),
// corner 0 first and the other two following in walk order.  Walk sides
// (s0, s1, s2): side i runs from corner i to corner i+1.  The public side
// labels are (a, b, c) = (s2, s1, s0); rot() cycles them (a,b,c)->(b,c,a).
//
// Gluing inserts a pentagon/heptagon parallelogram band between two
// triarcs so that side labels add componentwise; larger patches
// (equilateral enlargement, congruence adjustment, fillers) are built
// from repeated gluing.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cubmap/lattice.hpp"
#include "cubmap/map.hpp"

namespace cubmap {

struct Triarc {
  CombMap m;
  std::array<Dart, 3> corners{};
  std::vector<Dart> nuclei;  // prescribed interior faces, one dart each

  Triarc() = default;
  // Orders corners[1..2] by outer-walk position; corners[0] is kept.
  Triarc(CombMap map, const std::array<Dart, 3>& cs,
         std::vector<Dart> nuc = {});

  Dart outer_dart() const { return corners[0]; }
  std::vector<Dart> walk() const;
  // Segment i = walk darts from corner i up to (excluding) corner i+1.
  std::array<std::vector<Dart>, 3> side_segments() const;
  std::array<std::int64_t, 3> sides_walk() const;  // (s0, s1, s2)
  std::array<std::int64_t, 3> sides() const;       // (a, b, c)
  Triarc rot() const;
  Triarc rot2() const;
  FaceVector interior_census() const;
  TriarcDiagnostics validate(
      const std::optional<std::array<std::int64_t, 3>>& expect_sides =
          {}) const;
};

enum class TriarcKind { T224, T443, HTILE, D888 };

// k-gon nucleus ringed by three heptagons and k-3 pentagons, p_i
// pentagons following heptagon i (p1+p2+p3 = k-3); corners sit mid-arc
// on the heptagons.  The nucleus is tracked.
Triarc wheel_triarc(int k, int p1, int p2, int p3);

// Isosceles (k-1, 2, 2) triarc around one tracked k-gon nucleus.
Triarc basic_triarc(int k);

// Equilateral (2N+2)^3 triarc around one tracked 6N-gon nucleus whose
// inner ring alternates 3 heptagons with runs of 2N-1 pentagons (N odd).
Triarc hexagon_triarc(int N);

// Catalog of fixed patches.  T224 -> (2,2,4), T443 -> (4,4,3), D888 ->
// (8,8,8); HTILE is the two-pentagon/two-heptagon parallelogram cell
// wrapped with three marked boundary darts (it is not triangle-shaped,
// so validate reports its corner rule as violated by design).
Triarc fixed_triarc(TriarcKind kind);

// (5,7)-tiled parallelogram patch of m x l H-tile cells, returned with
// its boundary walk.
BoundedMap parallelogram(int m, int l);

// Glue consuming walk side s1 of both inputs through an inserted band of
// H-tile cells (flips=false keeps the band hexagonal, used by lattice
// replay tests).
Triarc glue_raw(const Triarc& t1, const Triarc& t2, bool flips = true);

// Public glue: side labels add componentwise.  Requires b(t1) and c(t2)
// even; throws std::invalid_argument otherwise.
Triarc glue_triarcs(const Triarc& t1, const Triarc& t2);

// Sew three peripheral triarcs around an equilateral (s,s,s) core; the
// result is equilateral with side = sum of each peripheral's equal
// sides, cornered at the peripherals' apexes.
Triarc pinwheel_glue(const Triarc& w, const std::array<Triarc, 3>& ps);

// Rotate labels so b == c; throws std::invalid_argument if no rotation
// is isosceles.
Triarc rot_to_isosceles(Triarc t);

// Grow an isosceles-even triarc into an equilateral one of even side.
Triarc equilateralize(Triarc t);

// One +10 enlargement step on an equilateral triarc: (n,n,n)->(n+10)^3.
Triarc plus10(Triarc t);

// Least a with n+10a divisible by 8 and congruent to 2 mod 3 (a < 12).
int congruence_steps(std::int64_t n);

// Drive an even equilateral triarc to side n with n ≡ 0 (mod 8) and
// n ≡ 2 (mod 3); each growth unit appends 12 more +10 steps (+120,
// preserving both congruences).
Triarc adjust_congruence(Triarc t, int growth = 0);

// Equilateral (n,n,n) filler of pentagons/heptagons only; n ≡ 0 (mod 8).
Triarc fill_triarc(std::int64_t n);

// Minimum over tracked nuclei of the vertex distance from the nucleus
// face to the boundary; nullopt when no nuclei are tracked.
std::optional<std::int64_t> min_nucleus_depth(const Triarc& t);

// Enlarge until every tracked nucleus is at distance >= z from the
// boundary and every side is >= 3z; isosceles-even output.
Triarc deepen_nucleus(Triarc t, std::int64_t z);

}  // namespace cubmap
