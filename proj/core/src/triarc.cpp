#include "cubmap/triarc.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace cubmap {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::logic_error(what); }

Triarc rot_to(Triarc t, const std::array<std::int64_t, 3>& want) {
  for (int r = 0; r < 3; ++r) {
    if (t.sides() == want) return t;
    t = t.rot();
  }
  fail("fixed patch rotation with requested side labels not found");
}

// ---- fillers -------------------------------------------------------------

Triarc t224_filler() {
  Triarc t = wheel_triarc(5, 0, 0, 2);
  for (int r = 0; r < 3; ++r) {
    if (t.sides()[0] == 4) break;
    t = t.rot();
  }
  if (t.sides() != std::array<std::int64_t, 3>{4, 2, 2})
    fail("(4,2,2) filler has wrong sides");
  t.nuclei.clear();
  return t;
}

// Frozen face soup of the (3,4,4)-labeled pentagon/heptagon patch
// (7 pentagons + 7 heptagons, no tracked nuclei).
const std::vector<std::vector<std::int64_t>> kT443Soup = {
    {2, 1, 0, 21, 20, 22, 23},
    {4, 3, 2, 23, 24, 25, 26},
    {6, 5, 4, 26, 27},
    {10, 9, 8, 7, 6, 27, 28},
    {12, 11, 10, 28, 29},
    {14, 13, 12, 29, 30, 31, 32},
    {18, 17, 16, 15, 14, 32, 33},
    {22, 20, 19, 18, 33, 34, 35},
    {24, 23, 22, 35, 36},
    {25, 24, 36, 37, 38},
    {30, 29, 28, 27, 26, 25, 38},
    {31, 30, 38, 37, 39},
    {34, 33, 32, 31, 39},
    {39, 37, 36, 35, 34},
};

Triarc t443_filler() {
  std::vector<std::vector<std::int64_t>> faces = kT443Soup;
  std::vector<std::int64_t> outer(22);
  std::iota(outer.begin(), outer.end(), 0);
  faces.push_back(outer);
  FaceSoupResult fs = from_face_soup(faces);
  const std::array<int, 3> offs{0, 8, 16};
  std::array<Dart, 3> cds{};
  for (int i = 0; i < 3; ++i)
    cds[i] = fs.dart_of.at({outer[offs[i]], outer[(offs[i] + 1) % 22]});
  return rot_to(Triarc(std::move(fs.map), cds), {3, 4, 4});
}

Triarc d888() {
  Triarc t = glue_triarcs(t224_filler().rot(), t224_filler().rot2());
  if (t.sides() != std::array<std::int64_t, 3>{4, 6, 6})
    fail("filler block intermediate sides wrong");
  t = glue_triarcs(t, t224_filler());
  if (t.sides() != std::array<std::int64_t, 3>{8, 8, 8})
    fail("filler block sides wrong");
  return t;
}

Triarc peripheral_filler(int N) {
  Triarc t = t224_filler();
  for (int i = 0; i < (N - 1) / 2; ++i) t = glue_triarcs(t, t224_filler());
  if (t.sides() != std::array<std::int64_t, 3>{2 * N + 2, N + 1, N + 1})
    fail("peripheral filler sides wrong");
  return t;
}

// ---- the gluing band -----------------------------------------------------

struct Band {
  CombMap map;
  std::vector<Dart> lower, left, upper, bseam;
  Dart c_hi = kNil;
};

// Parallelogram band of HA x HB hexagons {q in [0,HA), q+r in [HA,HA+HB)}.
// With flips (HA, HB even) each 2x2 block gets its central flip, turning
// the band into pentagon/heptagon tiles.  The walk (clockwise outer orbit)
// is cut at the low 60-degree corner into four landmark stretches:
//   lower: 2HA-1 darts (seam route toward the first patch),
//   left:  2HB darts (stays on the result boundary),
//   upper: 2HA darts (stays; upper[0] tails the far 60-degree corner),
//   bseam: 2HB-1 darts (seam route toward the second patch).
Band make_band(int HA, int HB, bool flips) {
  std::vector<Hex> hexes;
  for (int q = 0; q < HA; ++q)
    for (int row = HA; row < HA + HB; ++row) hexes.push_back({q, row - q});
  Cluster cl = build_cluster(hexes);
  if (flips) {
    if (HA % 2 != 0 || HB % 2 != 0) fail("band flips need even dimensions");
    for (int qi = 0; qi < HA / 2; ++qi)
      for (int si = 0; si < HB / 2; ++si) {
        int r0 = HA + 2 * si - 2 * qi;
        cl.map.flip_edge(
            shared_edge_dart(cl, {2 * qi, r0}, {2 * qi + 1, r0}));
      }
    cl.map.check();
  }
  // Low 60-degree corner: the -60-degree corner of the bottom-right
  // hexagon (HA-1, 1).
  std::int64_t soup_lo = cl.id_of_key.at(hex_corner_keys(HA - 1, 1)[5]);
  const std::vector<std::int64_t>& outer = cl.outer;
  int n = static_cast<int>(outer.size());
  if (n != 4 * HA + 4 * HB - 2) fail("band boundary length wrong");
  int i0 = static_cast<int>(
      std::find(outer.begin(), outer.end(), soup_lo) - outer.begin());
  if (i0 == n) fail("band low corner not on the boundary");
  std::vector<Dart> seq(n);
  for (int j = 0; j < n; ++j)
    seq[j] = cl.dart_of.at({outer[(i0 + j) % n], outer[(i0 + j + 1) % n]});
  Band band;
  band.lower.assign(seq.begin(), seq.begin() + 2 * HA - 1);
  band.left.assign(seq.begin() + 2 * HA - 1, seq.begin() + 2 * HA - 1 + 2 * HB);
  band.upper.assign(seq.begin() + 2 * HA - 1 + 2 * HB,
                    seq.begin() + 4 * HA - 1 + 2 * HB);
  band.bseam.assign(seq.begin() + 4 * HA - 1 + 2 * HB, seq.end());
  if (band.bseam.size() != static_cast<std::size_t>(2 * HB - 1))
    fail("band seam slice wrong");
  band.c_hi = band.upper[0];
  band.map = std::move(cl.map);
  return band;
}

int boundary_run_start(const std::vector<int>& degs) {
  for (int i = 0; i < static_cast<int>(degs.size()); ++i)
    if (degs[i] != 2) return i;
  fail("patch boundary has no degree-3 vertex");
}

// The H-tile cell wrapped as a (pseudo) triarc: the two 60-degree corners
// plus the first member of the next 120-degree corner pair, in walk order.
Triarc htile() {
  Cluster cl = make_parallelogram(1, 1);
  BoundaryProfile bp = boundary_profile(cl.map, cl.outer_dart);
  int B = static_cast<int>(bp.walk.size());
  int base = boundary_run_start(bp.degs);
  std::vector<int> sixty, pair_first;
  for (int i = 0; i < B;) {
    int p = (base + i) % B;
    if (bp.degs[p] != 2) {
      ++i;
      continue;
    }
    int len = 0;
    while (i < B && bp.degs[(base + i) % B] == 2) {
      ++i;
      ++len;
    }
    if (len == 3)
      sixty.push_back((p + 1) % B);
    else if (len == 2)
      pair_first.push_back(p);
    else
      fail("unexpected H-tile boundary word");
  }
  if (sixty.size() != 2 || pair_first.size() != 2)
    fail("unexpected H-tile boundary word");
  int s0 = std::min(sixty[0], sixty[1]);
  int other60 = sixty[0] == s0 ? sixty[1] : sixty[0];
  auto offset_from = [&](int p) { return (p - s0 + B) % B; };
  int first_pair = offset_from(pair_first[0]) < offset_from(pair_first[1])
                       ? pair_first[0]
                       : pair_first[1];
  return Triarc(std::move(cl.map),
                {bp.walk[s0], bp.walk[first_pair], bp.walk[other60]});
}

}  // namespace

// ---- Triarc --------------------------------------------------------------

Triarc::Triarc(CombMap map, const std::array<Dart, 3>& cs,
               std::vector<Dart> nuc)
    : m(std::move(map)), nuclei(std::move(nuc)) {
  std::vector<State> w = m.face_walk_from(cs[0], +1);
  std::map<Dart, int> pos;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) pos.emplace(w[i].d, i);
  std::array<Dart, 2> rest{cs[1], cs[2]};
  for (Dart c : rest)
    if (!pos.count(c))
      throw std::invalid_argument("corner dart not on the outer walk");
  if (pos.at(rest[1]) < pos.at(rest[0])) std::swap(rest[0], rest[1]);
  corners = {cs[0], rest[0], rest[1]};
}

std::vector<Dart> Triarc::walk() const {
  std::vector<Dart> w;
  for (const State& st : m.face_walk_from(corners[0], +1)) w.push_back(st.d);
  return w;
}

std::array<std::vector<Dart>, 3> Triarc::side_segments() const {
  std::vector<Dart> w = walk();
  int B = static_cast<int>(w.size());
  std::map<Dart, int> pos;
  for (int i = 0; i < B; ++i) pos.emplace(w[i], i);
  std::array<int, 3> cp{};
  for (int i = 0; i < 3; ++i) cp[i] = pos.at(corners[i]);
  std::array<std::vector<Dart>, 3> segs;
  std::int64_t total = 0;
  for (int i = 0; i < 3; ++i) {
    int j = cp[i];
    while (j != cp[(i + 1) % 3]) {
      segs[i].push_back(w[j]);
      j = (j + 1) % B;
    }
    total += static_cast<std::int64_t>(segs[i].size());
  }
  if (total != B) fail("side segments do not partition the outer walk");
  return segs;
}

std::array<std::int64_t, 3> Triarc::sides_walk() const {
  auto segs = side_segments();
  return {static_cast<std::int64_t>(segs[0].size()) / 2,
          static_cast<std::int64_t>(segs[1].size()) / 2,
          static_cast<std::int64_t>(segs[2].size()) / 2};
}

std::array<std::int64_t, 3> Triarc::sides() const {
  auto sw = sides_walk();
  return {sw[2], sw[1], sw[0]};
}

Triarc Triarc::rot() const {
  return Triarc(m, {corners[2], corners[0], corners[1]}, nuclei);
}

Triarc Triarc::rot2() const { return rot().rot(); }

FaceVector Triarc::interior_census() const {
  std::int64_t ofid = m.face_id_of_state(corners[0], +1);
  FaceVector cen;
  for (const auto& f : m.faces())
    if (m.face_id_of_state(f[0].d, f[0].s) != ofid)
      cen[static_cast<int>(f.size())] += 1;
  return cen;
}

TriarcDiagnostics Triarc::validate(
    const std::optional<std::array<std::int64_t, 3>>& expect_sides) const {
  return validate_triarc(m, corners[0], corners, expect_sides);
}

// ---- builders ------------------------------------------------------------

Triarc wheel_triarc(int k, int p1, int p2, int p3) {
  if (k < 3 || p1 < 0 || p2 < 0 || p3 < 0 || p1 + p2 + p3 != k - 3)
    throw std::invalid_argument(
        "wheel pentagon counts must be nonnegative and sum to k-3");
  std::vector<int> arcs;
  for (int p : {p1, p2, p3}) {
    arcs.push_back(4);
    arcs.insert(arcs.end(), p, 2);
  }
  auto wrap = [k](int i) { return ((i % k) + k) % k; };
  auto label = [&](std::int64_t kind, int i, int j) {
    return (kind << 40) | (static_cast<std::int64_t>(wrap(i)) << 10) | j;
  };
  auto N = [&](int i) { return label(0, i, 0); };
  auto U = [&](int i) { return label(1, i, 0); };
  auto X = [&](int i, int j) { return label(2, i, j); };
  std::vector<std::vector<std::int64_t>> faces;
  {
    std::vector<std::int64_t> nucleus;
    for (int i = 0; i < k; ++i) nucleus.push_back(N(i));
    faces.push_back(std::move(nucleus));
  }
  std::vector<std::int64_t> outer_rev;
  for (int i = 0; i < k; ++i) {
    std::vector<std::int64_t> f{N(i + 1), N(i), U(i)};
    for (int j = 1; j < arcs[i]; ++j) f.push_back(X(i, j));
    f.push_back(U(i + 1));
    faces.push_back(std::move(f));
    outer_rev.push_back(U(i));
    for (int j = 1; j < arcs[i]; ++j) outer_rev.push_back(X(i, j));
  }
  std::vector<std::int64_t> outer(outer_rev.rbegin(), outer_rev.rend());
  faces.push_back(outer);
  FaceSoupResult fs = from_face_soup(faces);
  std::map<std::int64_t, int> outer_pos;
  int n = static_cast<int>(outer.size());
  for (int i = 0; i < n; ++i) outer_pos.emplace(outer[i], i);
  // Corner vertices sit mid-arc on the three heptagons.
  const std::array<int, 3> hpos{0, 1 + p1, 2 + p1 + p2};
  std::array<Dart, 3> cds{};
  for (int c = 0; c < 3; ++c) {
    std::int64_t cv = X(hpos[c], 2);
    int idx = outer_pos.at(cv);
    cds[c] = fs.dart_of.at({cv, outer[(idx + 1) % n]});
  }
  Dart nucleus_dart = fs.dart_of.at({N(0), N(1)});
  return Triarc(std::move(fs.map), cds, {nucleus_dart});
}

Triarc basic_triarc(int k) {
  if (k < 3) throw std::invalid_argument("basic triarc needs face size >= 3");
  Triarc t = wheel_triarc(k, 0, 0, k - 3);
  for (int r = 0; r < 3; ++r) {
    auto s = t.sides();
    if (s[0] == std::max({s[0], s[1], s[2]})) break;
    t = t.rot();
  }
  if (t.sides() != std::array<std::int64_t, 3>{k - 1, 2, 2})
    fail("basic triarc sides wrong");
  return t;
}

Triarc hexagon_triarc(int N) {
  if (N < 1 || N % 2 == 0)
    throw std::invalid_argument("hexagon-nucleus triarc needs odd N >= 1");
  Triarc W = wheel_triarc(6 * N, 2 * N - 1, 2 * N - 1, 2 * N - 1);
  Triarc t = pinwheel_glue(
      W, {peripheral_filler(N), peripheral_filler(N), peripheral_filler(N)});
  std::int64_t want = 2 * N + 2;
  if (t.sides() != std::array<std::int64_t, 3>{want, want, want})
    fail("hexagon-nucleus triarc sides wrong");
  return t;
}

Triarc fixed_triarc(TriarcKind kind) {
  switch (kind) {
    case TriarcKind::T224:
      return rot_to(t224_filler(), {2, 2, 4});
    case TriarcKind::T443:
      return rot_to(t443_filler(), {4, 4, 3});
    case TriarcKind::D888:
      return d888();
    case TriarcKind::HTILE:
      return htile();
  }
  throw std::invalid_argument("unknown fixed patch kind");
}

BoundedMap parallelogram(int m, int l) {
  if (m < 1 || l < 1)
    throw std::invalid_argument("parallelogram needs positive dimensions");
  Cluster cl = make_parallelogram(m, l);
  return excise_face(cl.map, cl.outer_dart);
}

// ---- gluing --------------------------------------------------------------

Triarc glue_raw(const Triarc& t1, const Triarc& t2, bool flips) {
  std::vector<Dart> X = t1.side_segments()[1];
  std::vector<Dart> X2 = t2.side_segments()[1];
  int EA = static_cast<int>(X.size());
  int EB = static_cast<int>(X2.size());
  if (EA % 2 != 0 || EB % 2 != 0 || EA == 0 || EB == 0)
    throw std::invalid_argument("glue side has odd or empty walk");
  Band band = make_band(EA / 2, EB / 2, flips);
  Dart off2 = 0, offP = 0;
  CombMap m12 = map_union(t1.m, t2.m, &off2);
  CombMap m = map_union(m12, band.map, &offP);
  for (Dart& d : X2) d += off2;
  std::vector<Dart> lower = band.lower, bseam = band.bseam;
  for (Dart& d : lower) d += offP;
  for (Dart& d : bseam) d += offP;
  for (int j = 0; j < EA - 1; ++j) sew_edges(m, X[j], lower[EA - 2 - j]);
  sew_edges(m, X[EA - 1], X2[0]);
  for (int j = 1; j < EB; ++j) sew_edges(m, X2[j], bseam[EB - 1 - j]);
  m.check();
  std::array<Dart, 3> corners{t1.corners[0], band.c_hi + offP,
                              t2.corners[0] + off2};
  std::vector<Dart> nuclei = t1.nuclei;
  for (Dart d : t2.nuclei) nuclei.push_back(d + off2);
  return Triarc(std::move(m), corners, std::move(nuclei));
}

Triarc glue_triarcs(const Triarc& t1, const Triarc& t2) {
  if (t1.sides()[1] % 2 != 0)
    throw std::invalid_argument("first glue operand needs even side b");
  if (t2.sides()[2] % 2 != 0)
    throw std::invalid_argument("second glue operand needs even side c");
  return glue_raw(t1, t2.rot());
}

Triarc pinwheel_glue(const Triarc& W, const std::array<Triarc, 3>& ps) {
  auto ws = W.sides();
  std::int64_t s = ws[0];
  if (ws[1] != s || ws[2] != s)
    throw std::invalid_argument("pinwheel core must be equilateral");
  auto Wsegs = W.side_segments();
  CombMap m = W.m;
  std::array<Dart, 3> offs{};
  for (int i = 0; i < 3; ++i) m = map_union(m, ps[i].m, &offs[i]);
  std::array<std::vector<Dart>, 3> Bsegs;
  for (int i = 0; i < 3; ++i) {
    Bsegs[i] = ps[i].side_segments()[2];
    if (static_cast<std::int64_t>(Bsegs[i].size()) != 2 * s + 2)
      throw std::invalid_argument(
          "pinwheel peripheral base must exceed the core side by one");
    for (Dart& d : Bsegs[i]) d += offs[i];
  }
  // Base windows: the middle 2s edges of each base fuse with one core side.
  for (int i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 2 * s; ++j)
      sew_edges(m, Wsegs[i][j], Bsegs[i][2 * s - j]);
  // Connectors: last base edge of peripheral i with the first of i-1.
  for (int i = 0; i < 3; ++i)
    sew_edges(m, Bsegs[i][2 * s + 1], Bsegs[(i + 2) % 3][0]);
  m.check();
  std::array<Dart, 3> corners{};
  for (int i = 0; i < 3; ++i) corners[i] = ps[i].corners[1] + offs[i];
  std::vector<Dart> nuclei = W.nuclei;
  for (int i = 0; i < 3; ++i)
    for (Dart d : ps[i].nuclei) nuclei.push_back(d + offs[i]);
  return Triarc(std::move(m), corners, std::move(nuclei));
}

// ---- enlargement pipeline ------------------------------------------------

Triarc rot_to_isosceles(Triarc t) {
  for (int r = 0; r < 3; ++r) {
    auto s = t.sides();
    if (s[1] == s[2]) return t;
    t = t.rot();
  }
  throw std::invalid_argument("triarc has no isosceles labeling");
}

Triarc equilateralize(Triarc t) {
  t = rot_to_isosceles(std::move(t));
  while (true) {
    auto s = t.sides();
    if (s[0] == s[1]) {
      if (s[0] % 2 != 0) fail("equilateral side came out odd");
      return t;
    }
    t = s[0] > s[1] ? glue_triarcs(t, t443_filler())   // +(3,4,4)
                    : glue_triarcs(t, t224_filler());  // +(4,2,2)
  }
}

Triarc plus10(Triarc t) {
  std::int64_t n = t.sides()[0];
  t = glue_triarcs(t, t224_filler().rot());  // (n+2, n+2, n+4)
  t = t.rot2();                              // (n+4, n+2, n+2)
  t = glue_triarcs(t, t443_filler());        // (n+7, n+6, n+6)
  t = glue_triarcs(t, t443_filler());        // (n+10, n+10, n+10)
  if (t.sides() != std::array<std::int64_t, 3>{n + 10, n + 10, n + 10})
    fail("+10 enlargement sides wrong");
  return t;
}

int congruence_steps(std::int64_t n) {
  for (int a = 0; a < 12; ++a)
    if ((n + 10 * a) % 8 == 0 && (n + 10 * a) % 3 == 2) return a;
  fail("no congruence adjustment within 12 steps");
}

Triarc adjust_congruence(Triarc t, int growth) {
  auto s = t.sides();
  std::int64_t n = s[0];
  if (s[1] != n || s[2] != n || n % 2 != 0)
    throw std::invalid_argument(
        "congruence adjustment needs an equilateral triarc of even side");
  if (growth < 0) throw std::invalid_argument("growth must be nonnegative");
  int steps = congruence_steps(n) + 12 * growth;
  for (int i = 0; i < steps; ++i) t = plus10(std::move(t));
  n = t.sides()[0];
  if (n % 8 != 0 || n % 3 != 2) fail("congruence adjustment missed target");
  return t;
}

Triarc fill_triarc(std::int64_t n) {
  if (n < 8 || n % 8 != 0)
    throw std::invalid_argument("filler side must be a positive multiple of 8");
  Triarc t = d888();
  for (std::int64_t i = 0; i < n / 8 - 1; ++i) t = glue_triarcs(t, d888());
  if (t.sides() != std::array<std::int64_t, 3>{n, n, n})
    fail("filler sides wrong");
  return t;
}

std::optional<std::int64_t> min_nucleus_depth(const Triarc& t) {
  const CombMap& m = t.m;
  VertexIndex vi = m.vertex_index();
  BoundaryProfile bp = boundary_profile(m, t.corners[0]);
  std::vector<char> on_boundary(vi.orbits.size(), 0);
  for (std::int32_t v : bp.tails) on_boundary[v] = 1;
  std::optional<std::int64_t> best;
  for (Dart nd : t.nuclei) {
    std::vector<std::int64_t> dist(vi.orbits.size(), -1);
    std::deque<std::int32_t> dq;
    for (const State& st : m.face_walk_from(nd, +1)) {
      std::int32_t v = vi.of[st.d];
      if (dist[v] < 0) {
        dist[v] = 0;
        dq.push_back(v);
      }
    }
    while (!dq.empty()) {
      std::int32_t v = dq.front();
      dq.pop_front();
      if (on_boundary[v]) {
        if (!best || dist[v] < *best) best = dist[v];
        break;
      }
      for (Dart d : vi.orbits[v]) {
        std::int32_t w = vi.of[m.twin(d)];
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          dq.push_back(w);
        }
      }
    }
  }
  return best;
}

Triarc deepen_nucleus(Triarc t, std::int64_t z) {
  if (z <= 0) return t;
  t = rot_to_isosceles(std::move(t));
  if (t.sides()[0] % 2 != 0)
    t = glue_triarcs(t, t443_filler());  // makes all sides even
  std::int64_t rounds = 0;
  while (true) {
    std::optional<std::int64_t> dep = min_nucleus_depth(t);
    auto s = t.sides();
    if ((!dep || *dep >= z) && std::min({s[0], s[1], s[2]}) >= 3 * z)
      return rot_to_isosceles(std::move(t));
    for (int i = 0; i < 3; ++i) {
      t = glue_triarcs(t, t224_filler());
      t = t.rot();
    }
    ++rounds;
    if (rounds > 3 * z + 12) fail("nucleus deepening failed to converge");
  }
}

}  // namespace cubmap
