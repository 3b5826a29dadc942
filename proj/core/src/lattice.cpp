#include "cubmap/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cubmap {

std::array<LatticeKey, 6> hex_corner_keys(int q, int r) {
  // Doubled coordinates of the unit-hexagon corners around center
  // (1.5q, sqrt(3)(r + q/2)): x doubled, y doubled and divided by sqrt(3).
  static constexpr int C[6] = {2, 1, -1, -2, -1, 1};
  static constexpr int S[6] = {0, 1, 1, 0, -1, -1};
  std::array<LatticeKey, 6> out;
  for (int i = 0; i < 6; ++i)
    out[i] = {3 * q + C[i], 2 * r + q + S[i]};
  return out;
}

Cluster build_cluster(const std::vector<Hex>& hexes) {
  Cluster cl;
  std::vector<Hex> sorted_hexes = hexes;
  std::sort(sorted_hexes.begin(), sorted_hexes.end());
  auto vid = [&cl](LatticeKey k) -> std::int64_t {
    auto it = cl.id_of_key.find(k);
    if (it != cl.id_of_key.end()) return it->second;
    std::int64_t id = static_cast<std::int64_t>(cl.id_of_key.size());
    cl.id_of_key.emplace(k, id);
    return id;
  };
  for (const auto& [q, r] : sorted_hexes) {
    std::vector<std::int64_t> f;
    for (LatticeKey k : hex_corner_keys(q, r)) f.push_back(vid(k));
    cl.hex_faces.push_back(std::move(f));
  }
  // Boundary: directed edges whose reversal no hexagon uses, linked
  // head-to-tail into the clockwise outer cycle.
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  for (const auto& f : cl.hex_faces) {
    for (std::size_t i = 0; i < f.size(); ++i)
      used.insert({f[i], f[(i + 1) % f.size()]});
  }
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> starts;
  for (const auto& [u, v] : used) {
    if (!used.count({v, u})) {
      if (!starts.emplace(v, std::make_pair(v, u)).second)
        throw std::logic_error("non-simple cluster boundary");
    }
  }
  if (starts.empty()) throw std::logic_error("cluster has no boundary");
  std::int64_t v0 = starts.begin()->first;
  auto cur = starts.at(v0);
  while (true) {
    cl.outer.push_back(cur.first);
    cur = starts.at(cur.second);
    if (cur.first == v0) break;
  }
  std::vector<std::vector<std::int64_t>> soup = cl.hex_faces;
  soup.push_back(cl.outer);
  FaceSoupResult fs = from_face_soup(soup);
  cl.map = std::move(fs.map);
  cl.dart_of = std::move(fs.dart_of);
  cl.outer_dart = cl.dart_of.at({cl.outer[0], cl.outer[1]});
  return cl;
}

std::vector<Hex> triangle_hexes(int n) {
  std::vector<Hex> out;
  for (int q = 0; q < n; ++q)
    for (int r = 0; r < n - q; ++r) out.push_back({q, r});
  return out;
}

std::vector<Hex> para_hexes(int a, int b) {
  std::vector<Hex> out;
  for (int q = 0; q < a; ++q)
    for (int r = 0; r < b; ++r) out.push_back({q, r});
  return out;
}

Dart shared_edge_dart(const Cluster& cl, Hex ha, Hex hb) {
  auto ka = hex_corner_keys(ha.first, ha.second);
  auto kb = hex_corner_keys(hb.first, hb.second);
  std::vector<std::int64_t> common;
  for (LatticeKey a : ka)
    for (LatticeKey b : kb)
      if (a == b) common.push_back(cl.id_of_key.at(a));
  if (common.size() != 2)
    throw std::invalid_argument("hexagons do not share an edge");
  return cl.dart_of.at({common[0], common[1]});
}

Cluster make_parallelogram(int m, int l) {
  Cluster cl = build_cluster(para_hexes(2 * m, 2 * l));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < l; ++j) {
      Dart d = shared_edge_dart(cl, {2 * i + 1, 2 * j}, {2 * i, 2 * j + 1});
      cl.map.flip_edge(d);
    }
  }
  cl.map.check();
  return cl;
}

BoundaryProfile boundary_profile(const CombMap& m, Dart outer_dart) {
  BoundaryProfile bp;
  for (const State& st : m.face_walk_from(outer_dart, +1))
    bp.walk.push_back(st.d);
  bp.vi = m.vertex_index();
  for (Dart d : bp.walk) {
    std::int32_t v = bp.vi.of[d];
    bp.tails.push_back(v);
    bp.degs.push_back(static_cast<int>(bp.vi.orbits[v].size()));
  }
  return bp;
}

TriarcDiagnostics validate_triarc(
    const CombMap& m, Dart outer_dart, const std::array<Dart, 3>& corner_darts,
    const std::optional<std::array<std::int64_t, 3>>& expect_sides,
    std::optional<Dart> nucleus_dart) {
  TriarcDiagnostics diag;
  BoundaryProfile bp = boundary_profile(m, outer_dart);
  const std::int64_t B = static_cast<std::int64_t>(bp.walk.size());
  diag.boundary = B;
  std::map<Dart, std::int64_t> pos;
  for (std::int64_t i = 0; i < B; ++i) pos[bp.walk[i]] = i;
  for (Dart c : corner_darts) {
    if (!pos.count(c)) {
      diag.error = "corner dart not on outer walk";
      return diag;
    }
  }
  std::array<std::int64_t, 3> cps{pos[corner_darts[0]], pos[corner_darts[1]],
                                  pos[corner_darts[2]]};
  std::sort(cps.begin(), cps.end());
  std::set<std::int32_t> corner_tails{bp.tails[cps[0]], bp.tails[cps[1]],
                                      bp.tails[cps[2]]};
  if (corner_tails.size() != 3) {
    diag.error = "corner vertices not distinct";
    return diag;
  }
  for (int i = 0; i < 3; ++i) {
    std::int64_t a = cps[i], b = cps[(i + 1) % 3];
    if (bp.degs[a] != 2) {
      diag.error = "corner degree != 2";
      return diag;
    }
    std::vector<int> seg;
    for (std::int64_t j = (a + 1) % B; j != b; j = (j + 1) % B)
      seg.push_back(bp.degs[j]);
    if (seg.size() % 2 != 1) {
      diag.error = "side parity wrong";
      return diag;
    }
    for (std::size_t t = 0; t < seg.size(); ++t) {
      int want = (t % 2 == 0) ? 2 : 3;
      if (seg[t] != want) {
        diag.error = "side degree pattern broken";
        return diag;
      }
    }
    diag.sides[i] = static_cast<std::int64_t>(seg.size() + 1) / 2;
  }
  std::set<std::int32_t> boundary_tails(bp.tails.begin(), bp.tails.end());
  for (std::size_t v = 0; v < bp.vi.orbits.size(); ++v) {
    if (!boundary_tails.count(static_cast<std::int32_t>(v)) &&
        bp.vi.orbits[v].size() != 3) {
      diag.error = "interior vertex degree != 3";
      return diag;
    }
  }
  std::int64_t ofid = m.face_id_of_state(outer_dart, +1);
  std::int64_t curvature = 0;
  for (const auto& f : m.faces()) {
    if (m.face_id_of_state(f[0].d, f[0].s) == ofid) continue;
    curvature += 6 - static_cast<std::int64_t>(f.size());
    diag.census[static_cast<int>(f.size())] += 1;
  }
  if (curvature != 0) {
    diag.error = "patch not neutral";
    return diag;
  }
  std::int64_t n2 = 0, n3 = 0;
  for (int dg : bp.degs) (dg == 2 ? n2 : n3) += 1;
  if (n2 - n3 != 6) {
    diag.error = "boundary count identity broken";
    return diag;
  }
  if (expect_sides) {
    std::array<std::int64_t, 3> got = diag.sides, want = *expect_sides;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) {
      diag.error = "side lengths differ from expectation";
      return diag;
    }
  }
  if (nucleus_dart) {
    if (m.face_id_of_state(*nucleus_dart, +1) == ofid) {
      diag.error = "nucleus dart lies on the outer face";
      return diag;
    }
    diag.nucleus_size =
        static_cast<std::int64_t>(m.face_walk_from(*nucleus_dart, +1).size());
  }
  diag.ok = true;
  return diag;
}

std::vector<Dart> find_corner_darts(const CombMap& m, Dart outer_dart) {
  BoundaryProfile bp = boundary_profile(m, outer_dart);
  const std::int64_t B = static_cast<std::int64_t>(bp.walk.size());
  std::vector<Dart> out;
  for (std::int64_t i = 0; i < B; ++i) {
    if (bp.degs[i] == 2 && bp.degs[(i + B - 1) % B] == 2 &&
        bp.degs[(i + 1) % B] == 2)
      out.push_back(bp.walk[i]);
  }
  return out;
}

std::array<std::int64_t, 4> parallelogram_profile(const CombMap& m,
                                                  Dart outer_dart) {
  BoundaryProfile bp = boundary_profile(m, outer_dart);
  const std::int64_t B = static_cast<std::int64_t>(bp.walk.size());
  // Cut points: centers of the two runs of three consecutive degree-2
  // vertices (the 60-degree corners), and the middles of the two runs of
  // exactly two (the 120-degree corner pairs).  Cuts are encoded as
  // half-open positions in doubled coordinates to allow mid-edge cuts.
  std::vector<std::int64_t> cuts;  // doubled positions
  for (std::int64_t i = 0; i < B; ++i) {
    bool prev2 = bp.degs[(i + B - 1) % B] == 2;
    bool next2 = bp.degs[(i + 1) % B] == 2;
    if (bp.degs[i] != 2) continue;
    if (prev2 && next2) cuts.push_back(2 * i);  // run-of-3 center
    if (!prev2 && next2 && bp.degs[(i + 2) % B] != 2)
      cuts.push_back(2 * i + 1);  // middle of a run of exactly two
  }
  if (cuts.size() != 4)
    throw std::invalid_argument("patch is not a parallelogram");
  std::sort(cuts.begin(), cuts.end());
  // Count degree-2 vertices strictly between consecutive cuts; open
  // intervals drop the 60-degree corner vertices while the odd mid-pair
  // cuts never hit a vertex position.
  std::array<std::int64_t, 4> sides{};
  for (int s = 0; s < 4; ++s) {
    std::int64_t a = cuts[s];
    std::int64_t b = cuts[(s + 1) % 4] + (s == 3 ? 2 * B : 0);
    std::int64_t count = 0;
    for (std::int64_t doubled = a + 1; doubled < b; ++doubled) {
      if (doubled % 2 != 0) continue;
      std::int64_t i = (doubled / 2) % B;
      if (bp.degs[i] == 2) ++count;
    }
    sides[s] = count;
  }
  return sides;
}

}  // namespace cubmap
