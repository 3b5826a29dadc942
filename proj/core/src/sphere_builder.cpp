#include "cubmap/sphere_builder.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "cubmap/verify.hpp"

namespace cubmap {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::logic_error(what); }

void validate_request_faces(const FaceVector& p) {
  for (const auto& [k, c] : p) {
    if (k == 5 || k == 7)
      throw std::invalid_argument("face sizes 5 and 7 are chosen by the builder");
    if (k < 3) throw std::invalid_argument("face sizes must be at least 3");
    if (c < 0) throw std::invalid_argument("face counts must be nonnegative");
  }
}

}  // namespace

std::int64_t compute_deficit(const FaceVector& p, SurfaceSpec S) {
  std::int64_t s = 0;
  for (const auto& [k, c] : p)
    if (k != 5 && k != 7) s += static_cast<std::int64_t>(6 - k) * c;
  return s - 6 * S.chi();
}

FaceVector plausibilize(const FaceVector& p, SurfaceSpec S) {
  FaceVector q;
  for (const auto& [k, c] : p)
    if (k != 5 && k != 7 && c > 0) q[k] = c;
  std::int64_t s = compute_deficit(p, S);
  if (s < 0)
    q[5] = -s;
  else if (s > 0)
    q[7] = s;
  return q;
}

Triarc assemble_blocks(std::vector<Triarc> blocks, std::int64_t z) {
  if (blocks.empty())
    blocks.push_back(rot_to_isosceles(fixed_triarc(TriarcKind::T224)));
  for (Triarc& b : blocks) b = deepen_nucleus(std::move(b), z);
  Triarc acc = std::move(blocks[0]);
  for (std::size_t i = 1; i < blocks.size(); ++i)
    acc = glue_triarcs(rot_to_isosceles(std::move(acc)),
                       rot_to_isosceles(std::move(blocks[i])));
  return acc;
}

Triarc assemble_T(const FaceVector& pp, std::int64_t z) {
  std::vector<Triarc> blocks;
  for (auto it = pp.rbegin(); it != pp.rend(); ++it) {
    const auto& [k, c] = *it;
    if (k == 5 || k == 7) continue;
    for (std::int64_t i = 0; i < c; ++i)
      blocks.push_back(k == 6 ? hexagon_triarc(1) : basic_triarc(k));
  }
  return assemble_blocks(std::move(blocks), z);
}

std::vector<std::array<int, 3>> icosa_faces() {
  auto U = [](int i) { return 1 + (i % 5); };
  auto L = [](int i) { return 6 + (i % 5); };
  std::vector<std::set<int>> tris;
  for (int i = 0; i < 5; ++i) {
    tris.push_back({0, U(i), U(i + 1)});
    tris.push_back({U(i), U(i + 1), L(i)});
    tris.push_back({U(i + 1), L(i), L(i + 1)});
    tris.push_back({11, L(i), L(i + 1)});
  }
  std::vector<std::array<int, 3>> oriented(20, {-1, -1, -1});
  std::vector<char> done(20, 0);
  {
    std::vector<int> f0(tris[0].begin(), tris[0].end());
    oriented[0] = {f0[0], f0[1], f0[2]};
    done[0] = 1;
  }
  std::deque<int> dq{0};
  while (!dq.empty()) {
    int fi = dq.front();
    dq.pop_front();
    const auto& cyc = oriented[fi];
    std::set<std::pair<int, int>> dedges;
    for (int j = 0; j < 3; ++j) dedges.insert({cyc[j], cyc[(j + 1) % 3]});
    for (int gj = 0; gj < 20; ++gj) {
      if (done[gj]) continue;
      std::vector<int> shared;
      for (int x : tris[gj])
        if (tris[fi].count(x)) shared.push_back(x);
      if (shared.size() != 2) continue;
      int a = shared[0], b = shared[1];  // ascending (set order)
      std::pair<int, int> need =
          dedges.count({a, b}) ? std::pair<int, int>{b, a}
                               : std::pair<int, int>{a, b};
      int c = -1;
      for (int x : tris[gj])
        if (x != a && x != b) c = x;
      oriented[gj] = {need.first, need.second, c};
      done[gj] = 1;
      dq.push_back(gj);
    }
  }
  std::set<std::pair<int, int>> alld;
  for (const auto& cyc : oriented)
    for (int j = 0; j < 3; ++j)
      if (!alld.insert({cyc[j], cyc[(j + 1) % 3]}).second)
        fail("icosahedral orientation repeats a directed edge");
  if (alld.size() != 60) fail("icosahedral orientation incomplete");
  return oriented;
}

ClosedAssembly close20(const std::vector<const Triarc*>& pieces) {
  if (pieces.size() != 20)
    throw std::invalid_argument("icosahedral closure needs exactly 20 pieces");
  std::int64_t n = pieces[0]->sides()[0];
  for (const Triarc* t : pieces)
    if (t->sides() != std::array<std::int64_t, 3>{n, n, n})
      throw std::invalid_argument(
          "closure pieces must be equilateral with one common side");
  std::vector<std::array<int, 3>> faces = icosa_faces();
  ClosedAssembly out;
  out.map = pieces[0]->m;
  out.piece_offset.assign(20, 0);
  for (int i = 1; i < 20; ++i)
    out.map = map_union(out.map, pieces[i]->m, &out.piece_offset[i]);
  std::vector<std::array<std::vector<Dart>, 3>> segs(20);
  for (int fi = 0; fi < 20; ++fi) {
    segs[fi] = pieces[fi]->side_segments();
    for (auto& seg : segs[fi])
      for (Dart& d : seg) d += out.piece_offset[fi];
  }
  std::map<std::pair<int, int>, std::pair<int, int>> side_of;
  for (int fi = 0; fi < 20; ++fi)
    for (int j = 0; j < 3; ++j)
      side_of[{faces[fi][j], faces[fi][(j + 1) % 3]}] = {fi, j};
  std::int64_t E = 2 * n;
  // Each seam fuses 2n-1 edge pairs offset by one; the leftover edges
  // close up as twelve pentagons at the assembly vertices.
  for (int fi = 0; fi < 20; ++fi)
    for (int j = 0; j < 3; ++j) {
      int a = faces[fi][j], b = faces[fi][(j + 1) % 3];
      if (a > b) continue;
      auto [gj, j2] = side_of.at({b, a});
      const std::vector<Dart>& A = segs[fi][j];
      const std::vector<Dart>& B = segs[gj][j2];
      for (std::int64_t tt = 0; tt < E - 1; ++tt)
        sew_edges(out.map, A[tt], B[E - 2 - tt]);
    }
  out.map.check();
  return out;
}

CombMap close_sphere(const Triarc& Tp, const Triarc& R) {
  std::array<std::int64_t, 3> st = Tp.sides(), sr = R.sides();
  std::int64_t n = st[0];
  if (st != std::array<std::int64_t, 3>{n, n, n} ||
      sr != std::array<std::int64_t, 3>{n, n, n})
    throw std::invalid_argument(
        "closure needs equilateral pieces of equal side");
  if (n % 3 != 2)
    throw std::invalid_argument("closure side must be 2 mod 3");
  if (n % 8 != 0)
    throw std::invalid_argument("closure side must be a multiple of 8");
  std::vector<const Triarc*> pieces{&Tp};
  for (int i = 0; i < 19; ++i) pieces.push_back(&R);
  return close20(pieces).map;
}

std::pair<CombMap, RealizationReport> build_sphere(const BuildRequest& req) {
  validate_request_faces(req.faces);
  if (req.growth < 0)
    throw std::invalid_argument("growth must be nonnegative");
  SurfaceSpec S = SurfaceSpec::sphere();
  FaceVector pp = plausibilize(req.faces, S);
  Triarc T = assemble_T(pp, 0);
  T = equilateralize(std::move(T));
  T = adjust_congruence(std::move(T), req.growth);
  Triarc R = fill_triarc(T.sides()[0]);
  CombMap m = close_sphere(T, R);

  RealizationReport rep;
  rep.census = m.face_census();
  rep.chi = m.euler_characteristic();
  rep.orientable = m.orientable();
  auto count = [&rep](int k) {
    auto it = rep.census.find(k);
    return it == rep.census.end() ? std::int64_t{0} : it->second;
  };
  rep.n5 = count(5);
  rep.n7 = count(7);
  rep.deficit = compute_deficit(req.faces, S);
  rep.connectivity = connectivity(m);

  if (rep.chi != 2 || !rep.orientable) fail("closed sphere is not a sphere");
  if (rep.n7 - rep.n5 != rep.deficit) fail("pentagon/heptagon balance wrong");
  for (const auto& [k, c] : req.faces)
    if (k != 5 && k != 7 && count(k) != c)
      fail("prescribed face count not conserved");
  for (const auto& [k, c] : rep.census)
    if (k != 5 && k != 7 &&
        (req.faces.find(k) == req.faces.end() || req.faces.at(k) != c))
      fail("unprescribed face size in output");
  return {std::move(m), std::move(rep)};
}

}  // namespace cubmap
