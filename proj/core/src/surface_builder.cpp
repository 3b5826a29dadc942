#include "cubmap/surface_builder.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cubmap/verify.hpp"
#include "trace.hpp"

namespace cubmap {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::logic_error(what); }

std::vector<Dart> face_walk(const CombMap& m, Dart d) {
  std::vector<Dart> out;
  for (const State& st : m.face_walk_from(d, +1)) out.push_back(st.d);
  return out;
}

// Subdivide every edge of a face walk; returns the doubled walk with the
// original darts at even positions and the new mid darts at odd positions.
std::vector<Dart> subdivide_walk(CombMap& m, const std::vector<Dart>& walk) {
  std::vector<Dart> out;
  out.reserve(2 * walk.size());
  for (Dart d : walk) {
    if (m.sign(d) != 1) fail("surgery walk crosses a sign-reversed edge");
    auto [g, gb] = m.subdivide_edge(d);
    (void)gb;
    out.push_back(d);
    out.push_back(g);
  }
  return out;
}

// Sizes of all distinct faces incident with any of the given edges.
std::vector<std::int64_t> incident_face_sizes(const CombMap& m,
                                              const std::vector<Dart>& darts) {
  std::unordered_set<std::int64_t> seen;
  std::vector<std::int64_t> sizes;
  for (Dart d : darts)
    for (int s : {+1, -1}) {
      std::int64_t fid = m.face_id_of_state(d, s);
      if (!seen.insert(fid).second) continue;
      sizes.push_back(static_cast<std::int64_t>(m.face_walk_from(d, s).size()));
    }
  return sizes;
}

// Rotational alignment that brings the smallest dart of the first doubled
// walk onto the smallest dart of the second.  Original darts keep smaller
// ids than the mid darts minted by subdivision, so both minima sit at even
// positions and the resulting alignment merges original vertices of one
// side with midpoints of the other (the half twist).
std::int64_t canonical_tau(const std::vector<Dart>& wx,
                           const std::vector<Dart>& wy) {
  std::int64_t i0 = std::min_element(wx.begin(), wx.end()) - wx.begin();
  std::int64_t j0 = std::min_element(wy.begin(), wy.end()) - wy.begin();
  return (i0 + j0) % static_cast<std::int64_t>(wx.size());
}

void sew_seam(CombMap& m, const std::vector<Dart>& wx,
              const std::vector<Dart>& wy, std::int64_t tau) {
  std::int64_t L = static_cast<std::int64_t>(wx.size());
  for (std::int64_t i = 0; i < L; ++i)
    sew_edges(m, wx[i], wy[(((tau - i) % L) + L) % L]);
}

// Least phase (mod 4) whose every-fourth selection touches every octagon
// on the seam, or -1 when no phase works.
int octagon_phase(const CombMap& m, const std::vector<Dart>& wx) {
  std::unordered_map<std::int64_t, std::int64_t> size_of;
  std::unordered_map<std::int64_t, std::vector<int>> octagon_at;
  for (int p = 0; p < static_cast<int>(wx.size()); ++p)
    for (int s : {+1, -1}) {
      std::int64_t fid = m.face_id_of_state(wx[p], s);
      auto it = size_of.find(fid);
      if (it == size_of.end())
        it = size_of
                 .emplace(fid, static_cast<std::int64_t>(
                                   m.face_walk_from(wx[p], s).size()))
                 .first;
      if (it->second == 8) octagon_at[fid].push_back(p);
    }
  for (int phi = 0; phi < 4; ++phi) {
    bool ok = true;
    for (const auto& [fid, positions] : octagon_at) {
      bool touched = false;
      for (int p : positions)
        if (p % 4 == phi) {
          touched = true;
          break;
        }
      if (!touched) {
        ok = false;
        break;
      }
    }
    if (ok) return phi;
  }
  return -1;
}

// Zip the two doubled walks together (the x side survives) and flip every
// fourth surviving seam edge so that every seam-incident face ends at size
// 5 or 7.  The alignment is canonical and the phase is the least one that
// touches every octagon; if that combination fails, the remaining
// twist/phase combinations are tried on scratch copies, smallest first.
void seam_with_repair(CombMap& m, const std::vector<Dart>& wx,
                      const std::vector<Dart>& wy, SurgeryInfo* info) {
  std::int64_t L = static_cast<std::int64_t>(wx.size());
  auto attempt = [&](CombMap& target, std::int64_t tau, int forced_phi) {
    try {
      sew_seam(target, wx, wy, tau);
      int phi = forced_phi >= 0 ? forced_phi : octagon_phase(target, wx);
      if (phi < 0) return false;
      std::vector<Dart> thick;
      for (std::int64_t p = phi; p < L; p += 4) thick.push_back(wx[p]);
      for (Dart d : thick) target.flip_edge(d);
      target.check();
      for (std::int64_t k : incident_face_sizes(target, wx))
        if (k != 5 && k != 7) return false;
      if (info) {
        info->seam = wx;
        info->thick = std::move(thick);
        info->tau = tau;
        info->phi = phi;
      }
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };
  {
    CombMap work = m;
    if (attempt(work, canonical_tau(wx, wy), -1)) {
      m = std::move(work);
      return;
    }
  }
  for (std::int64_t tau : {std::int64_t{0}, std::int64_t{2}})
    for (int phi = 0; phi < 4; ++phi) {
      CombMap work = m;
      if (attempt(work, tau, phi)) {
        m = std::move(work);
        return;
      }
    }
  throw std::invalid_argument("no valid twist/phase for surgery seam");
}

// Antipodally self-identify the boundary of the face traced by `hole`
// (a closed walk h_0 .. h_{2H-1}): vertex q merges with vertex q+H and
// edge q fuses with edge q+H in the same direction around the walk.  The
// walk's vertex degrees must alternate 3,2 with period 4 so every merged
// pair is one degree-3 and one degree-2 vertex; the fused seam is
// one-sided, carried by sign -1 on the surviving spokes and on the single
// wrap edge.
void twist_close(CombMap& m, const std::vector<Dart>& hole) {
  std::int64_t L = static_cast<std::int64_t>(hole.size());
  std::int64_t H = L / 2;
  if (L % 4 != 0 || H % 2 != 0)
    fail("antipodal closure needs a walk length divisible by 4");
  VertexIndex vi = m.vertex_index();  // snapshot before any rewiring
  auto rot = [&](Dart d) -> const std::vector<Dart>& {
    return vi.orbits[vi.of[d]];
  };
  auto other = [&](const std::vector<Dart>& orbit, Dart a, Dart b) {
    Dart found = kNil;
    for (Dart d : orbit)
      if (d != a && d != b) {
        if (found != kNil) fail("ambiguous spoke at antipodal seam");
        found = d;
      }
    if (found == kNil) fail("missing spoke at antipodal seam");
    return found;
  };
  for (std::int64_t q = 0; q < H; ++q) {
    Dart hq = hole[q];
    Dart hw = hole[q + H];
    Dart tb = m.twin(hole[((q - 1) % H + H) % H]);
    if (rot(hq).size() == 2) {
      // The tail of hq is a midpoint; the surviving third dart is the
      // spoke at the far representative (tail of hw).  The far fan glues
      // in reversed, so the spoke lands after tb in the merged rotation
      // and its edge flips orientation sense.
      Dart dead_prev = m.twin(hole[q + H - 1]);
      Dart sp = other(rot(hw), hw, dead_prev);
      m.set_next(tb, sp);
      m.set_next(sp, hq);
      m.set_sign(sp, -1);
    } else if (q == 0) {
      // Degree-3 start of the walk: its backward neighbour dies and is
      // replaced by the far representative's surviving twin.
      Dart dead_prev = m.twin(hole[L - 1]);
      Dart s0 = other(rot(hq), hq, dead_prev);
      m.set_next(s0, tb);
      m.set_next(tb, hq);
    }
  }
  m.set_sign(hole[H - 1], -1);  // the one orientation-reversing core edge
  for (std::int64_t q = H; q < L; ++q) m.kill_edge(hole[q]);
}

void validate_faces(const FaceVector& p) {
  for (const auto& [k, c] : p) {
    if (k == 5 || k == 7)
      throw std::invalid_argument("face sizes 5 and 7 are chosen by the builder");
    if (k < 3) throw std::invalid_argument("face sizes must be at least 3");
    if (c < 0) throw std::invalid_argument("face counts must be nonnegative");
  }
}

void validate_surface(SurfaceSpec S) {
  if (S.orientable && (S.h < 0 || S.c != 0))
    throw std::invalid_argument("orientable surface takes handles only");
  if (!S.orientable && (S.c < 1 || S.h != 0))
    throw std::invalid_argument(
        "non-orientable surface needs at least one crosscap and no handles");
}

std::pair<CombMap, RealizationReport> build_surface_once(const FaceVector& p,
                                                         SurfaceSpec S, int w,
                                                         int growth,
                                                         const BuildPlan& pl,
                                                         int N) {
  const int gon = 6 * N;
  FaceVector q = p;
  q[gon] += pl.aux;
  FaceVector pp = plausibilize(q, S);
  std::vector<Triarc> blocks;
  std::vector<std::size_t> aux_ordinals;
  for (auto it = pp.rbegin(); it != pp.rend(); ++it) {
    const auto& [k, c] = *it;
    if (k == 5 || k == 7) continue;
    std::int64_t remaining = c;
    if (k == gon) {
      for (int i = 0; i < pl.aux; ++i) {
        aux_ordinals.push_back(blocks.size());
        blocks.push_back(hexagon_triarc(N));
      }
      remaining -= pl.aux;
    }
    for (std::int64_t i = 0; i < remaining; ++i)
      blocks.push_back(k == 6 ? hexagon_triarc(1) : basic_triarc(k));
  }
  const std::size_t block_count = blocks.size();
  double t0 = trace::now();
  Triarc T = assemble_blocks(std::move(blocks), pl.z);
  T = equilateralize(std::move(T));
  T = adjust_congruence(std::move(T), growth);
  if (T.nuclei.size() != block_count)
    fail("nucleus bookkeeping lost a block");
  if (trace::on())
    std::fprintf(stderr,
                 "trace: assembled T sides=(%lld,%lld,%lld) darts=%lld "
                 "dt=%.3fs\n",
                 static_cast<long long>(T.sides()[0]),
                 static_cast<long long>(T.sides()[1]),
                 static_cast<long long>(T.sides()[2]),
                 static_cast<long long>(T.m.dart_limit()), trace::now() - t0);
  t0 = trace::now();
  Triarc R = fill_triarc(T.sides()[0]);
  std::vector<const Triarc*> pieces{&T};
  for (int i = 0; i < 19; ++i) pieces.push_back(&R);
  ClosedAssembly ca = close20(pieces);
  CombMap m = std::move(ca.map);
  if (ca.piece_offset[0] != 0) fail("first closure piece must keep its darts");
  if (trace::on())
    std::fprintf(stderr, "trace: closed sphere darts=%lld dt=%.3fs\n",
                 static_cast<long long>(m.dart_limit()), trace::now() - t0);
  std::vector<Dart> aux_darts;
  for (std::size_t ord : aux_ordinals) aux_darts.push_back(T.nuclei[ord]);

  t0 = trace::now();
  for (int i = 0; i < pl.handles; ++i)
    m = add_handle(std::move(m), aux_darts[2 * i], aux_darts[2 * i + 1], N);
  for (int j = 0; j < pl.crosscaps; ++j)
    m = add_crosscap(std::move(m), aux_darts[2 * pl.handles + j], N);
  if (trace::on() && (pl.handles > 0 || pl.crosscaps > 0))
    std::fprintf(stderr, "trace: surgeries done darts=%lld dt=%.3fs\n",
                 static_cast<long long>(m.dart_limit()), trace::now() - t0);

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
  rep.deficit = compute_deficit(p, S);
  for (const auto& [k, c] : p)
    if (k != 5 && k != 7 && count(k) != c)
      fail("prescribed face count not conserved");
  for (const auto& [k, c] : rep.census)
    if (k != 5 && k != 7 &&
        (p.find(k) == p.end() || p.at(k) != c))
      fail("unprescribed face size in output");
  if (rep.chi != S.chi()) fail("surface Euler characteristic wrong");
  if (rep.orientable != S.orientable) fail("surface orientability wrong");
  if (!check_cubic(m)) fail("surface map not cubic");
  if (rep.n7 - rep.n5 != rep.deficit) fail("pentagon/heptagon balance wrong");

  double t1 = trace::now();
  WidthResult ew = edge_width(m);
  if (trace::on())
    std::fprintf(stderr, "trace: edge width=%lld dt=%.3fs\n",
                 static_cast<long long>(ew.value ? *ew.value : -1),
                 trace::now() - t1);
  t1 = trace::now();
  WidthResult fw = face_width(m);
  if (trace::on())
    std::fprintf(stderr, "trace: face width=%lld dt=%.3fs\n",
                 static_cast<long long>(fw.value ? *fw.value : -1),
                 trace::now() - t1);
  if (!ew.value || *ew.value < pl.z)
    fail("edge width below construction target");
  if (!fw.value || *fw.value < w) fail("face width below target");
  rep.edge_width = ew.value;
  rep.face_width = fw.value;
  t1 = trace::now();
  rep.connectivity = connectivity(m);
  if (trace::on())
    std::fprintf(stderr, "trace: connectivity=%d dt=%.3fs\n",
                 rep.connectivity, trace::now() - t1);
  return {std::move(m), std::move(rep)};
}

}  // namespace

BuildPlan plan(const FaceVector& p, SurfaceSpec S, int w) {
  if (w < 1)
    throw std::invalid_argument("face-width target must be at least 1");
  validate_surface(S);
  BuildPlan pl;
  if (S.orientable && S.h == 0) return pl;  // sphere: no surgery
  std::int64_t rp = 7;
  for (const auto& [k, c] : p)
    if (c > 0 && k > rp) rp = k;
  pl.z = (rp * w + 1) / 2;
  int N = 1;
  while (2 * N <= pl.z) N += 2;
  pl.N = N;
  pl.handles = S.orientable ? S.h : 0;
  pl.crosscaps = S.orientable ? 0 : S.c;
  pl.aux = 2 * pl.handles + pl.crosscaps;
  return pl;
}

BoundedMap crosscap_gadget(int N) {
  if (N < 1 || N % 2 == 0)
    throw std::invalid_argument("crosscap scale must be odd and positive");
  const std::int64_t H = 6 * N;
  auto lbl = [](std::int64_t kind, std::int64_t idx) {
    return (kind << 40) | idx;
  };
  auto b = [&](std::int64_t pp) { return lbl(0, ((pp % H) + H) % H); };
  auto mv = [&](std::int64_t pp) { return lbl(1, ((pp % H) + H) % H); };
  auto y = [&](std::int64_t pp) { return lbl(2, ((pp % H) + H) % H); };
  auto c = [&](std::int64_t qq) {
    return lbl(3, ((qq % (2 * H)) + 2 * H) % (2 * H));
  };
  auto foot = [&](std::int64_t pp) {
    pp = ((pp % H) + H) % H;
    return (2 * pp - (pp % 2)) % (2 * H);
  };
  std::vector<std::vector<std::int64_t>> faces;
  for (std::int64_t pos = 0; pos < H; ++pos)  // pentagon ring
    faces.push_back({b(pos), b(pos + 1), mv(pos + 1), y(pos), mv(pos)});
  for (std::int64_t pos = 0; pos < H; ++pos) {  // alternating 5/7 ring
    std::int64_t fp = foot(pos);
    std::int64_t r = (pos % 2 == 0) ? 1 : 3;
    std::vector<std::int64_t> f = {y(pos), mv(pos + 1), y(pos + 1)};
    for (std::int64_t t = 0; t <= r; ++t) f.push_back(c(fp + r - t));
    faces.push_back(std::move(f));
  }
  {
    std::vector<std::int64_t> f;  // boundary face
    for (std::int64_t pos = 0; pos < H; ++pos) f.push_back(b(H - 1 - pos));
    faces.push_back(std::move(f));
  }
  {
    std::vector<std::int64_t> f;  // core hole, closed antipodally below
    for (std::int64_t qq = 0; qq < 2 * H; ++qq) f.push_back(c(qq));
    faces.push_back(std::move(f));
  }
  FaceSoupResult soup = from_face_soup(faces);
  std::vector<Dart> hole;
  for (std::int64_t qq = 0; qq < 2 * H; ++qq)
    hole.push_back(soup.dart_of.at({c(qq), c(qq + 1)}));
  twist_close(soup.map, hole);
  soup.map.check();
  FaceVector want{{5, 9 * std::int64_t{N}}, {7, 3 * std::int64_t{N}}};
  want[static_cast<int>(H)] += 1;
  if (soup.map.face_census() != want) fail("crosscap patch census mismatch");
  if (soup.map.orientable()) fail("crosscap patch is two-sided");
  BoundedMap out;
  out.map = std::move(soup.map);
  out.boundary = face_walk(out.map, soup.dart_of.at({b(1), b(0)}));
  return out;
}

CombMap add_handle(CombMap m, Dart nucleus_a, Dart nucleus_b, int N,
                   SurgeryInfo* info) {
  if (N < 1 || N % 2 == 0)
    throw std::invalid_argument("handle scale must be odd and positive");
  VertexIndex vi = m.vertex_index();
  std::vector<Dart> wA = face_walk(m, nucleus_a);
  std::vector<Dart> wB = face_walk(m, nucleus_b);
  if (wA.size() != wB.size() ||
      static_cast<std::int64_t>(wA.size()) != 6 * std::int64_t{N})
    throw std::invalid_argument("handle nuclei must be equal-size 6N-gons");
  std::unordered_set<std::int32_t> tails;
  for (Dart d : wA) tails.insert(vi.of[d]);
  for (Dart d : wB)
    if (tails.count(vi.of[d]))
      throw std::invalid_argument("handle nuclei share boundary vertices");
  std::vector<Dart> wA2 = subdivide_walk(m, wA);
  std::vector<Dart> wB2 = subdivide_walk(m, wB);
  seam_with_repair(m, wA2, wB2, info);
  m.check();
  return m;
}

CombMap add_crosscap(CombMap m, Dart nucleus, int N, SurgeryInfo* info) {
  if (N < 1 || N % 2 == 0)
    throw std::invalid_argument("crosscap scale must be odd and positive");
  std::vector<Dart> wF = face_walk(m, nucleus);
  if (static_cast<std::int64_t>(wF.size()) != 6 * std::int64_t{N})
    throw std::invalid_argument("crosscap nucleus must be a 6N-gon");
  BoundedMap g = crosscap_gadget(N);
  Dart off = 0;
  CombMap m2 = map_union(m, g.map, &off);
  std::vector<Dart> wB = face_walk(m2, g.boundary[0] + off);
  if (wB.size() != wF.size()) fail("crosscap patch boundary size mismatch");
  std::vector<Dart> wF2 = subdivide_walk(m2, wF);
  std::vector<Dart> wB2 = subdivide_walk(m2, wB);
  seam_with_repair(m2, wF2, wB2, info);
  m2.check();
  return m2;
}

CombMap glue_half_twist(const CombMap& m, Dart face_a, Dart face_b) {
  if (m.face_id_of_state(face_a) == m.face_id_of_state(face_b))
    throw std::invalid_argument("half-twist gluing needs two distinct faces");
  CombMap out = m;
  std::vector<Dart> wA = face_walk(out, face_a);
  std::vector<Dart> wB = face_walk(out, face_b);
  if (wA.size() != wB.size())
    throw std::invalid_argument("half-twist gluing needs equal face sizes");
  std::vector<Dart> wA2 = subdivide_walk(out, wA);
  std::vector<Dart> wB2 = subdivide_walk(out, wB);
  sew_seam(out, wA2, wB2, canonical_tau(wA2, wB2));
  out.check();
  return out;
}

CombMap insert_crosscap_gadget(const CombMap& m, Dart face_dart, int N) {
  if (N < 1 || N % 2 == 0)
    throw std::invalid_argument("crosscap scale must be odd and positive");
  CombMap out = m;
  std::vector<Dart> wF = face_walk(out, face_dart);
  if (static_cast<std::int64_t>(wF.size()) != 6 * std::int64_t{N})
    throw std::invalid_argument("crosscap nucleus must be a 6N-gon");
  BoundedMap g = crosscap_gadget(N);
  Dart off = 0;
  out = map_union(out, g.map, &off);
  std::vector<Dart> wB = face_walk(out, g.boundary[0] + off);
  if (wB.size() != wF.size()) fail("crosscap patch boundary size mismatch");
  std::vector<Dart> wF2 = subdivide_walk(out, wF);
  std::vector<Dart> wB2 = subdivide_walk(out, wB);
  sew_seam(out, wF2, wB2, canonical_tau(wF2, wB2));
  out.check();
  return out;
}

std::pair<CombMap, RealizationReport> build_surface(const FaceVector& p,
                                                    SurfaceSpec S, int w,
                                                    int growth) {
  validate_faces(p);
  validate_surface(S);
  if (w < 1)
    throw std::invalid_argument("face-width target must be at least 1");
  if (growth < 0)
    throw std::invalid_argument("growth must be nonnegative");
  if (S.orientable && S.h == 0) {
    // Sphere: every cycle is contractible, so any width target is met
    // without deepening or surgery.
    return build_sphere(BuildRequest{p, growth});
  }
  BuildPlan pl = plan(p, S, w);
  std::string last_error;
  for (int attempt = 0; attempt < 5; ++attempt) {
    int N = pl.N + 2 * attempt;
    try {
      return build_surface_once(p, S, w, growth, pl, N);
    } catch (const std::invalid_argument& e) {
      last_error = e.what();
    } catch (const std::logic_error& e) {
      last_error = e.what();
    }
  }
  throw std::runtime_error("surface build failed after scale escalation: " +
                           last_error);
}

}  // namespace cubmap
