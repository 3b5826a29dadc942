#include "cubmap/map.hpp"

#include <algorithm>
#include <set>

namespace cubmap {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::logic_error(what);
}

}  // namespace

CombMap CombMap::from_arrays(std::vector<Dart> twin, std::vector<Dart> next,
                             std::vector<std::int8_t> sign) {
  if (twin.size() != next.size() || twin.size() != sign.size())
    fail("from_arrays: array size mismatch");
  CombMap m;
  m.twin_ = std::move(twin);
  m.next_ = std::move(next);
  m.sign_ = std::move(sign);
  m.prev_.assign(m.twin_.size(), kNil);
  m.alive_.assign(m.twin_.size(), 1);
  m.live_ = static_cast<int>(m.twin_.size());
  for (Dart d = 0; d < m.dart_limit(); ++d) {
    Dart n = m.next_[d];
    if (n < 0 || n >= m.dart_limit()) fail("from_arrays: next out of range");
    m.prev_[n] = d;
  }
  m.check();
  return m;
}

std::vector<Dart> CombMap::darts() const {
  std::vector<Dart> out;
  out.reserve(live_);
  for (Dart d = 0; d < dart_limit(); ++d)
    if (alive_[d]) out.push_back(d);
  return out;
}

std::pair<Dart, Dart> CombMap::new_edge(int sign) {
  Dart d = dart_limit();
  twin_.push_back(d + 1);
  twin_.push_back(d);
  next_.push_back(kNil);
  next_.push_back(kNil);
  prev_.push_back(kNil);
  prev_.push_back(kNil);
  sign_.push_back(static_cast<std::int8_t>(sign));
  sign_.push_back(static_cast<std::int8_t>(sign));
  alive_.push_back(1);
  alive_.push_back(1);
  live_ += 2;
  return {d, d + 1};
}

void CombMap::kill_edge(Dart d) {
  Dart t = twin_[d];
  if (alive_[d]) --live_;
  if (alive_[t]) --live_;
  alive_[d] = 0;
  alive_[t] = 0;
}

void CombMap::set_rotation(const std::vector<Dart>& cycle) {
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) set_next(cycle[i], cycle[(i + 1) % k]);
}

void CombMap::check() const {
  std::vector<std::uint8_t> seen_next(dart_limit(), 0);
  int live_seen = 0;
  for (Dart d = 0; d < dart_limit(); ++d) {
    if (!alive_[d]) continue;
    ++live_seen;
    Dart t = twin_[d];
    if (t == d) fail("twin fixed point at dart " + std::to_string(d));
    if (t < 0 || t >= dart_limit() || !alive_[t])
      fail("twin of live dart " + std::to_string(d) + " dead");
    if (twin_[t] != d) fail("twin not involutive at " + std::to_string(d));
    if (sign_[d] != sign_[t])
      fail("edge sign mismatch at " + std::to_string(d));
    if (sign_[d] != 1 && sign_[d] != -1)
      fail("bad sign at " + std::to_string(d));
    Dart n = next_[d];
    if (n < 0 || n >= dart_limit() || !alive_[n])
      fail("next of " + std::to_string(d) + " dead or unset");
    if (seen_next[n]) fail("next not injective hitting " + std::to_string(n));
    seen_next[n] = 1;
    if (prev_[n] != d)
      fail("prev inconsistent at " + std::to_string(d) + "->" +
           std::to_string(n));
  }
  if (live_seen != live_) fail("live dart count out of sync");
  if (live_seen % 2 != 0) fail("odd number of live darts");
}

std::vector<std::vector<Dart>> CombMap::vertices() const {
  std::vector<std::uint8_t> seen(dart_limit(), 0);
  std::vector<std::vector<Dart>> out;
  for (Dart d = 0; d < dart_limit(); ++d) {
    if (!alive_[d] || seen[d]) continue;
    std::vector<Dart> orb;
    Dart e = d;
    while (!seen[e]) {
      seen[e] = 1;
      orb.push_back(e);
      e = next_[e];
    }
    out.push_back(std::move(orb));
  }
  return out;
}

VertexIndex CombMap::vertex_index() const {
  VertexIndex vi;
  vi.orbits = vertices();
  vi.of.assign(dart_limit(), -1);
  for (std::size_t i = 0; i < vi.orbits.size(); ++i)
    for (Dart d : vi.orbits[i]) vi.of[d] = static_cast<std::int32_t>(i);
  return vi;
}

std::vector<State> CombMap::face_walk_from(Dart d, int s) const {
  std::vector<State> orb;
  State start{d, s};
  State cur = start;
  do {
    orb.push_back(cur);
    cur = step(cur);
  } while (!(cur == start));
  return orb;
}

std::vector<std::vector<State>> CombMap::faces() const {
  // Collect all orbits of the state permutation, then keep one orbit of
  // each rho-pair (the one holding the smaller minimal encoded state).
  std::vector<std::int32_t> orbit_of(2 * static_cast<std::size_t>(dart_limit()),
                                     -1);
  std::vector<std::vector<State>> orbits;
  std::vector<std::int64_t> orbit_min;
  for (Dart d = 0; d < dart_limit(); ++d) {
    if (!alive_[d]) continue;
    for (int s : {+1, -1}) {
      State st{d, s};
      if (orbit_of[encode_state(st)] != -1) continue;
      std::int32_t id = static_cast<std::int32_t>(orbits.size());
      std::vector<State> orb;
      std::int64_t mn = encode_state(st);
      State cur = st;
      while (orbit_of[encode_state(cur)] == -1) {
        orbit_of[encode_state(cur)] = id;
        mn = std::min(mn, encode_state(cur));
        orb.push_back(cur);
        cur = step(cur);
      }
      orbits.push_back(std::move(orb));
      orbit_min.push_back(mn);
    }
  }
  std::vector<std::vector<State>> out;
  std::vector<std::uint8_t> used(orbits.size(), 0);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (used[i]) continue;
    std::int32_t j = orbit_of[encode_state(rho(orbits[i][0]))];
    if (j == static_cast<std::int32_t>(i))
      fail("one-sided face orbit (impossible)");
    used[i] = 1;
    used[j] = 1;
    if (orbit_min[i] <= orbit_min[j])
      out.push_back(std::move(orbits[i]));
    else
      out.push_back(std::move(orbits[j]));
  }
  return out;
}

std::int64_t CombMap::face_id_of_state(Dart d, int s) const {
  std::int64_t best = -1;
  State start{d, s};
  State cur = start;
  do {
    std::int64_t e1 = encode_state(cur);
    std::int64_t e2 = encode_state(rho(cur));
    std::int64_t mn = std::min(e1, e2);
    if (best < 0 || mn < best) best = mn;
    cur = step(cur);
  } while (!(cur == start));
  return best;
}

FaceVector CombMap::face_census() const {
  FaceVector out;
  for (const auto& f : faces()) out[static_cast<int>(f.size())] += 1;
  return out;
}

Counts CombMap::counts() const {
  Counts c;
  c.v = static_cast<std::int64_t>(vertices().size());
  c.e = live_ / 2;
  c.f = static_cast<std::int64_t>(faces().size());
  return c;
}

int CombMap::euler_characteristic() const {
  Counts c = counts();
  return static_cast<int>(c.v - c.e + c.f);
}

bool CombMap::orientable() const {
  // Signed-graph balance: 2-color the vertices so that every edge sign
  // equals the product of its endpoint colors; a failure means some cycle
  // has negative sign product.
  VertexIndex vi = vertex_index();
  std::vector<int> color(vi.orbits.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < vi.orbits.size(); ++root) {
    if (color[root] != 0) continue;
    color[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (Dart d : vi.orbits[v]) {
        std::size_t u = static_cast<std::size_t>(vi.of[twin_[d]]);
        int want = color[v] * sign_[d];
        if (color[u] == 0) {
          color[u] = want;
          stack.push_back(u);
        } else if (color[u] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

void CombMap::vertex_flip(const std::vector<Dart>& vertex_darts) {
  std::set<Dart> at_v(vertex_darts.begin(), vertex_darts.end());
  std::vector<Dart> rev(vertex_darts.rbegin(), vertex_darts.rend());
  set_rotation(rev);
  for (Dart d : vertex_darts) {
    Dart t = twin_[d];
    if (!at_v.count(t)) {
      sign_[d] = static_cast<std::int8_t>(-sign_[d]);
      sign_[t] = sign_[d];
    }
  }
}

void CombMap::flip_edge(Dart d) {
  if (sign_[d] != 1) {
    // Normalize: re-orient the head vertex so the edge sign turns positive.
    VertexIndex vi = vertex_index();
    vertex_flip(vi.orbits[vi.of[twin_[d]]]);
  }
  if (sign_[d] != 1) fail("flip normalization failed (loop edge?)");
  Dart td = twin_[d];
  Dart a = next_[d];
  Dart b = next_[a];
  if (next_[b] != d) throw std::invalid_argument("flip endpoint not degree 3");
  Dart c = next_[td];
  Dart f = next_[c];
  if (next_[f] != td)
    throw std::invalid_argument("flip endpoint not degree 3");
  // Four pairwise distinct faces: the two incident with the edge and the
  // two opposite ones at the endpoints (through the third rotation darts).
  std::set<std::int64_t> around{face_id_of_state(d, 1), face_id_of_state(td, 1),
                                face_id_of_state(b, 1),
                                face_id_of_state(f, 1)};
  if (around.size() != 4)
    throw std::invalid_argument("flip neighborhood degenerate");
  set_rotation({d, b, c});
  set_rotation({td, f, a});
}

std::pair<Dart, Dart> CombMap::subdivide_edge(Dart d) {
  Dart td = twin_[d];
  auto [g, gb] = new_edge(+1);
  Dart pv = prev_[td];
  Dart nv = next_[td];
  if (pv == td) {
    set_next(gb, gb);  // degree-1 head; never produced by the builders
  } else {
    set_next(pv, gb);
    set_next(gb, nv);
  }
  set_rotation({td, g});
  return {g, gb};
}

CombMap CombMap::compact(std::vector<Dart>* remap_out) const {
  std::vector<Dart> remap(dart_limit(), kNil);
  CombMap m;
  m.twin_.reserve(live_);
  m.next_.reserve(live_);
  m.prev_.assign(live_, kNil);
  m.sign_.reserve(live_);
  m.alive_.assign(live_, 1);
  m.live_ = live_;
  Dart id = 0;
  for (Dart d = 0; d < dart_limit(); ++d)
    if (alive_[d]) remap[d] = id++;
  for (Dart d = 0; d < dart_limit(); ++d) {
    if (!alive_[d]) continue;
    m.twin_.push_back(remap[twin_[d]]);
    m.next_.push_back(remap[next_[d]]);
    m.sign_.push_back(sign_[d]);
  }
  for (Dart d = 0; d < static_cast<Dart>(m.next_.size()); ++d)
    m.prev_[m.next_[d]] = d;
  if (remap_out) *remap_out = std::move(remap);
  return m;
}

CombMap map_union(const CombMap& a, const CombMap& b, Dart* offset_b) {
  CombMap m = a;
  Dart off = a.dart_limit();
  // Both arenas allocate edges as consecutive dart pairs and never reuse
  // ids, so copying b is a pairwise replay followed by rewiring.
  for (Dart e = 0; e < b.dart_limit(); e += 2) {
    if (b.twin(e) != e + 1 || b.twin(e + 1) != e)
      fail("map_union: non-paired twin layout");
    auto [x, y] = m.new_edge(b.sign(e));
    (void)x;
    (void)y;
    if (!b.alive(e)) m.kill_edge(off + e);
  }
  for (Dart d = 0; d < b.dart_limit(); ++d) {
    if (!b.alive(d)) continue;
    if (b.next(d) != kNil) m.set_next(off + d, off + b.next(d));
  }
  if (offset_b) *offset_b = off;
  return m;
}

FaceSoupResult from_face_soup(
    const std::vector<std::vector<std::int64_t>>& faces) {
  FaceSoupResult r;
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  for (const auto& f : faces) {
    const std::size_t k = f.size();
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t u = f[i], v = f[(i + 1) % k];
      if (!used.insert({u, v}).second)
        throw std::invalid_argument("face soup repeats a directed edge");
      auto rev = r.dart_of.find({v, u});
      if (rev != r.dart_of.end()) {
        r.dart_of[{u, v}] = r.map.twin(rev->second);
      } else {
        auto [d, db] = r.map.new_edge();
        r.dart_of[{u, v}] = d;
        r.dart_of[{v, u}] = db;
      }
    }
  }
  std::vector<Dart> face_next(r.map.dart_limit(), kNil);
  std::size_t assigned = 0;
  for (const auto& f : faces) {
    const std::size_t k = f.size();
    for (std::size_t i = 0; i < k; ++i) {
      Dart e = r.dart_of.at({f[i], f[(i + 1) % k]});
      Dart e2 = r.dart_of.at({f[(i + 1) % k], f[(i + 2) % k]});
      face_next[e] = e2;
      ++assigned;
    }
  }
  if (assigned != static_cast<std::size_t>(r.map.dart_limit()))
    throw std::invalid_argument("face soup not closed");
  for (Dart d = 0; d < r.map.dart_limit(); ++d)
    r.map.set_next(d, face_next[r.map.twin(d)]);
  r.map.check();
  return r;
}

void sew_edges(CombMap& m, Dart x, Dart y) {
  Dart xb = m.twin(x);
  Dart yb = m.twin(y);
  if (!m.alive(x) || !m.alive(y)) fail("sew on dead dart");
  if (m.sign(x) != 1 || m.sign(y) != 1) fail("sew requires positive edges");
  if (y == x || y == xb) fail("sew of an edge with itself");
  Dart px = m.prev(x);
  Dart nxb = m.next(xb);
  Dart ny = m.next(y);
  Dart py = m.prev(y);
  Dart nyb = m.next(yb);
  Dart pyb = m.prev(yb);

  bool pre_pivot = (px == yb);   // walk ... y, x ...  (tail(x) merged)
  bool post_pivot = (nxb == y);  // walk ... x, y ...  (head(x) merged)

  // tail(x) ~ head(y)
  if (pre_pivot) {
    m.set_next(pyb, x);
  } else {
    if (nyb == x) fail("unexpected adjacency at tail side");
    m.set_next(px, nyb);
    m.set_next(pyb, x);
  }

  // head(x) ~ tail(y)
  if (post_pivot) {
    Dart ny2 = m.next(y);
    if (ny2 == y) fail("sew pivot with degree-1 rotation");
    if (ny2 == xb) fail("sew would create a degree-1 vertex");
    m.set_next(xb, ny2);
  } else {
    if (ny == xb) fail("unexpected adjacency at head side");
    m.set_next(xb, ny);
    m.set_next(py, nxb);
  }

  m.kill_edge(y);
}

std::vector<std::int32_t> canonical_form(const CombMap& m) {
  CombMap c = m.compact();
  const Dart D = c.dart_limit();
  std::vector<std::int32_t> best;
  std::vector<std::int32_t> lab(D);
  std::vector<Dart> order;
  order.reserve(D);
  for (int mirror = 0; mirror < 2; ++mirror) {
    for (Dart start = 0; start < D; ++start) {
      std::fill(lab.begin(), lab.end(), -1);
      order.clear();
      lab[start] = 0;
      order.push_back(start);
      std::vector<std::int32_t> sig;
      sig.reserve(3 * static_cast<std::size_t>(D));
      for (std::size_t i = 0; i < order.size(); ++i) {
        Dart d = order[i];
        Dart stepd = mirror ? c.prev(d) : c.next(d);
        for (Dart e : {c.twin(d), stepd}) {
          if (lab[e] == -1) {
            lab[e] = static_cast<std::int32_t>(order.size());
            order.push_back(e);
          }
        }
        sig.push_back(lab[c.twin(d)]);
        sig.push_back(lab[stepd]);
        sig.push_back(c.sign(d));
      }
      if (best.empty() || sig < best) best = std::move(sig);
    }
  }
  return best;
}

BoundedMap excise_face(const CombMap& m, Dart face_dart) {
  BoundedMap bm;
  bm.map = m;
  std::vector<State> walk = m.face_walk_from(face_dart, +1);
  VertexIndex vi = m.vertex_index();
  std::set<std::int32_t> tails;
  for (const State& st : walk) {
    if (!tails.insert(vi.of[st.d]).second)
      throw std::invalid_argument("excised face boundary repeats a vertex");
    bm.boundary.push_back(st.d);
  }
  return bm;
}

}  // namespace cubmap
