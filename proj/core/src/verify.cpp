#include "cubmap/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "trace.hpp"

namespace cubmap {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::logic_error(what); }

Dart edge_id(const CombMap& m, Dart d) { return std::min(d, m.twin(d)); }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Open-addressing set of 128-bit keys; the low word doubles as the probe
// hash and zero low words are remapped, so an all-zero slot means empty.
class KeySet {
 public:
  bool insert(std::uint64_t lo, std::uint64_t hi) {
    if (lo == 0) lo = 0x9E3779B97F4A7C15ull;
    if (10 * (filled_ + 1) >= 7 * lo_.size()) grow();
    std::size_t i = static_cast<std::size_t>(lo) & mask_;
    while (lo_[i] != 0) {
      if (lo_[i] == lo && hi_[i] == hi) return false;
      i = (i + 1) & mask_;
    }
    lo_[i] = lo;
    hi_[i] = hi;
    ++filled_;
    return true;
  }

 private:
  void grow() {
    std::size_t n = lo_.empty() ? 1024 : 2 * lo_.size();
    std::vector<std::uint64_t> olo = std::move(lo_);
    std::vector<std::uint64_t> ohi = std::move(hi_);
    lo_.assign(n, 0);
    hi_.assign(n, 0);
    mask_ = n - 1;
    for (std::size_t j = 0; j < olo.size(); ++j) {
      if (olo[j] == 0) continue;
      std::size_t i = static_cast<std::size_t>(olo[j]) & mask_;
      while (lo_[i] != 0) i = (i + 1) & mask_;
      lo_[i] = olo[j];
      hi_[i] = ohi[j];
    }
  }

  std::vector<std::uint64_t> lo_;
  std::vector<std::uint64_t> hi_;
  std::size_t mask_ = 0;
  std::size_t filled_ = 0;
};

State decode_state(std::int64_t e) {
  return {static_cast<Dart>(e >> 1), (e & 1) ? -1 : +1};
}

// ---- flat vertex tables --------------------------------------------------

struct VertexTables {
  std::vector<std::int32_t> of;  // dart -> vertex id (-1 dead)
  std::vector<Dart> rep;         // vertex id -> one of its darts
  std::int64_t count = 0;
};

VertexTables vertex_tables(const CombMap& m) {
  VertexTables vt;
  const int L = m.dart_limit();
  vt.of.assign(L, -1);
  for (Dart d = 0; d < L; ++d) {
    if (!m.alive(d) || vt.of[d] != -1) continue;
    auto id = static_cast<std::int32_t>(vt.rep.size());
    vt.rep.push_back(d);
    Dart e = d;
    do {
      vt.of[e] = id;
      e = m.next(e);
    } while (e != d);
  }
  vt.count = static_cast<std::int64_t>(vt.rep.size());
  return vt;
}

template <typename F>
void for_darts_at(const CombMap& m, const VertexTables& vt, std::int32_t v,
                  F&& fn) {
  Dart d0 = vt.rep[v];
  Dart e = d0;
  do {
    fn(e);
    e = m.next(e);
  } while (e != d0);
}

// ---- flat face tables ----------------------------------------------------

struct FaceTables {
  // contiguous face index per encoded state (2*dart + (sign<0 ? 1 : 0))
  std::vector<std::int32_t> of;
  std::vector<std::int64_t> rep;  // face id -> one encoded state
  std::int64_t count = 0;
};

FaceTables face_tables(const CombMap& m) {
  FaceTables ft;
  ft.of.assign(2 * static_cast<std::size_t>(m.dart_limit()), -1);
  for (Dart d = 0; d < m.dart_limit(); ++d) {
    if (!m.alive(d)) continue;
    for (int s : {+1, -1}) {
      std::int64_t e0 = encode_state({d, s});
      if (ft.of[e0] != -1) continue;
      auto id = static_cast<std::int32_t>(ft.rep.size());
      State start{d, s};
      State cur = start;
      do {
        ft.of[encode_state(cur)] = id;
        ft.of[encode_state(m.rho(cur))] = id;
        cur = m.step(cur);
      } while (!(cur == start));
      ft.rep.push_back(e0);
    }
  }
  ft.count = static_cast<std::int64_t>(ft.rep.size());
  return ft;
}

template <typename F>
void for_face_states(const CombMap& m, const FaceTables& ft, std::int32_t f,
                     F&& fn) {
  State start = decode_state(ft.rep[f]);
  State cur = start;
  do {
    fn(cur);
    cur = m.step(cur);
  } while (!(cur == start));
}

// ---- contractibility -----------------------------------------------------

// Euler characteristic of a region given as a set of face ids: vertices and
// edges incident with the region, minus edges, plus faces.
std::int64_t region_chi(const CombMap& m, const VertexTables& vt,
                        const FaceTables& ft,
                        const std::vector<std::int32_t>& region) {
  std::unordered_set<std::int32_t> verts;
  std::unordered_set<Dart> edges;
  for (std::int32_t f : region)
    for_face_states(m, ft, f, [&](State st) {
      verts.insert(vt.of[st.d]);
      edges.insert(edge_id(m, st.d));
    });
  return static_cast<std::int64_t>(verts.size()) -
         static_cast<std::int64_t>(edges.size()) +
         static_cast<std::int64_t>(region.size());
}

bool is_contractible_impl(const CombMap& m, const VertexTables& vt,
                          const FaceTables& ft,
                          const std::vector<Dart>& walk) {
  const std::int64_t L = static_cast<std::int64_t>(walk.size());
  if (L == 0) throw std::invalid_argument("empty walk");
  std::unordered_set<Dart> cedges;
  int sprod = 1;
  for (std::int64_t i = 0; i < L; ++i) {
    Dart d = walk[i];
    if (d < 0 || d >= m.dart_limit() || !m.alive(d))
      throw std::invalid_argument("walk uses a dead dart");
    if (vt.of[m.twin(d)] != vt.of[walk[(i + 1) % L]])
      throw std::invalid_argument("walk is not closed head-to-tail");
    if (!cedges.insert(edge_id(m, d)).second)
      throw std::invalid_argument("walk repeats an edge");
    sprod *= m.sign(d);
  }
  if (sprod < 0) return false;  // one-sided

  // Seed the two sides of the walk, tracking the running sense.
  std::unordered_map<std::int32_t, char> owner;
  std::vector<std::int32_t> members[2];
  std::deque<std::int32_t> queue[2];
  auto claim = [&](std::int32_t f, char side) {
    auto it = owner.find(f);
    if (it != owner.end()) return it->second == side;
    owner.emplace(f, side);
    members[side].push_back(f);
    queue[side].push_back(f);
    return true;
  };
  {
    int s = 1;
    for (std::int64_t i = 0; i < L; ++i) {
      Dart d = walk[i];
      std::int32_t lf = ft.of[encode_state({d, s})];
      std::int32_t rf = ft.of[encode_state({d, -s})];
      if (!claim(lf, 0)) return false;  // the two sides meet: essential
      if (!claim(rf, 1)) return false;
      s *= m.sign(d);
    }
  }

  // Flood both sides in lockstep, always expanding the smaller one, so a
  // small disk side finishes in time proportional to its own area.
  auto expand_one = [&](char side) -> bool {
    std::int32_t f = queue[side].front();
    queue[side].pop_front();
    bool ok = true;
    for_face_states(m, ft, f, [&](State st) {
      if (!ok) return;
      if (cedges.count(edge_id(m, st.d))) return;
      std::int32_t g = ft.of[encode_state({st.d, -st.s})];
      if (!claim(g, side)) ok = false;
    });
    return ok;
  };
  char complete;
  for (;;) {
    if (queue[0].empty()) {
      complete = 0;
      break;
    }
    if (queue[1].empty()) {
      complete = 1;
      break;
    }
    char side = members[0].size() <= members[1].size() ? 0 : 1;
    if (!expand_one(side)) return false;
  }
  if (region_chi(m, vt, ft, members[complete]) == 1) return true;
  char other = 1 - complete;
  while (!queue[other].empty())
    if (!expand_one(other)) fail("side floods reconnected after closure");
  return region_chi(m, vt, ft, members[other]) == 1;
}

// Reusable, allocation-free variant of the side flood for the width search,
// which tests millions of short fundamental cycles.  Visited marks live in
// epoch-stamped flat arrays; most cycles bound a small disk, so a test costs
// time proportional to that disk alone.  The caller guarantees the walk is
// closed, edge-distinct and two-sided.
struct FloodScratch {
  std::int32_t epoch = 0;
  std::int32_t chi_epoch = 0;
  std::vector<std::int32_t> ep_edge;  // per dart, stamped at the edge id
  std::vector<std::int32_t> ep_face;
  std::vector<std::int8_t> face_side;
  std::vector<std::int32_t> ep_vert;
  std::vector<std::int32_t> ep_redge;
  std::vector<std::int32_t> members[2];
  std::vector<std::int32_t> queue[2];

  void ensure(const CombMap& m, const VertexTables& vt,
              const FaceTables& ft) {
    if (!ep_edge.empty()) return;
    ep_edge.assign(m.dart_limit(), 0);
    ep_face.assign(ft.count, 0);
    face_side.assign(ft.count, 0);
    ep_vert.assign(vt.count, 0);
    ep_redge.assign(m.dart_limit(), 0);
  }
};

bool contractible_fast(const CombMap& m, const VertexTables& vt,
                       const FaceTables& ft, const std::vector<Dart>& walk,
                       FloodScratch& fs) {
  fs.ensure(m, vt, ft);
  const std::int32_t ep = ++fs.epoch;
  fs.members[0].clear();
  fs.members[1].clear();
  fs.queue[0].clear();
  fs.queue[1].clear();
  for (Dart d : walk) fs.ep_edge[edge_id(m, d)] = ep;

  auto claim = [&](std::int32_t f, char side) {
    if (fs.ep_face[f] == ep) return fs.face_side[f] == side;
    fs.ep_face[f] = ep;
    fs.face_side[f] = side;
    fs.members[side].push_back(f);
    fs.queue[side].push_back(f);
    return true;
  };
  {
    int s = 1;
    for (Dart d : walk) {
      if (!claim(ft.of[encode_state({d, s})], 0)) return false;
      if (!claim(ft.of[encode_state({d, -s})], 1)) return false;
      s *= m.sign(d);
    }
  }

  std::size_t head[2] = {0, 0};
  auto expand_one = [&](char side) -> bool {
    std::int32_t f = fs.queue[side][head[side]++];
    bool ok = true;
    for_face_states(m, ft, f, [&](State st) {
      if (!ok) return;
      if (fs.ep_edge[edge_id(m, st.d)] == ep) return;
      std::int32_t g = ft.of[encode_state({st.d, -st.s})];
      if (!claim(g, side)) ok = false;
    });
    return ok;
  };
  auto region_chi_fast = [&](char side) {
    const std::int32_t cep = ++fs.chi_epoch;
    std::int64_t verts = 0;
    std::int64_t edges = 0;
    for (std::int32_t f : fs.members[side])
      for_face_states(m, ft, f, [&](State st) {
        std::int32_t v = vt.of[st.d];
        if (fs.ep_vert[v] != cep) {
          fs.ep_vert[v] = cep;
          ++verts;
        }
        Dart e = edge_id(m, st.d);
        if (fs.ep_redge[e] != cep) {
          fs.ep_redge[e] = cep;
          ++edges;
        }
      });
    return verts - edges + static_cast<std::int64_t>(fs.members[side].size());
  };

  char complete;
  for (;;) {
    if (head[0] == fs.queue[0].size()) {
      complete = 0;
      break;
    }
    if (head[1] == fs.queue[1].size()) {
      complete = 1;
      break;
    }
    char side = fs.members[0].size() <= fs.members[1].size() ? 0 : 1;
    if (!expand_one(side)) return false;
  }
  if (region_chi_fast(complete) == 1) return true;
  char other = 1 - complete;
  while (head[other] != fs.queue[other].size())
    if (!expand_one(other)) fail("side floods reconnected after closure");
  return region_chi_fast(other) == 1;
}

// ---- edge width ----------------------------------------------------------
//
// Exact shortest essential cycle.  Per root, a depth-capped breadth-first
// tree is grown and every non-tree edge inside the ball proposes the
// fundamental cycle through it.  Three ingredients keep this exact and fast
// at scale:
//
//  * root restriction: the fundamental loops of the non-forest edges of a
//    breadth-first forest form a cut graph (the complement is a disk), so
//    every essential cycle passes through one of their vertices; by the
//    three-path exchange argument a shortest essential cycle is seen tight
//    from any of its own vertices, so only cut-graph vertices (and, for the
//    even-length case, their incident edges) need to serve as roots;
//  * a homology certificate: a fixed tree/cotree decomposition yields one
//    cocycle bit mask per edge, so "cycle is one-sided or not null-homologous
//    (hence essential)" is an XOR test per candidate — no region flood;
//  * a bounding phase with doubling caps that uses only certificates to find
//    a short certified essential cycle, followed by one exact pass capped at
//    half that bound, where the (rare) uncertified candidates shorter than
//    the bound are settled by is_contractible, deduplicated by cycle
//    fingerprint so each distinct cycle floods once.
//
// Even-length optima need the edge roots: with a vertex root, the two tree
// paths to the antipodal edge can close an equal-length cycle whose class is
// unknown, while from an edge root both auxiliary cycles are strictly
// shorter, hence contractible, and the candidate inherits the optimum's
// class.  The returned value is the exact minimum and deterministic; the
// witness cycle may depend on thread interleaving and is re-verified before
// return.

constexpr std::int32_t kVirtualLca = -2;

struct RootScan {
  std::vector<std::int32_t> dist;
  std::vector<Dart> pdart;  // tree dart parent -> vertex (kNil at root)
  std::vector<std::uint64_t> hxor;  // cocycle mask, root -> vertex
  std::vector<std::int8_t> ssig;    // sign product, root -> vertex
  std::vector<std::int32_t> touched;
  std::vector<std::int32_t> queue;
  std::vector<Dart> cands;
  Dart e0 = kNil;  // when set, the scan is rooted at this edge

  explicit RootScan(std::int64_t n)
      : dist(n, -1), pdart(n, kNil), hxor(n, 0), ssig(n, 1) {}

  void reset() {
    for (std::int32_t v : touched) {
      dist[v] = -1;
      pdart[v] = kNil;
      hxor[v] = 0;
      ssig[v] = 1;
    }
    touched.clear();
    queue.clear();
    cands.clear();
    e0 = kNil;
  }
};

// One cocycle bit mask per edge, plus the cut-graph root set.  Take a
// spanning forest T of the map and a spanning forest C of the dual graph
// over the non-T edges (which always exists for cellular embeddings); each
// leftover edge x closes a dual cycle through C and gets a fresh bit.
// Propagating the bits through C bottom-up makes XOR-along-a-closed-walk the
// mod-2 homology pairing with those dual cycles: every face boundary pairs
// to zero (a dual cycle meets each face in an even number of edge slots), so
// a nonzero pairing proves the walk is not a boundary sum and therefore
// essential.
//
// Dually, the fundamental loops in T of those same leftover edges form a cut
// graph: cutting along them leaves a disk, so every essential cycle passes
// through one of their vertices.  Those vertices are marked in `in_cut`.
struct Cocycles {
  std::vector<std::uint64_t> bits;    // per dart
  std::vector<std::uint8_t> in_cut;   // per vertex id
  std::int64_t components = 0;
};

Cocycles cocycle_bits(const CombMap& m, const VertexTables& vt,
                      const FaceTables& ft) {
  const int L = m.dart_limit();
  std::vector<std::uint64_t> bits(L, 0);
  std::vector<std::uint8_t> tree(L, 0);
  std::vector<Dart> up(vt.count, kNil);  // tree dart vertex -> parent
  std::vector<std::uint8_t> in_cut(vt.count, 0);
  std::vector<Dart> leftover;
  std::int64_t components = 0;
  {
    std::vector<std::uint8_t> seen(vt.count, 0);
    std::vector<std::int32_t> q;
    for (std::int32_t r = 0; r < vt.count; ++r) {
      if (seen[r]) continue;
      seen[r] = 1;
      in_cut[r] = 1;
      ++components;
      q.assign(1, r);
      for (std::size_t hd = 0; hd < q.size(); ++hd)
        for_darts_at(m, vt, q[hd], [&](Dart d) {
          std::int32_t w = vt.of[m.twin(d)];
          if (seen[w]) return;
          seen[w] = 1;
          tree[d] = tree[m.twin(d)] = 1;
          up[w] = m.twin(d);
          q.push_back(w);
        });
    }
  }
  // Dual spanning forest over non-tree edges.
  std::vector<std::int32_t> forder;
  std::vector<std::int32_t> fparent(ft.count, -1);
  std::vector<Dart> fedge(ft.count, kNil);  // primal edge to the parent face
  {
    std::vector<std::uint8_t> seen(ft.count, 0);
    for (std::int32_t f0 = 0; f0 < ft.count; ++f0) {
      if (seen[f0]) continue;
      seen[f0] = 1;
      std::size_t hd = forder.size();
      forder.push_back(f0);
      for (; hd < forder.size(); ++hd) {
        std::int32_t f = forder[hd];
        for_face_states(m, ft, f, [&](State st) {
          if (tree[st.d]) return;
          std::int32_t g = ft.of[encode_state({st.d, -st.s})];
          if (seen[g]) return;
          seen[g] = 1;
          fparent[g] = f;
          fedge[g] = st.d;
          forder.push_back(g);
        });
      }
    }
  }
  std::vector<std::uint8_t> cotree(L, 0);
  for (std::int32_t f = 0; f < ft.count; ++f)
    if (fedge[f] != kNil) cotree[fedge[f]] = cotree[m.twin(fedge[f])] = 1;
  // Leftover edges: one bit each (bits beyond 64 fold to zero, which only
  // weakens the certificate, never its soundness).
  std::vector<std::uint64_t> mark(ft.count, 0);
  int next_bit = 0;
  for (Dart d = 0; d < L; ++d) {
    if (!m.alive(d) || d > m.twin(d) || tree[d] || cotree[d]) continue;
    std::uint64_t b =
        next_bit < 64 ? (std::uint64_t{1} << next_bit) : std::uint64_t{0};
    ++next_bit;
    bits[d] = bits[m.twin(d)] = b;
    mark[ft.of[encode_state({d, +1})]] ^= b;
    mark[ft.of[encode_state({d, -1})]] ^= b;
    leftover.push_back(d);
  }
  for (std::size_t i = forder.size(); i-- > 0;) {
    std::int32_t f = forder[i];
    if (fparent[f] == -1) continue;
    bits[fedge[f]] = bits[m.twin(fedge[f])] = mark[f];
    mark[fparent[f]] ^= mark[f];
  }
  // Mark the fundamental loops.  Marked vertices always have their whole
  // path to the forest root marked (roots start marked), so each upward walk
  // may stop at the first marked vertex.
  for (Dart x : leftover)
    for (std::int32_t v : {vt.of[x], vt.of[m.twin(x)]})
      while (!in_cut[v]) {
        in_cut[v] = 1;
        v = vt.of[m.twin(up[v])];
      }
  return {std::move(bits), std::move(in_cut), components};
}

// Breadth-first scan truncated at depth cap; collects non-tree edges with
// both endpoints reached.  A vertex root seeds one source; an edge root e0
// seeds both endpoints at depth zero, the head carrying the edge's cocycle
// mask and sign so that certificates of cross-subtree candidates include the
// root edge the fundamental cycle closes through.
void scan_root(const CombMap& m, const VertexTables& vt,
               const std::vector<std::uint64_t>& vbits, std::int32_t root,
               Dart e0, std::int64_t cap, RootScan& rs) {
  rs.reset();
  Dart skip_edge = kNil;
  if (e0 == kNil) {
    rs.dist[root] = 0;
    rs.touched.push_back(root);
    rs.queue.push_back(root);
  } else {
    rs.e0 = e0;
    skip_edge = edge_id(m, e0);
    std::int32_t u0 = vt.of[e0];
    std::int32_t w0 = vt.of[m.twin(e0)];
    rs.dist[u0] = 0;
    rs.touched.push_back(u0);
    rs.queue.push_back(u0);
    rs.dist[w0] = 0;
    rs.hxor[w0] = vbits[e0];
    rs.ssig[w0] = static_cast<std::int8_t>(m.sign(e0));
    rs.touched.push_back(w0);
    rs.queue.push_back(w0);
  }
  for (std::size_t hd = 0; hd < rs.queue.size(); ++hd) {
    std::int32_t v = rs.queue[hd];
    std::int32_t dv = rs.dist[v];
    for_darts_at(m, vt, v, [&](Dart d) {
      std::int32_t w = vt.of[m.twin(d)];
      if (rs.dist[w] == -1) {
        if (dv >= cap) return;
        rs.dist[w] = dv + 1;
        rs.pdart[w] = d;
        rs.hxor[w] = rs.hxor[v] ^ vbits[d];
        rs.ssig[w] = static_cast<std::int8_t>(rs.ssig[v] * m.sign(d));
        rs.touched.push_back(w);
        rs.queue.push_back(w);
        return;
      }
      if (rs.pdart[w] == d || rs.pdart[v] == m.twin(d)) return;  // tree
      if (d > m.twin(d)) return;  // visit each edge once
      if (edge_id(m, d) == skip_edge) return;
      rs.cands.push_back(d);
    });
  }
}

// Lowest common ancestor by pointer walking.  Returns {lca, cycle length};
// {kVirtualLca, len} when the paths end at the two distinct sources of an
// edge root (the fundamental cycle then closes through that root edge), and
// {-1, -1} once the combined walk shows the cycle is at least `limit` long.
std::pair<std::int32_t, std::int64_t> lca_len(const VertexTables& vt,
                                              const RootScan& rs,
                                              std::int32_t u, std::int32_t w,
                                              std::int64_t limit) {
  std::int64_t steps = 1;  // the non-tree edge itself
  while (rs.dist[u] > rs.dist[w]) {
    u = vt.of[rs.pdart[u]];
    if (++steps >= limit) return {-1, -1};
  }
  while (rs.dist[w] > rs.dist[u]) {
    w = vt.of[rs.pdart[w]];
    if (++steps >= limit) return {-1, -1};
  }
  while (u != w) {
    if (rs.dist[u] == 0) return {kVirtualLca, steps + 1};  // closes via e0
    u = vt.of[rs.pdart[u]];
    w = vt.of[rs.pdart[w]];
    if ((steps += 2) >= limit) return {-1, -1};
  }
  return {u, steps};
}

std::vector<Dart> fundamental_walk(const CombMap& m, const VertexTables& vt,
                                   const RootScan& rs, Dart d,
                                   std::int32_t lca) {
  std::int32_t u = vt.of[d];
  std::int32_t w = vt.of[m.twin(d)];
  auto done = [&](std::int32_t v) {
    return lca == kVirtualLca ? rs.dist[v] == 0 : v == lca;
  };
  std::vector<Dart> up;
  for (std::int32_t v = u; !done(v); v = vt.of[rs.pdart[v]])
    up.push_back(rs.pdart[v]);
  std::vector<Dart> walk(up.rbegin(), up.rend());
  walk.push_back(d);
  std::int32_t sw = w;
  for (std::int32_t v = w; !done(v); v = vt.of[rs.pdart[v]]) {
    walk.push_back(m.twin(rs.pdart[v]));
    sw = vt.of[rs.pdart[v]];
  }
  // Close the cycle through the root edge, oriented from the w-side source
  // back to the u-side source.
  if (lca == kVirtualLca)
    walk.push_back(sw == vt.of[rs.e0] ? rs.e0 : m.twin(rs.e0));
  return walk;
}

// Order-invariant 128-bit fingerprint of the fundamental cycle's edge set.
// The same cycle reappears at every root near it; fingerprinting lets the
// exact phase settle each distinct cycle by one region flood instead of one
// flood per sighting.
std::pair<std::uint64_t, std::uint64_t> cycle_fingerprint(
    const CombMap& m, const VertexTables& vt, const RootScan& rs, Dart d,
    std::int32_t lca, std::int64_t len) {
  std::uint64_t kx = 0;
  std::uint64_t ks = 0;
  auto add = [&](Dart e) {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(edge_id(m, e)) + 1);
    kx ^= h;
    ks += h;
  };
  auto done = [&](std::int32_t v) {
    return lca == kVirtualLca ? rs.dist[v] == 0 : v == lca;
  };
  add(d);
  for (std::int32_t v = vt.of[d]; !done(v); v = vt.of[rs.pdart[v]])
    add(rs.pdart[v]);
  for (std::int32_t v = vt.of[m.twin(d)]; !done(v); v = vt.of[rs.pdart[v]])
    add(rs.pdart[v]);
  if (lca == kVirtualLca) add(rs.e0);
  return {mix64(kx ^ mix64(ks)), mix64(ks + static_cast<std::uint64_t>(len))};
}

WidthResult edge_width_impl(const CombMap& m, const VertexTables& vt,
                            const FaceTables& ft) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  const std::int64_t V = vt.count;
  Cocycles cc = cocycle_bits(m, vt, ft);
  const std::vector<std::uint64_t>& vbits = cc.bits;

  // Roots: cut-graph vertices, then their incident non-loop edges.
  std::vector<std::int32_t> vroots;
  std::vector<Dart> eroots;
  for (std::int32_t v = 0; v < V; ++v) {
    if (!cc.in_cut[v]) continue;
    vroots.push_back(v);
    for_darts_at(m, vt, v, [&](Dart d) {
      std::int32_t w = vt.of[m.twin(d)];
      if (w == v) return;                      // loops are odd cycles
      if (cc.in_cut[w] && m.twin(d) < d) return;  // rooted from the twin
      eroots.push_back(d);
    });
  }
  const std::int64_t R = static_cast<std::int64_t>(vroots.size()) +
                         static_cast<std::int64_t>(eroots.size());

  // On a connected projective plane or torus every essential simple cycle
  // is one-sided or non-separating, hence certificate-visible, so the
  // bounding phase alone is already exact and no flood pass is needed.
  const std::int64_t chi = m.euler_characteristic();
  const bool no_hidden =
      cc.components == 1 && (chi == 1 || (chi == 0 && m.orientable()));

  std::atomic<std::int64_t> best{kInf};
  std::mutex mu;
  std::vector<Dart> best_walk;
  std::atomic<std::int64_t> next_root{0};

  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned nthreads = R < 64 ? 1u : std::min(hw, 8u);
  if (m.dart_limit() > 3000000) nthreads = std::min(nthreads, 4u);
  std::vector<RootScan> scratch;
  scratch.reserve(nthreads);
  for (unsigned i = 0; i < nthreads; ++i) scratch.emplace_back(V);
  std::vector<FloodScratch> fscratch(nthreads);

  struct PassStats {
    std::atomic<std::int64_t> cands{0};
    std::atomic<std::int64_t> floods{0};
    std::atomic<std::int64_t> dedup_hits{0};
  };

  auto handle_candidates = [&](RootScan& rs, bool exact, KeySet& dedup,
                               FloodScratch& fs, PassStats& st) {
    st.cands.fetch_add(static_cast<std::int64_t>(rs.cands.size()),
                       std::memory_order_relaxed);
    for (Dart d : rs.cands) {
      std::int32_t u = vt.of[d];
      std::int32_t w = vt.of[m.twin(d)];
      bool certified = (rs.hxor[u] ^ rs.hxor[w] ^ vbits[d]) != 0 ||
                       rs.ssig[u] * rs.ssig[w] * m.sign(d) < 0;
      if (!certified && !exact) continue;
      auto [lca, len] = lca_len(vt, rs, u, w, best.load());
      if (lca == -1) continue;
      if (len >= best.load()) continue;
      if (!certified) {
        auto [klo, khi] = cycle_fingerprint(m, vt, rs, d, lca, len);
        if (!dedup.insert(klo, khi)) {
          st.dedup_hits.fetch_add(1, std::memory_order_relaxed);
          continue;
        }
      }
      std::vector<Dart> walk = fundamental_walk(m, vt, rs, d, lca);
      if (!certified) {
        st.floods.fetch_add(1, std::memory_order_relaxed);
        if (contractible_fast(m, vt, ft, walk, fs)) continue;
      }
      std::lock_guard<std::mutex> lock(mu);
      if (len < best.load()) {
        best.store(len);
        best_walk = std::move(walk);
      }
    }
  };

  auto run_pass = [&](std::int64_t cap, bool exact) {
    double t0 = trace::now();
    PassStats st;
    next_root.store(0);
    auto worker = [&](unsigned tid) {
      RootScan& rs = scratch[tid];
      KeySet dedup;
      for (;;) {
        std::int64_t i = next_root.fetch_add(1);
        if (i >= R) break;
        if (i < static_cast<std::int64_t>(vroots.size()))
          scan_root(m, vt, vbits, vroots[i], kNil, cap, rs);
        else
          scan_root(m, vt, vbits, -1,
                    eroots[i - static_cast<std::int64_t>(vroots.size())], cap,
                    rs);
        handle_candidates(rs, exact, dedup, fscratch[tid], st);
      }
    };
    if (nthreads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
      for (auto& t : pool) t.join();
    }
    if (trace::on()) {
      std::int64_t b = best.load();
      std::fprintf(stderr,
                   "trace: width pass %s cap=%lld V=%lld roots=%lld "
                   "cands=%lld floods=%lld dups=%lld best=%lld dt=%.3fs\n",
                   exact ? "exact" : "bound", static_cast<long long>(cap),
                   static_cast<long long>(V), static_cast<long long>(R),
                   static_cast<long long>(st.cands.load()),
                   static_cast<long long>(st.floods.load()),
                   static_cast<long long>(st.dedup_hits.load()),
                   static_cast<long long>(b == kInf ? -1 : b),
                   trace::now() - t0);
    }
  };

  // Bounding phase: certificates only, doubling caps.
  for (std::int64_t cap = 2;; cap = std::min(cap * 2, V)) {
    run_pass(cap, false);
    std::int64_t b = best.load();
    if (b != kInf && b <= 2 * cap) break;
    if (cap >= V) break;
  }
  // Exact phase: one pass capped at half the bound, settling uncertified
  // candidates by flood; skipped when certificates are already complete.
  std::int64_t b = best.load();
  if (!no_hidden) run_pass(b == kInf ? V : b / 2, true);

  if (best.load() == kInf)
    fail("no essential cycle found off the sphere");
  WidthResult out;
  out.value = best.load();
  out.witness = std::move(best_walk);
  if (is_contractible_impl(m, vt, ft, out.witness))
    fail("width witness is contractible");
  return out;
}

// ---- simple graph helpers ------------------------------------------------

std::vector<std::vector<std::int32_t>> simple_adjacency(
    const CombMap& m, const VertexTables& vt) {
  std::vector<std::vector<std::int32_t>> adj(vt.count);
  for (Dart d : m.darts()) {
    std::int32_t u = vt.of[d];
    std::int32_t w = vt.of[m.twin(d)];
    if (u != w) adj[u].push_back(w);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

bool adjacent_in(const std::vector<std::vector<std::int32_t>>& adj,
                 std::int32_t u, std::int32_t w) {
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), w);
}

// ---- unit-capacity vertex flows -----------------------------------------

struct FlowNet {
  std::vector<std::int32_t> head;          // node -> first arc (-1)
  std::vector<std::int32_t> nxt, to, cap;  // arcs in twin pairs (i, i^1)
  std::vector<std::int32_t> internal_arc;  // vertex -> its in->out arc
  std::vector<std::int32_t> base_cap;

  void add_arc(std::int32_t a, std::int32_t b, std::int32_t c) {
    to.push_back(b);
    cap.push_back(c);
    nxt.push_back(head[a]);
    head[a] = static_cast<std::int32_t>(to.size()) - 1;
    to.push_back(a);
    cap.push_back(0);
    nxt.push_back(head[b]);
    head[b] = static_cast<std::int32_t>(to.size()) - 1;
  }
};

FlowNet build_flow_net(const std::vector<std::vector<std::int32_t>>& adj) {
  FlowNet fn;
  auto n = static_cast<std::int32_t>(adj.size());
  fn.head.assign(2 * n, -1);
  fn.internal_arc.assign(n, -1);
  for (std::int32_t v = 0; v < n; ++v) {
    fn.internal_arc[v] = static_cast<std::int32_t>(fn.to.size());
    fn.add_arc(2 * v, 2 * v + 1, 1);
  }
  for (std::int32_t v = 0; v < n; ++v)
    for (std::int32_t w : adj[v]) fn.add_arc(2 * v + 1, 2 * w, 1);
  fn.base_cap = fn.cap;
  return fn;
}

// k internally vertex-disjoint s-t paths exist?
bool flow_at_least(FlowNet& fn, std::int32_t n, std::int32_t s,
                   std::int32_t t, int k) {
  fn.cap = fn.base_cap;
  std::int32_t big = n + 1;
  fn.cap[fn.internal_arc[s]] = big;
  fn.cap[fn.internal_arc[t]] = big;
  std::int32_t src = 2 * s + 1, snk = 2 * t;
  std::vector<std::int32_t> pre(2 * n);
  std::vector<std::int32_t> q;
  int flow = 0;
  while (flow < k) {
    std::fill(pre.begin(), pre.end(), -1);
    pre[src] = -2;
    q.assign(1, src);
    bool found = false;
    for (std::size_t hd = 0; hd < q.size() && !found; ++hd) {
      std::int32_t a = q[hd];
      for (std::int32_t i = fn.head[a]; i != -1; i = fn.nxt[i]) {
        if (fn.cap[i] <= 0 || pre[fn.to[i]] != -1) continue;
        pre[fn.to[i]] = i;
        if (fn.to[i] == snk) {
          found = true;
          break;
        }
        q.push_back(fn.to[i]);
      }
    }
    if (!found) break;
    for (std::int32_t b = snk; b != src;) {
      std::int32_t i = pre[b];
      fn.cap[i] -= 1;
      fn.cap[i ^ 1] += 1;
      b = fn.to[i ^ 1];
    }
    ++flow;
  }
  return flow >= k;
}

// ---- edge connectivity (capped at 3) ------------------------------------

bool connected_excluding(const CombMap& m, const VertexTables& vt,
                         Dart skip_a, Dart skip_b) {
  if (vt.count == 0) return true;
  std::vector<std::uint8_t> seen(vt.count, 0);
  std::vector<std::int32_t> q{0};
  seen[0] = 1;
  std::int64_t reached = 1;
  for (std::size_t hd = 0; hd < q.size(); ++hd)
    for_darts_at(m, vt, q[hd], [&](Dart d) {
      Dart e = edge_id(m, d);
      if (e == skip_a || e == skip_b) return;
      std::int32_t w = vt.of[m.twin(d)];
      if (seen[w]) return;
      seen[w] = 1;
      ++reached;
      q.push_back(w);
    });
  return reached == vt.count;
}

// Edge connectivity of the map's multigraph, capped at 3.  Bridge and
// 2-edge-cut candidates come from random tree-cover hashes; every candidate
// is confirmed by an exact reachability check, so the result is exact
// (equal cover sets always hash equal, so no true cut is ever missed).
int edge_connectivity_level3(const CombMap& m, const VertexTables& vt) {
  const std::int64_t V = vt.count;
  if (V <= 1) return 3;
  std::vector<Dart> pdart(V, kNil);
  std::vector<std::int8_t> reached(V, 0);
  std::vector<std::int32_t> order{0};
  reached[0] = 1;
  for (std::size_t hd = 0; hd < order.size(); ++hd) {
    std::int32_t v = order[hd];
    for_darts_at(m, vt, v, [&](Dart d) {
      std::int32_t w = vt.of[m.twin(d)];
      if (reached[w]) return;
      reached[w] = 1;
      pdart[w] = d;
      order.push_back(w);
    });
  }
  if (static_cast<std::int64_t>(order.size()) < V) return 0;

  auto is_tree = [&](Dart d) {
    std::int32_t u = vt.of[d];
    std::int32_t w = vt.of[m.twin(d)];
    return pdart[w] == d || pdart[u] == m.twin(d);
  };
  std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
  std::vector<std::uint64_t> mark(V, 0);
  std::unordered_map<std::uint64_t, std::vector<Dart>> label_of;
  for (Dart d : m.darts()) {
    if (d > m.twin(d) || is_tree(d)) continue;
    std::int32_t u = vt.of[d];
    std::int32_t w = vt.of[m.twin(d)];
    if (u == w) continue;  // loops never take part in a minimal cut
    std::uint64_t r = 0;
    while (r == 0) r = rng();
    mark[u] ^= r;
    mark[w] ^= r;
    label_of[r].push_back(d);
  }
  std::vector<std::uint64_t> sub = mark;
  std::unordered_map<std::uint64_t, std::vector<Dart>> tree_hash;
  for (std::size_t i = order.size(); i-- > 1;) {
    std::int32_t v = order[i];
    std::int32_t p = vt.of[pdart[v]];
    tree_hash[sub[v]].push_back(edge_id(m, pdart[v]));
    sub[p] ^= sub[v];
  }
  // bridges: tree edges covered by nothing
  if (auto it = tree_hash.find(0); it != tree_hash.end())
    for (Dart e : it->second)
      if (!connected_excluding(m, vt, e, kNil)) return 1;
  // {tree, tree} pairs with equal cover
  for (const auto& [h, es] : tree_hash) {
    if (h == 0 || es.size() < 2) continue;
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = i + 1; j < es.size(); ++j)
        if (!connected_excluding(m, vt, es[i], es[j])) return 2;
  }
  // {tree, non-tree} pairs: cover of the tree edge is that single edge
  for (const auto& [h, es] : tree_hash) {
    if (h == 0) continue;
    auto it = label_of.find(h);
    if (it == label_of.end()) continue;
    for (Dart e : es)
      for (Dart f : it->second)
        if (!connected_excluding(m, vt, e, edge_id(m, f))) return 2;
  }
  return 3;
}

int vertex_connectivity_cap3(const CombMap& m) {
  for (int k = 3; k >= 1; --k)
    if (vertex_connectivity_at_least(m, k)) return k;
  return 0;
}

}  // namespace

// ---- public: basic checks ------------------------------------------------

bool check_cubic(const CombMap& m) {
  VertexTables vt = vertex_tables(m);
  for (std::int64_t v = 0; v < vt.count; ++v) {
    int deg = 0;
    for_darts_at(m, vt, static_cast<std::int32_t>(v), [&](Dart) { ++deg; });
    if (deg != 3) return false;
  }
  return true;
}

bool simple_graph(const CombMap& m) {
  VertexTables vt = vertex_tables(m);
  std::unordered_set<std::int64_t> pairs;
  for (Dart d : m.darts()) {
    if (d > m.twin(d)) continue;
    std::int64_t u = vt.of[d], w = vt.of[m.twin(d)];
    if (u == w) return false;  // loop
    if (u > w) std::swap(u, w);
    if (!pairs.insert(u * vt.count + w).second) return false;  // parallel
  }
  return true;
}

bool vertex_connectivity_at_least(const CombMap& m, int k) {
  if (k <= 0) return true;
  VertexTables vt = vertex_tables(m);
  auto n = static_cast<std::int32_t>(vt.count);
  if (n < k + 1) return false;
  std::vector<std::vector<std::int32_t>> adj = simple_adjacency(m, vt);
  for (const auto& a : adj)
    if (static_cast<int>(a.size()) < k) return false;
  {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::int32_t> q{0};
    seen[0] = 1;
    std::int64_t cnt = 1;
    for (std::size_t hd = 0; hd < q.size(); ++hd)
      for (std::int32_t w : adj[q[hd]])
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          q.push_back(w);
        }
    if (cnt < n) return false;
  }
  if (n > 1200 && k <= 3 && simple_graph(m)) {
    bool cubic = true;
    for (const auto& a : adj)
      if (a.size() != 3) {
        cubic = false;
        break;
      }
    // For 3-regular simple graphs vertex and edge connectivity coincide.
    if (cubic) return edge_connectivity_level3(m, vt) >= k;
  }
  FlowNet fn = build_flow_net(adj);
  std::int32_t w0 = 0;
  for (std::int32_t v = 1; v < n; ++v)
    if (adj[v].size() < adj[w0].size()) w0 = v;
  std::vector<std::int32_t> sources{w0};
  for (std::int32_t w : adj[w0]) sources.push_back(w);
  for (std::int32_t s : sources)
    for (std::int32_t t = 0; t < n; ++t) {
      if (t == s || adjacent_in(adj, s, t)) continue;
      if (!flow_at_least(fn, n, s, t, k)) return false;
    }
  return true;
}

int connectivity(const CombMap& m) { return vertex_connectivity_cap3(m); }

bool three_edge_connected(const CombMap& m) {
  VertexTables vt = vertex_tables(m);
  return edge_connectivity_level3(m, vt) >= 3;
}

// ---- public: contractibility and widths ---------------------------------

bool is_contractible(const CombMap& m, const std::vector<Dart>& cycle) {
  VertexTables vt = vertex_tables(m);
  FaceTables ft = face_tables(m);
  return is_contractible_impl(m, vt, ft, cycle);
}

WidthResult edge_width(const CombMap& m) {
  if (m.euler_characteristic() == 2 && m.orientable()) return {};
  VertexTables vt = vertex_tables(m);
  FaceTables ft = face_tables(m);
  return edge_width_impl(m, vt, ft);
}

RadialMap radial_map(const CombMap& m) {
  VertexIndex vi = m.vertex_index();
  std::vector<Dart> live = m.darts();
  std::vector<std::int32_t> cidx(m.dart_limit(), -1);
  for (std::size_t i = 0; i < live.size(); ++i)
    cidx[live[i]] = static_cast<std::int32_t>(i);
  RadialMap out;
  CombMap& R = out.map;
  for (std::size_t i = 0; i < live.size(); ++i) R.new_edge();
  for (const auto& orb : vi.orbits) {
    std::vector<Dart> cyc;
    cyc.reserve(orb.size());
    for (Dart c : orb) cyc.push_back(2 * cidx[c]);
    R.set_rotation(cyc);
  }
  out.face_of_edge.assign(live.size(), -1);
  std::vector<std::uint8_t> used(live.size(), 0);
  for (const auto& orb : m.faces()) {
    std::int64_t canon = m.face_id_of_state(orb[0].d, orb[0].s);
    std::vector<Dart> qs;
    qs.reserve(orb.size());
    for (const State& st : orb) {
      int s2 = st.s * m.sign(st.d);
      Dart t = m.twin(st.d);
      Dart c;
      int beta;
      if (s2 > 0) {
        c = t;
        beta = +1;
      } else {
        c = m.prev(t);
        beta = -1;
      }
      std::int32_t ci = cidx[c];
      if (ci < 0 || used[ci]) fail("radial corner used twice");
      used[ci] = 1;
      Dart q = 2 * ci + 1;
      R.set_sign(q, beta);
      qs.push_back(q);
      out.face_of_edge[ci] = canon;
    }
    // Reversed: the radial quadrangles close up V -> F -> V -> F around
    // each primal edge.
    std::reverse(qs.begin(), qs.end());
    R.set_rotation(qs);
  }
  for (std::uint8_t u : used)
    if (!u) fail("radial corner left unused");
  R.check();
  out.primal = std::move(live);
  return out;
}

void validate_radial(const CombMap& primal, const RadialMap& r) {
  Counts p = primal.counts();
  Counts q = r.map.counts();
  if (q.v != p.v + p.f) fail("radial vertex count wrong");
  if (q.e != 2 * p.e) fail("radial edge count wrong");
  if (q.f != p.e) fail("radial face count wrong");
  for (const auto& [k, c] : r.map.face_census())
    if (k != 4) fail("radial face is not a quadrangle");
  if (r.map.euler_characteristic() != primal.euler_characteristic())
    fail("radial Euler characteristic differs");
  if (r.map.orientable() != primal.orientable())
    fail("radial orientability differs");
}

WidthResult face_width(const CombMap& m) {
  if (m.euler_characteristic() == 2 && m.orientable()) return {};
  double t0 = trace::now();
  RadialMap r = radial_map(m);
  validate_radial(m, r);
  if (trace::on())
    std::fprintf(stderr, "trace: radial map darts=%lld dt=%.3fs\n",
                 static_cast<long long>(r.map.dart_limit()),
                 trace::now() - t0);
  WidthResult rew = edge_width(r.map);
  if (!rew.value) fail("radial map reports no essential cycle");
  if (*rew.value % 2 != 0) fail("radial width parity broken");
  WidthResult out;
  out.value = *rew.value / 2;
  for (Dart d : rew.witness)
    if (d % 2 == 1) out.faces.push_back(r.face_of_edge[d / 2]);
  if (static_cast<std::int64_t>(out.faces.size()) != *out.value)
    fail("radial witness does not alternate");
  return out;
}

// ---- public: exhaustive oracles -----------------------------------------

std::vector<std::vector<Dart>> all_simple_cycles(const CombMap& m) {
  VertexTables vt = vertex_tables(m);
  if (vt.count > 64)
    throw std::invalid_argument("cycle enumeration limited to 64 vertices");
  auto n = static_cast<std::int32_t>(vt.count);
  std::map<std::vector<Dart>, std::vector<Dart>> out;
  struct Frame {
    std::int32_t v;
    std::vector<Dart> path;
    std::uint64_t vis;
  };
  for (std::int32_t a = 0; a < n; ++a) {
    std::vector<Frame> stack{{a, {}, std::uint64_t{1} << a}};
    while (!stack.empty()) {
      Frame fr = std::move(stack.back());
      stack.pop_back();
      for_darts_at(m, vt, fr.v, [&](Dart d) {
        std::int32_t w = vt.of[m.twin(d)];
        if (w == a && !fr.path.empty()) {
          if (edge_id(m, d) == edge_id(m, fr.path.front())) return;
          std::vector<Dart> walk = fr.path;
          walk.push_back(d);
          std::vector<Dart> key;
          key.reserve(walk.size());
          for (Dart x : walk) key.push_back(edge_id(m, x));
          std::sort(key.begin(), key.end());
          if (std::adjacent_find(key.begin(), key.end()) != key.end())
            return;
          out.emplace(std::move(key), std::move(walk));
        } else if (w > a && !(fr.vis >> w & 1)) {
          Frame nf{w, fr.path, fr.vis | (std::uint64_t{1} << w)};
          nf.path.push_back(d);
          stack.push_back(std::move(nf));
        }
      });
    }
  }
  std::vector<std::vector<Dart>> cycles;
  cycles.reserve(out.size());
  for (auto& [key, walk] : out) cycles.push_back(std::move(walk));
  return cycles;
}

std::optional<std::int64_t> edge_width_oracle(const CombMap& m) {
  if (m.euler_characteristic() == 2 && m.orientable()) return std::nullopt;
  VertexTables vt = vertex_tables(m);
  FaceTables ft = face_tables(m);
  std::optional<std::int64_t> best;
  for (const auto& walk : all_simple_cycles(m)) {
    if (best && static_cast<std::int64_t>(walk.size()) >= *best) continue;
    if (!is_contractible_impl(m, vt, ft, walk))
      best = static_cast<std::int64_t>(walk.size());
  }
  return best;
}

std::optional<std::int64_t> face_width_oracle(const CombMap& m) {
  if (m.euler_characteristic() == 2 && m.orientable()) return std::nullopt;
  RadialMap r = radial_map(m);
  validate_radial(m, r);
  std::optional<std::int64_t> rew = edge_width_oracle(r.map);
  if (!rew) fail("radial map reports no essential cycle");
  if (*rew % 2 != 0) fail("radial width parity broken");
  return *rew / 2;
}

std::optional<std::int64_t> face_width_subset_oracle(const CombMap& m) {
  if (m.euler_characteristic() == 2 && m.orientable()) return std::nullopt;
  VertexTables vt = vertex_tables(m);
  FaceTables ft = face_tables(m);
  std::vector<std::vector<Dart>> essential;
  for (const auto& walk : all_simple_cycles(m))
    if (!is_contractible_impl(m, vt, ft, walk)) essential.push_back(walk);
  if (essential.empty()) fail("no essential cycle on a non-sphere map");
  auto F = static_cast<std::int32_t>(ft.count);
  std::vector<std::unordered_set<Dart>> fedges(F);
  for (std::int32_t f = 0; f < F; ++f)
    for_face_states(m, ft, f,
                    [&](State st) { fedges[f].insert(edge_id(m, st.d)); });
  std::vector<std::int32_t> pick;
  auto covered = [&](const std::vector<Dart>& walk) {
    for (Dart d : walk) {
      Dart e = edge_id(m, d);
      bool in = false;
      for (std::int32_t f : pick)
        if (fedges[f].count(e)) {
          in = true;
          break;
        }
      if (!in) return false;
    }
    return true;
  };
  for (std::int32_t t = 1; t <= F; ++t) {
    pick.assign(t, 0);
    for (std::int32_t i = 0; i < t; ++i) pick[i] = i;
    for (;;) {
      for (const auto& walk : essential)
        if (covered(walk)) return static_cast<std::int64_t>(t);
      std::int32_t i = t - 1;
      while (i >= 0 && pick[i] == F - t + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (std::int32_t j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  fail("face subsets never covered an essential cycle");
}

std::optional<std::int64_t> girth(const CombMap& m) {
  VertexTables vt = vertex_tables(m);
  std::vector<std::vector<std::int32_t>> adj = simple_adjacency(m, vt);
  auto n = static_cast<std::int32_t>(vt.count);
  std::optional<std::int64_t> best;
  std::vector<std::int32_t> dist(n), par(n);
  for (std::int32_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(par.begin(), par.end(), -1);
    dist[s] = 0;
    std::vector<std::int32_t> q{s};
    for (std::size_t hd = 0; hd < q.size(); ++hd) {
      std::int32_t v = q[hd];
      for (std::int32_t w : adj[v]) {
        if (dist[w] == -1) {
          dist[w] = dist[v] + 1;
          par[w] = v;
          q.push_back(w);
        } else if (par[v] != w) {
          std::int64_t c = dist[v] + dist[w] + 1;
          if (!best || c < *best) best = c;
        }
      }
    }
  }
  return best;
}

// ---- public: aggregate verification -------------------------------------

VerifyOutcome verify_realization(const CombMap& m, const FaceVector& p,
                                 SurfaceSpec S, int w) {
  VerifyOutcome out;
  RealizationReport& rep = out.report;
  std::ostringstream log;
  bool all_ok = true;
  auto check = [&](const std::string& name, bool ok,
                   const std::string& detail) {
    log << "CHECK " << name << ' ' << (ok ? "PASS" : "FAIL") << ' ' << detail
        << '\n';
    all_ok = all_ok && ok;
  };

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

  check("cubic", check_cubic(m), "every vertex has degree 3");

  {
    bool ok = true;
    int bad = 0;
    for (const auto& [k, c] : rep.census)
      if (k < 3) {
        ok = false;
        bad = k;
      }
    std::ostringstream d;
    if (ok)
      d << "all face sizes at least 3";
    else
      d << "face of size " << bad;
    check("face_sizes", ok, d.str());
  }

  check("simple", simple_graph(m), "no loops or parallel edges");

  {
    bool ok = true;
    std::ostringstream d;
    for (const auto& [k, c] : p) {
      if (k == 5 || k == 7) continue;
      if (count(k) != c) {
        ok = false;
        d << "size " << k << ": got " << count(k) << " want " << c;
        break;
      }
    }
    if (ok)
      for (const auto& [k, c] : rep.census) {
        if (k == 5 || k == 7) continue;
        auto it = p.find(k);
        if (it == p.end() || it->second != c) {
          ok = false;
          d << "unrequested size " << k << " x" << c;
          break;
        }
      }
    if (ok) d << "all sizes outside {5,7} match";
    check("census", ok, d.str());
  }

  {
    std::ostringstream d;
    d << "n7-n5=" << (rep.n7 - rep.n5) << " required " << rep.deficit;
    check("deficit", rep.n7 - rep.n5 == rep.deficit, d.str());
  }

  {
    std::ostringstream d;
    d << "chi=" << rep.chi << " required " << S.chi();
    check("euler", rep.chi == S.chi(), d.str());
  }

  {
    std::ostringstream d;
    d << (rep.orientable ? "orientable" : "non-orientable") << " required "
      << (S.orientable ? "orientable" : "non-orientable");
    check("orientable", rep.orientable == S.orientable, d.str());
  }

  rep.connectivity = connectivity(m);
  {
    std::ostringstream d;
    d << "connectivity=" << rep.connectivity;
    check("three_connected", rep.connectivity >= 3, d.str());
  }

  WidthResult ew = edge_width(m);
  WidthResult fw = face_width(m);
  rep.edge_width = ew.value;
  rep.face_width = fw.value;
  {
    std::ostringstream d;
    if (ew.value)
      d << "value=" << *ew.value;
    else
      d << "unbounded";
    check("edge_width", true, d.str());
  }
  {
    bool ok = !fw.value || *fw.value >= w;
    std::ostringstream d;
    if (fw.value)
      d << "value=" << *fw.value << " target=" << w;
    else
      d << "unbounded target=" << w;
    check("face_width", ok, d.str());
  }
  {
    bool ok = true;
    std::ostringstream d;
    if (ew.value && fw.value) {
      std::int64_t r = rep.census.empty() ? 0 : rep.census.rbegin()->first;
      ok = 2 * *ew.value <= r * *fw.value;
      d << "2*" << *ew.value << " <= " << r << "*" << *fw.value;
    } else {
      d << "unbounded";
    }
    check("width_ratio", ok, d.str());
  }

  out.polyhedral =
      rep.connectivity >= 3 && (!fw.value || *fw.value >= 3);
  {
    bool ok = w < 3 || out.polyhedral;
    std::ostringstream d;
    d << "flag=" << (out.polyhedral ? "true" : "false");
    check("polyhedral", ok, d.str());
  }

  log << "RESULT " << (all_ok ? "PASS" : "FAIL") << '\n';
  out.pass = all_ok;
  out.log = log.str();
  return out;
}

}  // namespace cubmap
