#include "cubmap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cubmap/verify.hpp"

namespace cubmap {

namespace {

// Vertices to flip so that every edge sign becomes +1 (balance colouring of
// the signed adjacency).  Requires a connected orientable map.
std::vector<std::uint8_t> flip_set(const CombMap& m, const VertexIndex& vi,
                                   std::int64_t nverts) {
  std::vector<std::int8_t> color(nverts, -1);
  color[0] = 0;
  std::vector<std::int32_t> q{0};
  for (std::size_t hd = 0; hd < q.size(); ++hd) {
    std::int32_t v = q[hd];
    for (Dart d : vi.orbits[v]) {
      auto w = static_cast<std::int32_t>(vi.of[m.twin(d)]);
      std::int8_t want = m.sign(d) > 0 ? color[v] : std::int8_t(1 - color[v]);
      if (color[w] == -1) {
        color[w] = want;
        q.push_back(w);
      } else if (color[w] != want) {
        throw std::invalid_argument("layout needs an orientable map");
      }
    }
  }
  if (static_cast<std::int64_t>(q.size()) != nverts)
    throw std::invalid_argument("layout needs a connected map");
  std::vector<std::uint8_t> flip(nverts, 0);
  for (std::int64_t v = 0; v < nverts; ++v) flip[v] = color[v] == 1;
  return flip;
}

double orient(const std::array<double, 2>& a, const std::array<double, 2>& b,
              const std::array<double, 2>& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

std::string face_fill(std::size_t size) {
  switch (size) {
    case 3: return "#e63946";
    case 4: return "#f1c453";
    case 5: return "#f4a261";  // warm orange for pentagons
    case 6: return "#efefe9";
    case 7: return "#2a9d8f";  // cool teal for heptagons
    case 8: return "#7b6d8d";
    case 9: return "#a3b18a";
    default: break;
  }
  static const char* const extra[] = {"#cdb4db", "#ffc8dd", "#bde0fe",
                                      "#b9fbc0", "#ffafcc", "#a2d2ff"};
  return extra[size % 6];
}

void append_coord(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  out += buf;
}

}  // namespace

Drawing barycentric_layout(const CombMap& m, std::int64_t outer_face) {
  if (m.live_darts() == 0 || m.euler_characteristic() != 2 ||
      !m.orientable())
    throw std::invalid_argument(
        "layout needs a spherical map (Euler characteristic 2, orientable)");

  Drawing out;
  out.census = m.face_census();
  if (!vertex_connectivity_at_least(m, 3))
    out.warning = "map is not 3-connected; drawing may degenerate";

  // Pick the outer face on the input map, before any sign normalization.
  Dart d0 = kNil;
  int s0 = +1;
  {
    std::int64_t best_id = -1;
    std::size_t best_size = 0;
    for (const auto& orb : m.faces()) {
      std::int64_t id = m.face_id_of_state(orb[0].d, orb[0].s);
      if (outer_face >= 0) {
        if (id == outer_face) {
          d0 = orb[0].d;
          s0 = orb[0].s;
        }
      } else if (orb.size() > best_size ||
                 (orb.size() == best_size && id < best_id)) {
        best_size = orb.size();
        best_id = id;
        d0 = orb[0].d;
        s0 = orb[0].s;
      }
    }
    if (d0 == kNil)
      throw std::invalid_argument("outer face id not found in the map");
  }

  CombMap mm = m;
  VertexIndex vi = mm.vertex_index();
  auto nverts = static_cast<std::int64_t>(vi.orbits.size());
  std::vector<std::uint8_t> flip = flip_set(mm, vi, nverts);
  for (std::int64_t v = 0; v < nverts; ++v)
    if (flip[v]) mm.vertex_flip(vi.orbits[v]);
  for (Dart d : mm.darts())
    if (mm.sign(d) != +1) throw std::logic_error("sign normalization failed");

  // Flipping vertex v sends the face corner (d, s) to (d, -s) for darts d
  // rooted at v, so the chosen outer corner follows the flip of its tail.
  if (flip[vi.of[d0]]) s0 = -s0;
  Dart outer_dart = s0 > 0 ? d0 : mm.twin(d0);

  // With all signs +1, face orbits are plain dart cycles d -> next(twin(d)).
  std::vector<std::uint8_t> seen(mm.dart_limit(), 0);
  for (Dart d : mm.darts()) {
    if (seen[d]) continue;
    std::vector<std::int32_t> cyc;
    Dart e = d;
    do {
      seen[e] = 1;
      cyc.push_back(static_cast<std::int32_t>(vi.of[e]));
      if (e == outer_dart) out.outer = out.faces.size();
      e = mm.next(mm.twin(e));
    } while (e != d);
    out.faces.push_back(std::move(cyc));
  }

  for (Dart d : mm.darts())
    if (d < mm.twin(d))
      out.edges.push_back({static_cast<std::int32_t>(vi.of[d]),
                           static_cast<std::int32_t>(vi.of[mm.twin(d)])});

  // Pin the outer cycle to a regular polygon, relax everything else.
  out.pos.assign(nverts, {0.0, 0.0});
  std::vector<std::uint8_t> pinned(nverts, 0);
  {
    const auto& cyc = out.faces[out.outer];
    auto k = static_cast<double>(cyc.size());
    const double tau = 8.0 * std::atan(1.0);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      double th = tau * (0.25 - static_cast<double>(i) / k);
      out.pos[cyc[i]] = {std::cos(th), std::sin(th)};
      pinned[cyc[i]] = 1;
    }
  }

  constexpr double kTol = 1e-9;
  constexpr std::int64_t kMaxSweeps = 1000000;
  auto neighbor_mean = [&](std::int32_t v, std::array<double, 2>& mean) {
    double sx = 0, sy = 0;
    int deg = 0;
    for (Dart d : vi.orbits[v]) {
      auto w = static_cast<std::int32_t>(vi.of[mm.twin(d)]);
      if (w == v) continue;  // loops pull nowhere
      sx += out.pos[w][0];
      sy += out.pos[w][1];
      ++deg;
    }
    if (deg == 0) return false;
    mean = {sx / deg, sy / deg};
    return true;
  };
  for (out.sweeps = 0; out.sweeps < kMaxSweeps; ++out.sweeps) {
    for (std::int32_t v = 0; v < nverts; ++v) {
      if (pinned[v]) continue;
      std::array<double, 2> mean;
      if (neighbor_mean(v, mean)) out.pos[v] = mean;
    }
    double res = 0.0;
    for (std::int32_t v = 0; v < nverts; ++v) {
      if (pinned[v]) continue;
      std::array<double, 2> mean;
      if (!neighbor_mean(v, mean)) continue;
      res = std::max(res, std::abs(out.pos[v][0] - mean[0]));
      res = std::max(res, std::abs(out.pos[v][1] - mean[1]));
    }
    out.residual = res;
    if (res < kTol) {
      out.converged = true;
      ++out.sweeps;
      break;
    }
  }
  if (!out.converged) {
    if (!out.warning.empty()) out.warning += "; ";
    out.warning += "relaxation did not reach tolerance";
  }
  return out;
}

std::int64_t count_crossings(const Drawing& d) {
  std::int64_t crossings = 0;
  const auto& es = d.edges;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      auto a = es[i][0], b = es[i][1], c = es[j][0], e = es[j][1];
      if (a == c || a == e || b == c || b == e) continue;
      const auto &A = d.pos[a], &B = d.pos[b], &C = d.pos[c], &E = d.pos[e];
      if (orient(A, B, C) * orient(A, B, E) < 0 &&
          orient(C, E, A) * orient(C, E, B) < 0)
        ++crossings;
    }
  return crossings;
}

std::string render_svg(const Drawing& d) {
  const double mid = 500.0, scale = 460.0;
  auto px = [&](double x) { return mid + scale * x; };
  auto py = [&](double y) { return mid - scale * y; };

  std::string svg;
  svg +=
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  {
    std::ostringstream meta;
    meta << "<!-- census:";
    for (const auto& [k, c] : d.census) meta << ' ' << k << ':' << c;
    meta << " -->\n";
    svg += meta.str();
  }
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    if (f == d.outer) continue;
    const auto& cyc = d.faces[f];
    svg += "<polygon points=\"";
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) svg += ' ';
      append_coord(svg, px(d.pos[cyc[i]][0]));
      svg += ',';
      append_coord(svg, py(d.pos[cyc[i]][1]));
    }
    svg += "\" fill=\"" + face_fill(cyc.size()) +
           "\" stroke=\"#1a1a1a\" stroke-width=\"1\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace cubmap
