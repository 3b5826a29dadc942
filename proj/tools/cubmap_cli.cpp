// Command-line front end: build, verify, inspect, and render cubic maps.
//
// Exit codes: 0 success (and all requested verification passing),
// 1 verification failure, 2 invalid input.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "cubmap/io.hpp"
#include "cubmap/layout.hpp"
#include "cubmap/surface_builder.hpp"
#include "cubmap/verify.hpp"

namespace {

using namespace cubmap;

std::int64_t parse_number(const std::string& text) {
  std::int64_t value = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, value);
  if (ec != std::errc{} || p != e || text.empty())
    throw std::invalid_argument("malformed number: " + text);
  return value;
}

FaceVector parse_faces(const std::string& text) {
  FaceVector p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("malformed face entry: " + tok);
    std::int64_t k = parse_number(tok.substr(0, colon));
    std::string count_text = tok.substr(colon + 1);
    std::int64_t c = count_text.empty() ? 0 : parse_number(count_text);
    if (k == 5 || k == 7)
      throw std::invalid_argument(
          "face sizes 5 and 7 are chosen by the builder");
    if (k < 3) throw std::invalid_argument("face sizes must be at least 3");
    if (c < 0)
      throw std::invalid_argument("face counts must be nonnegative");
    p[static_cast<int>(k)] += c;
  }
  return p;
}

SurfaceSpec parse_surface(const std::string& text) {
  if (text == "sphere") return SurfaceSpec::sphere();
  if (text == "torus") return SurfaceSpec::torus();
  if (text.rfind("og:", 0) == 0)
    return SurfaceSpec::with_handles(
        static_cast<int>(parse_number(text.substr(3))));
  if (text.rfind("nog:", 0) == 0) {
    std::int64_t c = parse_number(text.substr(4));
    if (c < 1)
      throw std::invalid_argument(
          "non-orientable surface needs at least one crosscap");
    return SurfaceSpec::with_crosscaps(static_cast<int>(c));
  }
  throw std::invalid_argument("unknown surface token: " + text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
  if (!out) throw std::invalid_argument("cannot write file: " + path);
}

void print_report(std::ostream& os, const CombMap& m,
                  const RealizationReport& rep) {
  Counts c = m.counts();
  os << "vertices " << c.v << "\nedges " << c.e << "\nfaces " << c.f
     << "\neuler " << rep.chi << "\norientable "
     << (rep.orientable ? "yes" : "no") << "\ncensus";
  for (const auto& [k, n] : rep.census) os << ' ' << k << ':' << n;
  os << "\npentagons " << rep.n5 << "\nheptagons " << rep.n7 << "\ndeficit "
     << rep.deficit << "\nconnectivity " << rep.connectivity
     << "\nedge_width ";
  if (rep.edge_width)
    os << *rep.edge_width;
  else
    os << "unbounded";
  os << "\nface_width ";
  if (rep.face_width)
    os << *rep.face_width;
  else
    os << "unbounded";
  os << '\n';
}

struct Options {
  std::string faces_text;
  std::string surface_text = "sphere";
  std::string in_path, out_path, svg_path;
  int width = 1;
  int growth = 0;
  bool verify = false;
  bool seedless = false;
};

int run_build(const Options& opt) {
  if (opt.width < 1)
    throw std::invalid_argument("face-width target must be at least 1");
  if (opt.growth < 0)
    throw std::invalid_argument("growth must be nonnegative");
  FaceVector p = parse_faces(opt.faces_text);
  SurfaceSpec S = parse_surface(opt.surface_text);
  auto [m, rep] = build_surface(p, S, opt.width, opt.growth);
  write_file(opt.out_path, serialize(m));
  std::cout << "map " << opt.out_path << '\n';
  print_report(std::cout, m, rep);
  int code = 0;
  if (opt.verify) {
    VerifyOutcome v = verify_realization(m, p, S, opt.width);
    std::cout << v.log;
    code = v.pass ? 0 : 1;
  }
  if (!opt.svg_path.empty()) {
    Drawing d = barycentric_layout(m);
    if (!d.warning.empty()) std::cerr << "warning: " << d.warning << '\n';
    write_file(opt.svg_path, render_svg(d));
  }
  return code;
}

int run_verify(const Options& opt) {
  if (opt.width < 1)
    throw std::invalid_argument("face-width target must be at least 1");
  FaceVector p = parse_faces(opt.faces_text);
  SurfaceSpec S = parse_surface(opt.surface_text);
  ParsedMap parsed = parse(read_file(opt.in_path));
  VerifyOutcome v = verify_realization(parsed.map, p, S, opt.width);
  std::cout << v.log;
  return v.pass ? 0 : 1;
}

int run_stats(const Options& opt) {
  ParsedMap parsed = parse(read_file(opt.in_path));
  const CombMap& m = parsed.map;
  Counts c = m.counts();
  std::cout << "darts " << m.live_darts() << "\nvertices " << c.v
            << "\nedges " << c.e << "\nfaces " << c.f << "\neuler "
            << m.euler_characteristic() << "\norientable "
            << (m.orientable() ? "yes" : "no") << "\ncensus";
  for (const auto& [k, n] : m.face_census()) std::cout << ' ' << k << ':' << n;
  std::cout << '\n';
  if (parsed.trailer) {
    std::cout << "triarc sides " << parsed.trailer->sides[0] << ' '
              << parsed.trailer->sides[1] << ' ' << parsed.trailer->sides[2]
              << '\n';
  }
  return 0;
}

int run_render(const Options& opt) {
  ParsedMap parsed = parse(read_file(opt.in_path));
  Drawing d = barycentric_layout(parsed.map);
  if (!d.warning.empty()) std::cerr << "warning: " << d.warning << '\n';
  write_file(opt.out_path, render_svg(d));
  std::cout << "svg " << opt.out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic combinatorial maps with prescribed faces on surfaces"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* build = app.add_subcommand(
      "build", "Construct a map realizing a face vector on a surface");
  build->add_option("--faces", opt.faces_text,
                    "Prescribed faces as k:count,... (sizes 5 and 7 are "
                    "chosen by the builder)");
  build->add_option("--surface", opt.surface_text,
                    "sphere | torus | og:<h> | nog:<c>");
  build->add_option("--out", opt.out_path, "Output map file")->required();
  build->add_option("--width", opt.width,
                    "Face-width target (surfaces of positive genus)");
  build->add_option("--growth", opt.growth, "Extra enlargement rounds");
  build->add_flag("--verify", opt.verify,
                  "Run the full verifier on the result");
  build->add_option("--svg", opt.svg_path, "Also draw the map (spheres)");
  build->add_flag("--seedless", opt.seedless,
                  "Reserved; construction is deterministic");

  CLI::App* verify =
      app.add_subcommand("verify", "Verify a map file against a request");
  verify->add_option("input", opt.in_path, "Map file")->required();
  verify->add_option("--faces", opt.faces_text, "Prescribed faces");
  verify->add_option("--surface", opt.surface_text,
                     "sphere | torus | og:<h> | nog:<c>");
  verify->add_option("--width", opt.width, "Face-width target");

  CLI::App* stats = app.add_subcommand("stats", "Print map statistics");
  stats->add_option("input", opt.in_path, "Map file")->required();

  CLI::App* render =
      app.add_subcommand("render", "Draw a sphere map as SVG");
  render->add_option("input", opt.in_path, "Map file")->required();
  render->add_option("--out", opt.out_path, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (build->parsed()) return run_build(opt);
    if (verify->parsed()) return run_verify(opt);
    if (stats->parsed()) return run_stats(opt);
    if (render->parsed()) return run_render(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
