#include "cubmap/io.hpp"

#include <charconv>
#include <cstdio>
#include <string_view>
#include <vector>

namespace cubmap {

namespace {

void append_dart_lines(std::string& out, const CombMap& c) {
  char buf[72];
  for (Dart d = 0; d < c.dart_limit(); ++d) {
    int n = std::snprintf(buf, sizeof(buf), "%d %d %d %c\n", d, c.twin(d),
                          c.next(d), c.sign(d) > 0 ? '+' : '-');
    out.append(buf, static_cast<std::size_t>(n));
  }
}

std::string header(const CombMap& c) {
  return "CUBMAP 1\ndarts " + std::to_string(c.dart_limit()) + "\n";
}

// Splits into lines; a single trailing newline does not open a last line.
std::vector<std::string_view> split_lines(const std::string& text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(std::string_view(text).substr(pos));
      break;
    }
    lines.push_back(std::string_view(text).substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

std::int64_t parse_int(std::string_view tok, int line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("bad ") + what + " '" +
                               std::string(tok) + "'");
  return value;
}

}  // namespace

std::string serialize(const CombMap& m) {
  CombMap c = m.compact();
  std::string out = header(c);
  out.reserve(out.size() + 28 * static_cast<std::size_t>(c.dart_limit()));
  append_dart_lines(out, c);
  return out;
}

std::string serialize_triarc_block(const CombMap& m,
                                   const std::array<Dart, 3>& corners,
                                   const std::array<std::int64_t, 3>& sides,
                                   const std::vector<Dart>& nuclei) {
  std::vector<Dart> remap;
  CombMap c = m.compact(&remap);
  std::string out = header(c);
  out.reserve(out.size() + 28 * static_cast<std::size_t>(c.dart_limit()));
  append_dart_lines(out, c);
  out += "TRIARC";
  for (Dart cd : corners) out += " " + std::to_string(remap[cd]);
  for (std::int64_t s : sides) out += " " + std::to_string(s);
  if (nuclei.size() == 1)
    out += " " + std::to_string(c.face_id_of_state(remap[nuclei[0]], +1));
  out += "\n";
  return out;
}

ParsedMap parse(const std::string& text) {
  std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty() || lines[0] != "CUBMAP 1")
    throw ParseError(1, "expected header 'CUBMAP 1'");
  if (lines.size() < 2) throw ParseError(2, "expected 'darts <D>'");
  auto toks = split_tokens(lines[1]);
  if (toks.size() != 2 || toks[0] != "darts")
    throw ParseError(2, "expected 'darts <D>'");
  std::int64_t d64 = parse_int(toks[1], 2, "dart count");
  if (d64 < 0 || d64 > (std::int64_t{1} << 31) - 2)
    throw ParseError(2, "dart count out of range");
  const Dart D = static_cast<Dart>(d64);

  std::vector<Dart> twin(D, kNil), next(D, kNil);
  std::vector<std::int8_t> sign(D, 0);
  for (Dart d = 0; d < D; ++d) {
    int ln = 3 + d;
    if (static_cast<std::size_t>(ln - 1) >= lines.size())
      throw ParseError(ln, "missing dart line");
    auto t = split_tokens(lines[ln - 1]);
    if (t.size() != 4) throw ParseError(ln, "malformed dart line");
    std::int64_t id = parse_int(t[0], ln, "dart id");
    if (id != d) {
      if (id >= 0 && id < d)
        throw ParseError(ln, "duplicate dart line");
      throw ParseError(ln, "dart lines must be sorted by id");
    }
    std::int64_t tw = parse_int(t[1], ln, "twin");
    std::int64_t nx = parse_int(t[2], ln, "next");
    if (tw < 0 || tw >= D) throw ParseError(ln, "twin out of range");
    if (nx < 0 || nx >= D) throw ParseError(ln, "next out of range");
    if (t[3] == "+")
      sign[d] = 1;
    else if (t[3] == "-")
      sign[d] = -1;
    else
      throw ParseError(ln, "bad sign '" + std::string(t[3]) + "'");
    twin[d] = static_cast<Dart>(tw);
    next[d] = static_cast<Dart>(nx);
  }

  for (Dart d = 0; d < D; ++d) {
    int ln = 3 + d;
    if (twin[d] == d) throw ParseError(ln, "fixed point in twin");
    if (twin[twin[d]] != d) throw ParseError(ln, "twin not involutive");
    if (sign[d] != sign[twin[d]])
      throw ParseError(ln, "edge signature mismatch");
  }
  {
    std::vector<std::uint8_t> hit(D, 0);
    for (Dart d = 0; d < D; ++d) {
      if (hit[next[d]])
        throw ParseError(3 + d, "next is not a bijection");
      hit[next[d]] = 1;
    }
  }

  ParsedMap out;
  out.map = CombMap::from_arrays(std::move(twin), std::move(next),
                                 std::move(sign));

  std::size_t cursor = 2 + static_cast<std::size_t>(D);
  if (cursor < lines.size()) {
    int ln = static_cast<int>(cursor) + 1;
    auto t = split_tokens(lines[cursor]);
    if (!t.empty() && t[0] == "TRIARC") {
      if (t.size() != 7 && t.size() != 8)
        throw ParseError(ln, "malformed TRIARC trailer");
      TriarcTrailer tr;
      for (int i = 0; i < 3; ++i) {
        std::int64_t c = parse_int(t[1 + i], ln, "corner dart");
        if (c < 0 || c >= D) throw ParseError(ln, "corner dart out of range");
        tr.corners[i] = static_cast<Dart>(c);
      }
      for (int i = 0; i < 3; ++i) {
        tr.sides[i] = parse_int(t[4 + i], ln, "side length");
        if (tr.sides[i] < 0) throw ParseError(ln, "negative side length");
      }
      if (t.size() == 8) {
        std::int64_t id = parse_int(t[7], ln, "nucleus face id");
        Dart nd = static_cast<Dart>(id / 2);
        int ns = (id % 2 == 0) ? +1 : -1;
        if (id < 0 || nd >= D ||
            out.map.face_id_of_state(nd, ns) != id)
          throw ParseError(ln, "bad nucleus face id");
        tr.nucleus_face = id;
      }
      out.trailer = tr;
      ++cursor;
    }
  }
  if (cursor < lines.size())
    throw ParseError(static_cast<int>(cursor) + 1, "trailing garbage");
  return out;
}

}  // namespace cubmap
