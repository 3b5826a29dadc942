// Text serialization of combinatorial maps.
//
// Format (line based, bit exact):
//   line 1: CUBMAP 1
//   line 2: darts <D>
//   then D lines: <dart> <twin> <next> <sign>   with sign in {+,-},
//   darts 0-based and sorted by id.
// A map may carry one optional trailer line describing a triarc marking:
//   TRIARC <cornerDart0> <cornerDart1> <cornerDart2> <a> <b> <c> [nucleusFaceId]
#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "cubmap/map.hpp"

namespace cubmap {

struct TriarcTrailer {
  std::array<Dart, 3> corners{};
  std::array<std::int64_t, 3> sides{};
  std::optional<std::int64_t> nucleus_face;  // canonical face id
};

struct ParsedMap {
  CombMap map;
  std::optional<TriarcTrailer> trailer;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Compacts, then emits the map block.
std::string serialize(const CombMap& m);

// Emits the map block plus a TRIARC trailer.  corners and nuclei are given
// in m's dart ids and survive compaction; the trailer records the nucleus
// face id only when exactly one nucleus is tracked.
std::string serialize_triarc_block(const CombMap& m,
                                   const std::array<Dart, 3>& corners,
                                   const std::array<std::int64_t, 3>& sides,
                                   const std::vector<Dart>& nuclei);

// Strict parser: rejects malformed headers, duplicate or unsorted dart
// lines, out-of-range references, non-involutive or fixed-point twins,
// edge signature mismatches, and trailing garbage — each with the
// offending line number.
ParsedMap parse(const std::string& text);

}  // namespace cubmap
