#pragma once

#include <chrono>
#include <cstdlib>

// Internal stage-timing hooks, enabled by setting CUBMAP_TRACE in the
// environment.  Lines go to stderr and never affect normal output.

namespace cubmap::trace {

inline bool on() {
  static const bool enabled = std::getenv("CUBMAP_TRACE") != nullptr;
  return enabled;
}

inline double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

}  // namespace cubmap::trace
