#pragma once

#include <cstdio>
#include <string>

namespace oim {

// Shortest-faithful decimal form used across all text outputs.
inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace oim
