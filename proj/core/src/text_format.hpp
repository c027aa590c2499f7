#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace incexp::detail {

/// 17 significant digits, `nan`/`inf`/`-inf` for non-finite values.
inline std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace incexp::detail
