#include "sqg/csv.hpp"

#include <cmath>
#include <cstdio>

namespace sqg {

std::string csv_double(double v) {
  // 17 significant digits round-trips any finite double through decimal text.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace sqg
