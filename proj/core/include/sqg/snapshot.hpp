#pragma once

#include <string>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

/// One "SQGF" binary snapshot: physical field samples plus run metadata.
/// Layout: magic "SQGF", u32 version = 1, u32 nx, u32 ny, f64 time, f64 kappa,
/// f64 gamma, then nx*ny little-endian f64 values, row-major with x fastest.
struct Snapshot {
  GridSpec grid;
  double time = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  std::vector<double> values;
};

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

}  // namespace sqg
