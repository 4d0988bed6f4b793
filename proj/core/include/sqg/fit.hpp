#pragma once

#include <vector>

namespace sqg {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool degenerate = false;  // fewer than 2 points or zero variance in y
};

/// Ordinary least squares y = intercept + slope * x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sqg
