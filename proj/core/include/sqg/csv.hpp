#pragma once

#include <string>

namespace sqg {

/// Formats a double with 17 significant digits (lossless text round-trip).
std::string csv_double(double v);

}  // namespace sqg
