#pragma once

#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg::fft {

/// Unnormalized DFT, exponent e^{-ik.x}. Layout [iy*nx + ix], x fastest.
void forward(const GridSpec& grid, std::complex<double>* data);

/// Unnormalized inverse DFT, exponent e^{+ik.x}.
void backward(const GridSpec& grid, std::complex<double>* data);

}  // namespace sqg::fft
