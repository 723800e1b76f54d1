#pragma once

#include "mhdlab/grid.hpp"

#include <complex>

namespace mhdlab::detail {

/// Unnormalized d-dimensional complex transform of one contiguous block of
/// grid.modes() values. sign = -1 is forward, +1 is inverse.
void fft(const Grid& grid, const std::complex<double>* in, std::complex<double>* out, int sign);

}  // namespace mhdlab::detail
