#pragma once

#include <complex>
#include <vector>

#include "relgs/grid.hpp"

namespace relgs {

// Pinned transform convention on the periodic box:
//   forward:  F[f](k) = h^N * sum_y f(y) e^{-i k.y}
//   inverse:  f(y) = (2L)^{-N} * sum_k F[f](k) e^{+i k.y}
// Parseval: h^N sum |f|^2 = (2L)^{-N} sum |F[f]|^2.
// Spectral storage is row-major in standard transform frequency order.

std::vector<std::complex<double>> forward_transform(
    const Grid& grid, const std::vector<double>& values);

std::vector<double> inverse_transform(
    const Grid& grid, const std::vector<std::complex<double>>& spectrum);

std::vector<std::complex<double>> inverse_transform_complex(
    const Grid& grid, const std::vector<std::complex<double>>& spectrum);

}  // namespace relgs
