#pragma once

#include <complex>
#include <span>

namespace trotter::fft {

// Unnormalised in-place DFTs applied to every length-n column of a
// contiguous column-major block (data.size() must be a multiple of n).
//
//   forward:  X_j = sum_k x_k exp(-2 pi i j k / n)
//   backward: x_k = sum_j X_j exp(+2 pi i j k / n)
//
// Plans are cached per (n, columns, direction) and safe to use from several
// threads at once.
void forward(std::span<std::complex<double>> data, int n);
void backward(std::span<std::complex<double>> data, int n);

} // namespace trotter::fft
