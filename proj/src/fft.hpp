#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace prcis::detail {

std::size_t next_pow2(std::size_t n);

/// Real-input FFT of size `n` (a power of two). `in` is zero-padded to `n`;
/// the result holds the n/2 + 1 non-redundant bins.
std::vector<std::complex<double>> rfft(std::span<const double> in,
                                       std::size_t n);

/// Inverse of rfft, unscaled: the result is n times the true inverse.
std::vector<double> irfft_unscaled(std::span<const std::complex<double>> in,
                                   std::size_t n);

}  // namespace prcis::detail
