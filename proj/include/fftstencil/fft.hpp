#pragma once

#include <complex>
#include <span>

#include "fftstencil/grid.hpp"

namespace fftstencil {

/// In-place DFT of a contiguous buffer, any length n >= 1.
/// Forward convention X[j] = sum_k x[k] exp(-2 pi i j k / n), unnormalized;
/// the inverse carries the 1/n factor. Power-of-two lengths use iterative
/// radix-2; everything else goes through Bluestein's chirp-z reduction.
void fft(std::span<std::complex<double>> buf, bool inverse = false);

/// d-dimensional DFT: one 1-D transform per axis over every line of the
/// array, field components transformed independently.
ComplexGrid multi_fft(const ComplexGrid& g);
ComplexGrid multi_ifft(const ComplexGrid& g);

inline ComplexGrid multi_fft(const FieldGrid& g) { return multi_fft(to_complex(g)); }

} // namespace fftstencil
