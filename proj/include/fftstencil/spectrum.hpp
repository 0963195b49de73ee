#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "fftstencil/fft.hpp"
#include "fftstencil/kernel.hpp"

namespace fftstencil {

/// Frequency-domain form of a circulant stencil: one m x m complex block per
/// frequency, stored frequency-major (block entries contiguous, row-major).
/// For m = 1 the blocks are plain complex scalars.
struct DiagonalSpectrum {
    GridShape shape; // fields = m
    Eigen::ArrayXcd blocks; // cells * m * m entries

    DiagonalSpectrum() = default;
    explicit DiagonalSpectrum(GridShape s)
        : shape(std::move(s)),
          blocks(Eigen::ArrayXcd::Zero(shape.cells() * shape.fields() * shape.fields())) {}

    int block_dim() const { return shape.fields(); }

    std::complex<double>& entry(Index freq, int r, int c) {
        const int m = shape.fields();
        return blocks[freq * m * m + r * m + c];
    }
    std::complex<double> entry(Index freq, int r, int c) const {
        const int m = shape.fields();
        return blocks[freq * m * m + r * m + c];
    }

    Eigen::MatrixXcd block(Index freq) const;
    void set_block(Index freq, const Eigen::MatrixXcd& b);
};

/// Diagonalizes the stencil: builds the generator grid s with
/// s[(-offset) mod dims] += block (so s[i] holds column 0 of the dense
/// operator), then takes one multi-FFT per block component.
DiagonalSpectrum spectrum_from_kernel(const StencilKernel& k, const GridShape& shape);

/// Per-frequency binary exponentiation; for m > 1 every multiply is an
/// m x m complex matrix product. T = 0 yields identity blocks.
DiagonalSpectrum pow_spectrum(const DiagonalSpectrum& lam, std::uint64_t T);

/// Scalar-only pseudoinverse: entries with |v| <= 1e-12 * max |v| map to 0,
/// everything else to 1/v.
DiagonalSpectrum pseudo_inverse_spectrum(const DiagonalSpectrum& lam);

/// Blockwise product of two spectra (frequency by frequency).
DiagonalSpectrum multiply_spectra(const DiagonalSpectrum& a, const DiagonalSpectrum& b);

/// Per-frequency block times m-vector: y[j] = lam[j] * x[j].
ComplexGrid hadamard(const DiagonalSpectrum& lam, const ComplexGrid& x);

} // namespace fftstencil
