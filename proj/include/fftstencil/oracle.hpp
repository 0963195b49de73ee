#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "fftstencil/boundary.hpp"
#include "fftstencil/kernel.hpp"

namespace fftstencil {

/// One explicit stencil step on a torus: out[i, f] = sum over taps and input
/// fields of block(f, g) * a[(i + offset) mod dims, g]. Taps are applied in
/// sorted offset order so floating-point sums are reproducible.
FieldGrid step_periodic(const FieldGrid& a, const StencilKernel& k);

/// T-fold composition of step_periodic (two alternating buffers). T = 0
/// returns the input unchanged.
FieldGrid evolve_periodic_naive(const FieldGrid& a0, const StencilKernel& k,
                                std::uint64_t T);

/// One aperiodic step: cells with dist <= sigma come from the boundary rule,
/// all others from the stencil (their full neighborhood exists in-bounds).
/// Requires sigma >= 1 and 2 sigma < min dim.
FieldGrid step_aperiodic(const FieldGrid& a, const StencilKernel& k,
                         const BoundaryRule& br);

FieldGrid evolve_aperiodic_naive(const FieldGrid& a0, const StencilKernel& k,
                                 const BoundaryRule& br, std::uint64_t T);

/// Explicit (N m) x (N m) matrix with step_periodic(a, k) = M * flatten(a).
/// Guarded to test scale: throws once N * fields exceeds 2048.
Eigen::MatrixXd dense_stencil_matrix(const StencilKernel& k, const GridShape& shape);

} // namespace fftstencil
