#pragma once

#include <cstdint>

#include "fftstencil/boundary.hpp"
#include "fftstencil/kernel.hpp"

namespace fftstencil {

/// Exact discrete modal reference solutions used by accuracy mode. The
/// initial data is a fixed sum of three low-frequency modes; the reference
/// scales each mode by its amplification factor raised to the T-th power in
/// compensated double-double arithmetic, so the reference error is far below
/// either solver's floating-point error.
struct ModalProblem {
    FieldGrid initial;
    FieldGrid reference; // exact data at time T
};

/// Periodic case: complex exponential modes, valid for any real scalar
/// kernel. Mode eigenvalues are sum_off coeff(off) * exp(2 pi i k.off / dims).
ModalProblem modal_problem_periodic(const GridShape& shape, const StencilKernel& k,
                                    std::uint64_t T);

/// Aperiodic case: product sine modes pinned to zero on the dist <= 1 shell.
/// Requires a scalar kernel with only axial taps at offsets 0 and +-1,
/// symmetric per axis (the heat family), and a Dirichlet-0 rule.
ModalProblem modal_problem_aperiodic(const GridShape& shape, const StencilKernel& k,
                                     const BoundaryRule& br, std::uint64_t T);

} // namespace fftstencil
