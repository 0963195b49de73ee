#pragma once

#include <string>
#include <vector>

#include "fftstencil/kernel.hpp"

namespace fftstencil {

/// Canonical benchmark stencils. Heat kernels are u + alpha * (discrete
/// Laplacian) with alpha = 0.125; the remaining sets carry uniform weights
/// summing to 1 (see README for the documented tap sets):
///
///   heat1d   3 taps,  sigma 1       heat2d   5 taps,  sigma 1
///   seidel2d 9 taps,  sigma 1       jacobi2d 25 taps, sigma 2
///   heat3d   7 taps,  sigma 1       19pt3d   19 taps, sigma 2
///
/// Unknown names raise SpecError listing the available stencils.
StencilKernel builtin_stencil(const std::string& name);

std::vector<std::string> builtin_stencil_names();

/// Spatial rank of a builtin (1, 2 or 3).
int builtin_stencil_rank(const std::string& name);

} // namespace fftstencil
