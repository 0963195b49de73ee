#pragma once

#include <cstdint>

#include "fftstencil/band.hpp"
#include "fftstencil/periodic.hpp"

namespace fftstencil {

/// Width of the boundary's region of influence after T steps: sigma * T.
Index roi_width(Index sigma, std::uint64_t T);

/// Optional instrumentation for the divide-and-conquer recursion.
struct RecursionStats {
    int max_depth = 0;      // recursion levels below the top call
    int base_cases = 0;     // looping base cases taken
    int periodic_solves = 0; // slab solves issued
};

/// Divide-and-conquer solve for the boundary band: returns the cells with
/// dist <= sigma * T at time T, exactly as evolve_aperiodic_naive would
/// compute them (up to floating error).
///
/// Each level halves time: with T1 = ceil(T/2), T2 = floor(T/2) and
/// Delta = sigma * T1, step 1 advances per-face slabs of the input band
/// (dist <= 4 Delta) periodically for T1 steps keeping dist in
/// (Delta, 3 Delta], while a recursive call produces dist <= Delta; step 2
/// repeats from the assembled dist <= 3 Delta data over T2 steps, keeping
/// (sigma T2, sigma T] from the slab solves and dist <= sigma T2 from the
/// second recursive call. Below the cutoff (and always at T <= 1) the band
/// is advanced by direct looping with the boundary rule applied each step.
///
/// Requires 4 * sigma * ceil(T/2) <= ceil(min dim / 2); otherwise raises
/// FallbackRequired (consumed by solve_aperiodic).
BandGrid recursive_boundary(const FieldGrid& a0, const StencilKernel& k,
                            const BoundaryRule& br, std::uint64_t T, Index cutoff,
                            RecursionStats* stats = nullptr);

/// Full aperiodic solve: interior (dist > sigma T) from one periodic solve
/// of the whole grid, boundary band from recursive_boundary. Falls back to
/// evolve_aperiodic_naive when the band does not fit
/// (4 sigma ceil(T/2) > ceil(min dim / 2)). Every cell is written exactly
/// once. T = 0 returns the input.
FieldGrid solve_aperiodic(const FieldGrid& a0, const StencilKernel& k,
                          const BoundaryRule& br, std::uint64_t T, Index cutoff = 32,
                          StageTimings* st = nullptr);

} // namespace fftstencil
