#pragma once

#include <cstdint>
#include <map>
#include <mutex>

#include "fftstencil/oracle.hpp"
#include "fftstencil/spectrum.hpp"

namespace fftstencil {

/// Wall-clock seconds spent in each pipeline stage, accumulated across the
/// solver calls that were handed this sink.
struct StageTimings {
    double forward_fft = 0;
    double squaring = 0;
    double hadamard = 0;
    double inverse_fft = 0;
    double boundary_recursion = 0;
    double sum() const {
        return forward_fft + squaring + hadamard + inverse_fft + boundary_recursion;
    }
};

/// Reusable spectra for repeated solves with the same kernel on varying
/// shapes (the aperiodic recursion hits the same slab shapes repeatedly).
/// Safe to share between the recursion's concurrent branches.
class SpectrumCache {
public:
    const DiagonalSpectrum& get(const StencilKernel& k, const GridShape& shape);

private:
    std::mutex mu_;
    std::map<std::vector<Index>, DiagonalSpectrum> by_dims_;
};

/// Evolves periodic grid data T steps in the frequency domain:
/// transform the initial data and the kernel's generator column, raise the
/// spectrum to the T-th power by repeated squaring, multiply, transform back.
/// The imaginary residue left after the inverse transform must stay below
/// 1e-6 * max |real|; anything larger (or any non-finite value) raises
/// NumericError, which is how spectral blow-up surfaces.
FieldGrid solve_periodic(const FieldGrid& a0, const StencilKernel& k, std::uint64_t T,
                         StageTimings* st = nullptr);

/// Same pipeline with a caller-provided spectrum cache.
FieldGrid solve_periodic_cached(const FieldGrid& a0, const StencilKernel& k,
                                std::uint64_t T, SpectrumCache& cache,
                                StageTimings* st = nullptr);

/// Vector-valued fields: the kernel carries m x m blocks and the squaring
/// step multiplies block matrices. Requires fields > 1 (use solve_periodic
/// for scalars; the pipeline is shared).
FieldGrid solve_periodic_vector(const FieldGrid& a0, const StencilKernel& k,
                                std::uint64_t T, StageTimings* st = nullptr);

/// Implicit update q a_{t+1} = s a_t, solved through the explicit spectrum
/// pinv(spectrum(q)) * spectrum(s). Scalar fields only.
FieldGrid solve_periodic_implicit(const StencilKernel& q, const StencilKernel& s,
                                  const FieldGrid& a0, std::uint64_t T,
                                  StageTimings* st = nullptr);

/// Inverse transform + residue check + imaginary-part discard shared by the
/// solvers above.
FieldGrid realize_checked(const ComplexGrid& y, StageTimings* st = nullptr);

} // namespace fftstencil
