#include "fftstencil/periodic.hpp"

#include <chrono>

namespace fftstencil {

namespace {

class Stopwatch {
public:
    explicit Stopwatch(double* sink) : sink_(sink), start_(clock::now()) {}
    ~Stopwatch() {
        if (sink_)
            *sink_ += std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    double* sink_;
    clock::time_point start_;
};

double* stage(StageTimings* st, double StageTimings::*member) {
    return st ? &(st->*member) : nullptr;
}

FieldGrid pipeline(const FieldGrid& a0, const DiagonalSpectrum& lam, std::uint64_t T,
                   StageTimings* st) {
    ComplexGrid x(a0.shape);
    {
        Stopwatch w(stage(st, &StageTimings::forward_fft));
        x = multi_fft(to_complex(a0));
    }
    DiagonalSpectrum lam_t;
    {
        Stopwatch w(stage(st, &StageTimings::squaring));
        lam_t = pow_spectrum(lam, T);
    }
    ComplexGrid y(a0.shape);
    {
        Stopwatch w(stage(st, &StageTimings::hadamard));
        y = hadamard(lam_t, x);
    }
    return realize_checked(y, st);
}

} // namespace

FieldGrid realize_checked(const ComplexGrid& y, StageTimings* st) {
    Stopwatch w(stage(st, &StageTimings::inverse_fft));
    const ComplexGrid z = multi_ifft(y);
    double max_real = 0, max_imag = 0;
    for (Index i = 0; i < z.shape.values(); ++i) {
        const auto v = z.data[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericError("solve_periodic: non-finite value after inverse FFT");
        max_real = std::max(max_real, std::abs(v.real()));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_imag > 1e-6 * max_real)
        throw NumericError("solve_periodic: imaginary residue " +
                           std::to_string(max_imag) + " exceeds 1e-6 * max |real| (" +
                           std::to_string(max_real) + "); spectrum likely blew up");
    return real_part(z);
}

const DiagonalSpectrum& SpectrumCache::get(const StencilKernel& k,
                                           const GridShape& shape) {
    std::scoped_lock lock(mu_);
    auto it = by_dims_.find(shape.dims());
    if (it != by_dims_.end()) return it->second;
    auto [pos, ok] = by_dims_.emplace(shape.dims(), spectrum_from_kernel(k, shape));
    return pos->second;
}

FieldGrid solve_periodic(const FieldGrid& a0, const StencilKernel& k, std::uint64_t T,
                         StageTimings* st) {
    k.require_fits(a0.shape);
    if (T == 0) return a0;
    DiagonalSpectrum lam;
    {
        Stopwatch w(stage(st, &StageTimings::forward_fft));
        lam = spectrum_from_kernel(k, a0.shape);
    }
    return pipeline(a0, lam, T, st);
}

FieldGrid solve_periodic_cached(const FieldGrid& a0, const StencilKernel& k,
                                std::uint64_t T, SpectrumCache& cache,
                                StageTimings* st) {
    k.require_fits(a0.shape);
    if (T == 0) return a0;
    const DiagonalSpectrum* lam;
    {
        Stopwatch w(stage(st, &StageTimings::forward_fft));
        lam = &cache.get(k, a0.shape);
    }
    return pipeline(a0, *lam, T, st);
}

FieldGrid solve_periodic_vector(const FieldGrid& a0, const StencilKernel& k,
                                std::uint64_t T, StageTimings* st) {
    if (k.fields() < 2)
        throw SpecError("solve_periodic_vector: kernel must carry m > 1 blocks");
    return solve_periodic(a0, k, T, st);
}

FieldGrid solve_periodic_implicit(const StencilKernel& q, const StencilKernel& s,
                                  const FieldGrid& a0, std::uint64_t T,
                                  StageTimings* st) {
    if (q.fields() != 1 || s.fields() != 1)
        throw SpecError("solve_periodic_implicit: scalar kernels only");
    q.require_fits(a0.shape);
    s.require_fits(a0.shape);
    if (T == 0) return a0;
    DiagonalSpectrum lam_r;
    {
        Stopwatch w(stage(st, &StageTimings::forward_fft));
        const DiagonalSpectrum lam_q = spectrum_from_kernel(q, a0.shape);
        const DiagonalSpectrum lam_s = spectrum_from_kernel(s, a0.shape);
        lam_r = multiply_spectra(pseudo_inverse_spectrum(lam_q), lam_s);
    }
    return pipeline(a0, lam_r, T, st);
}

} // namespace fftstencil
