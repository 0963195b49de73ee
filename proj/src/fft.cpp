#include "fftstencil/fft.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "fftstencil/parallel.hpp"

namespace fftstencil {

namespace {

using cd = std::complex<double>;

// exp(-i pi k^2 / n) with the quadratic reduced mod 2n so the angle stays
// small and exact for any k.
cd chirp_factor(Index k, Index n) {
    const Index two_n = 2 * n;
    const Index q = static_cast<Index>((static_cast<__int128>(k) * k) % two_n);
    const double angle = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

struct Plan {
    Index n = 0;
    bool pow2 = false;
    // radix-2 path
    std::vector<Index> bitrev;
    std::vector<cd> twiddle; // twiddle[j] = exp(-2 pi i j / n), j < n/2
    // Bluestein path
    std::shared_ptr<const Plan> sub; // power-of-two plan of size padded
    Index padded = 0;
    std::vector<cd> chirp;     // exp(-i pi k^2 / n), k < n
    std::vector<cd> chirp_fft; // forward FFT of the wrapped conjugate chirp
};

void fft_pow2(const Plan& p, cd* a) {
    const Index n = p.n;
    for (Index i = 0; i < n; ++i) {
        const Index j = p.bitrev[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (Index len = 2; len <= n; len <<= 1) {
        const Index half = len >> 1;
        const Index step = n / len;
        for (Index base = 0; base < n; base += len) {
            for (Index j = 0; j < half; ++j) {
                const cd w = p.twiddle[j * step];
                const cd u = a[base + j];
                const cd v = a[base + j + half] * w;
                a[base + j] = u + v;
                a[base + j + half] = u - v;
            }
        }
    }
}

std::shared_ptr<const Plan> make_plan(Index n);

std::mutex g_plan_mutex;
std::map<Index, std::shared_ptr<const Plan>> g_plan_cache;

std::shared_ptr<const Plan> plan_for(Index n) {
    {
        std::scoped_lock lock(g_plan_mutex);
        auto it = g_plan_cache.find(n);
        if (it != g_plan_cache.end()) return it->second;
    }
    // Built outside the lock: Bluestein plans recurse into plan_for for
    // their padded power-of-two size.
    auto p = make_plan(n);
    std::scoped_lock lock(g_plan_mutex);
    return g_plan_cache.try_emplace(n, std::move(p)).first->second;
}

std::shared_ptr<const Plan> make_plan(Index n) {
    auto plan = std::make_shared<Plan>();
    plan->n = n;
    plan->pow2 = std::has_single_bit(static_cast<std::uint64_t>(n));
    if (plan->pow2) {
        const int bits = std::countr_zero(static_cast<std::uint64_t>(n));
        plan->bitrev.resize(n);
        for (Index i = 0; i < n; ++i) {
            std::uint64_t r = 0, v = static_cast<std::uint64_t>(i);
            for (int b = 0; b < bits; ++b) {
                r = (r << 1) | (v & 1);
                v >>= 1;
            }
            plan->bitrev[i] = static_cast<Index>(r);
        }
        plan->twiddle.resize(std::max<Index>(n / 2, 1));
        for (Index j = 0; j < static_cast<Index>(plan->twiddle.size()); ++j) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(n);
            plan->twiddle[j] = {std::cos(angle), std::sin(angle)};
        }
        return plan;
    }

    Index padded = 1;
    while (padded < 2 * n - 1) padded <<= 1;
    plan->padded = padded;
    plan->sub = plan_for(padded);
    plan->chirp.resize(n);
    for (Index k = 0; k < n; ++k) plan->chirp[k] = chirp_factor(k, n);

    std::vector<cd> b(padded, cd(0, 0));
    b[0] = std::conj(plan->chirp[0]);
    for (Index k = 1; k < n; ++k) {
        const cd v = std::conj(plan->chirp[k]);
        b[k] = v;
        b[padded - k] = v;
    }
    fft_pow2(*plan->sub, b.data());
    plan->chirp_fft = std::move(b);
    return plan;
}

void fft_forward(const Plan& p, cd* a) {
    if (p.pow2) {
        fft_pow2(p, a);
        return;
    }
    // Bluestein: a size-n DFT as a circular convolution of chirp-modulated
    // sequences, evaluated with power-of-two transforms.
    const Index n = p.n, padded = p.padded;
    std::vector<cd> work(padded, cd(0, 0));
    for (Index k = 0; k < n; ++k) work[k] = a[k] * p.chirp[k];
    fft_pow2(*p.sub, work.data());
    for (Index k = 0; k < padded; ++k) work[k] *= p.chirp_fft[k];
    // Inverse of the padded transform via conjugation.
    for (auto& v : work) v = std::conj(v);
    fft_pow2(*p.sub, work.data());
    const double scale = 1.0 / static_cast<double>(padded);
    for (Index j = 0; j < n; ++j) a[j] = std::conj(work[j]) * scale * p.chirp[j];
}

} // namespace

void fft(std::span<cd> buf, bool inverse) {
    const Index n = static_cast<Index>(buf.size());
    if (n <= 1) return;
    auto plan = plan_for(n);
    if (!inverse) {
        fft_forward(*plan, buf.data());
        return;
    }
    for (auto& v : buf) v = std::conj(v);
    fft_forward(*plan, buf.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : buf) v = std::conj(v) * scale;
}

namespace {

ComplexGrid multi_transform(const ComplexGrid& g, bool inverse) {
    ComplexGrid out = g;
    const auto& dims = g.shape.dims();
    const int rank = g.shape.rank();
    const Index m = g.shape.fields();

    for (int axis = 0; axis < rank; ++axis) {
        const Index len = dims[axis];
        if (len == 1) continue;
        Index outer = 1, inner = m;
        for (int b = 0; b < axis; ++b) outer *= dims[b];
        for (int b = axis + 1; b < rank; ++b) inner *= dims[b];
        const Index lines = outer * inner;
        const Index axis_block = len * inner;

        parallel_for(lines, [&](Index begin, Index end) {
            std::vector<cd> line(len);
            for (Index L = begin; L < end; ++L) {
                const Index o = L / inner, r = L % inner;
                cd* base = out.data.data() + o * axis_block + r;
                for (Index k = 0; k < len; ++k) line[k] = base[k * inner];
                fft(line, inverse);
                for (Index k = 0; k < len; ++k) base[k * inner] = line[k];
            }
        });
    }
    return out;
}

} // namespace

ComplexGrid multi_fft(const ComplexGrid& g) { return multi_transform(g, false); }

ComplexGrid multi_ifft(const ComplexGrid& g) { return multi_transform(g, true); }

} // namespace fftstencil
