#include "fftstencil/spectrum.hpp"

#include "fftstencil/parallel.hpp"

namespace fftstencil {

Eigen::MatrixXcd DiagonalSpectrum::block(Index freq) const {
    const int m = block_dim();
    Eigen::MatrixXcd b(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) b(r, c) = entry(freq, r, c);
    return b;
}

void DiagonalSpectrum::set_block(Index freq, const Eigen::MatrixXcd& b) {
    const int m = block_dim();
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) entry(freq, r, c) = b(r, c);
}

DiagonalSpectrum spectrum_from_kernel(const StencilKernel& k, const GridShape& shape) {
    k.require_fits(shape);
    const auto& dims = shape.dims();
    const int rank = shape.rank();
    const int m = shape.fields();

    // Generator grid: s[(-offset) mod dims] += block, one component per block
    // entry, so one multi-FFT of an m^2-field grid diagonalizes everything.
    ComplexGrid gen(GridShape(dims, m * m));
    std::vector<Index> pos(rank);
    for (const auto& [off, block] : k.taps()) {
        for (int axis = 0; axis < rank; ++axis) {
            Index j = (-off[axis]) % dims[axis];
            pos[axis] = j < 0 ? j + dims[axis] : j;
        }
        const Index cell = gen.shape.flatten(pos);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                gen.data[cell * m * m + r * m + c] += block(r, c);
    }

    DiagonalSpectrum lam(shape);
    lam.blocks = multi_fft(gen).data;
    return lam;
}

DiagonalSpectrum pow_spectrum(const DiagonalSpectrum& lam, std::uint64_t T) {
    const int m = lam.block_dim();
    DiagonalSpectrum out(lam.shape);
    const Index n = lam.shape.cells();

    if (m == 1) {
        parallel_for(n, [&](Index begin, Index end) {
            for (Index j = begin; j < end; ++j) {
                std::complex<double> acc(1, 0), sq = lam.blocks[j];
                std::uint64_t t = T;
                while (t) {
                    if (t & 1) acc *= sq;
                    t >>= 1;
                    if (t) sq *= sq;
                }
                out.blocks[j] = acc;
            }
        });
        return out;
    }

    parallel_for(n, [&](Index begin, Index end) {
        Eigen::MatrixXcd acc(m, m), sq(m, m);
        for (Index j = begin; j < end; ++j) {
            acc = Eigen::MatrixXcd::Identity(m, m);
            sq = lam.block(j);
            std::uint64_t t = T;
            while (t) {
                if (t & 1) acc = (acc * sq).eval();
                t >>= 1;
                if (t) sq = (sq * sq).eval();
            }
            out.set_block(j, acc);
        }
    });
    return out;
}

DiagonalSpectrum pseudo_inverse_spectrum(const DiagonalSpectrum& lam) {
    if (lam.block_dim() != 1)
        throw SpecError("pseudo_inverse_spectrum: scalar spectra only");
    const double maxmag = lam.blocks.abs().maxCoeff();
    const double eps = 1e-12 * maxmag;
    DiagonalSpectrum out(lam.shape);
    for (Index j = 0; j < lam.shape.cells(); ++j) {
        const std::complex<double> v = lam.blocks[j];
        out.blocks[j] = std::abs(v) <= eps ? std::complex<double>(0, 0) : 1.0 / v;
    }
    return out;
}

DiagonalSpectrum multiply_spectra(const DiagonalSpectrum& a, const DiagonalSpectrum& b) {
    if (a.shape != b.shape) throw SpecError("multiply_spectra: shape mismatch");
    const int m = a.block_dim();
    DiagonalSpectrum out(a.shape);
    if (m == 1) {
        out.blocks = a.blocks * b.blocks;
        return out;
    }
    for (Index j = 0; j < a.shape.cells(); ++j)
        out.set_block(j, a.block(j) * b.block(j));
    return out;
}

ComplexGrid hadamard(const DiagonalSpectrum& lam, const ComplexGrid& x) {
    if (lam.shape != x.shape) throw SpecError("hadamard: shape mismatch");
    const int m = lam.block_dim();
    ComplexGrid y(x.shape);
    const Index n = x.shape.cells();

    if (m == 1) {
        parallel_for(n, [&](Index begin, Index end) {
            for (Index j = begin; j < end; ++j) y.data[j] = lam.blocks[j] * x.data[j];
        });
        return y;
    }

    parallel_for(n, [&](Index begin, Index end) {
        for (Index j = begin; j < end; ++j) {
            for (int r = 0; r < m; ++r) {
                std::complex<double> acc(0, 0);
                for (int c = 0; c < m; ++c) acc += lam.entry(j, r, c) * x.data[j * m + c];
                y.data[j * m + r] = acc;
            }
        }
    });
    return y;
}

} // namespace fftstencil
