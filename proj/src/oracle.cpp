#include "fftstencil/oracle.hpp"

#include <algorithm>

#include "fftstencil/band.hpp"
#include "fftstencil/parallel.hpp"

namespace fftstencil {

namespace {

// Cell strides (in cells, not values) for row-major dims.
std::vector<Index> cell_strides(const GridShape& shape) {
    std::vector<Index> s(shape.rank());
    Index acc = 1;
    for (int a = shape.rank() - 1; a >= 0; --a) {
        s[a] = acc;
        acc *= shape.dim(a);
    }
    return s;
}

// Scalar periodic step: per tap, accumulate a cyclically shifted copy.
// The innermost axis is split into two contiguous runs so the hot loop is a
// single fused multiply-add per cell.
void step_periodic_scalar(const FieldGrid& a, const StencilKernel& k, FieldGrid& out) {
    const auto& dims = a.shape.dims();
    const int rank = a.shape.rank();
    const Index inner = dims[rank - 1];
    const Index outer_count = a.shape.cells() / inner;

    out.data.setZero();
    std::vector<Index> odims(dims.begin(), dims.end() - 1);

    for (const auto& [off, block] : k.taps()) {
        const double c = block(0, 0);
        Index s_in = ((off[rank - 1] % inner) + inner) % inner;

        std::vector<Index> oidx(std::max(rank - 1, 0), 0);
        for (Index o = 0; o < outer_count; ++o) {
            // Wrapped source base over the outer axes.
            Index src_base = 0;
            for (int axis = 0; axis + 1 < rank; ++axis) {
                Index j = (oidx[axis] + off[axis]) % dims[axis];
                if (j < 0) j += dims[axis];
                src_base = src_base * dims[axis] + j;
            }
            src_base *= inner;
            const Index dst_base = o * inner;

            const double* in = a.data.data() + src_base;
            double* dst = out.data.data() + dst_base;
            const Index run1 = inner - s_in;
            for (Index i = 0; i < run1; ++i) dst[i] += c * in[i + s_in];
            for (Index i = run1; i < inner; ++i) dst[i] += c * in[i + s_in - inner];

            if (!odims.empty()) next_index(oidx, odims);
        }
    }
}

// General vector-field periodic step (small grids; used when fields > 1).
void step_periodic_blocks(const FieldGrid& a, const StencilKernel& k, FieldGrid& out) {
    const auto& dims = a.shape.dims();
    const int rank = a.shape.rank();
    const int m = a.shape.fields();

    out.data.setZero();
    std::vector<Index> idx(rank, 0), src(rank);
    Index cell = 0;
    do {
        for (const auto& [off, block] : k.taps()) {
            for (int axis = 0; axis < rank; ++axis) {
                Index j = (idx[axis] + off[axis]) % dims[axis];
                src[axis] = j < 0 ? j + dims[axis] : j;
            }
            const Index sc = a.shape.flatten(src);
            for (int f = 0; f < m; ++f) {
                double acc = 0;
                for (int g = 0; g < m; ++g) acc += block(f, g) * a.data[sc * m + g];
                out.data[cell * m + f] += acc;
            }
        }
        ++cell;
    } while (next_index(idx, dims));
}

} // namespace

FieldGrid step_periodic(const FieldGrid& a, const StencilKernel& k) {
    k.require_fits(a.shape);
    FieldGrid out(a.shape);
    if (a.shape.fields() == 1)
        step_periodic_scalar(a, k, out);
    else
        step_periodic_blocks(a, k, out);
    return out;
}

FieldGrid evolve_periodic_naive(const FieldGrid& a0, const StencilKernel& k,
                                std::uint64_t T) {
    k.require_fits(a0.shape);
    if (T == 0) return a0;
    FieldGrid cur = a0, next(a0.shape);
    for (std::uint64_t t = 0; t < T; ++t) {
        if (a0.shape.fields() == 1)
            step_periodic_scalar(cur, k, next);
        else
            step_periodic_blocks(cur, k, next);
        std::swap(cur, next);
    }
    return cur;
}

namespace {

void check_aperiodic_pre(const GridShape& shape, const StencilKernel& k) {
    k.require_fits(shape);
    const Index sigma = k.radius();
    if (sigma < 1)
        throw SpecError("aperiodic step: stencil radius must be >= 1");
    if (2 * sigma >= shape.min_dim())
        throw SpecError("aperiodic step: grid too small for stencil radius " +
                        std::to_string(sigma));
}

void step_aperiodic_into(const FieldGrid& a, const StencilKernel& k,
                         const BoundaryRule& br, FieldGrid& out) {
    const auto& dims = a.shape.dims();
    const int rank = a.shape.rank();
    const int m = a.shape.fields();
    const Index sigma = k.radius();
    const auto strides = cell_strides(a.shape);

    // Flat cell deltas are exact for every cell with dist > sigma: the whole
    // neighborhood exists without wraparound.
    std::vector<std::pair<Index, const Eigen::MatrixXd*>> flat_taps;
    flat_taps.reserve(k.taps().size());
    for (const auto& [off, block] : k.taps()) {
        Index delta = 0;
        for (int axis = 0; axis < rank; ++axis) delta += off[axis] * strides[axis];
        flat_taps.emplace_back(delta, &block);
    }

    std::vector<Index> idx(rank, 0);
    Index cell = 0;
    do {
        Index dist = INT64_MAX;
        for (int axis = 0; axis < rank; ++axis)
            dist = std::min({dist, idx[axis] + 1, dims[axis] - idx[axis]});
        if (dist <= sigma) {
            for (int f = 0; f < m; ++f)
                out.data[cell * m + f] = br.value(a.shape, cell, f);
        } else if (m == 1) {
            double acc = 0;
            for (const auto& [delta, block] : flat_taps)
                acc += (*block)(0, 0) * a.data[cell + delta];
            out.data[cell] = acc;
        } else {
            for (int f = 0; f < m; ++f) {
                double acc = 0;
                for (const auto& [delta, block] : flat_taps)
                    for (int g = 0; g < m; ++g)
                        acc += (*block)(f, g) * a.data[(cell + delta) * m + g];
                out.data[cell * m + f] = acc;
            }
        }
        ++cell;
    } while (next_index(idx, dims));
}

} // namespace

FieldGrid step_aperiodic(const FieldGrid& a, const StencilKernel& k,
                         const BoundaryRule& br) {
    check_aperiodic_pre(a.shape, k);
    FieldGrid out(a.shape);
    step_aperiodic_into(a, k, br, out);
    return out;
}

FieldGrid evolve_aperiodic_naive(const FieldGrid& a0, const StencilKernel& k,
                                 const BoundaryRule& br, std::uint64_t T) {
    check_aperiodic_pre(a0.shape, k);
    if (T == 0) return a0;
    FieldGrid cur = a0, next(a0.shape);
    for (std::uint64_t t = 0; t < T; ++t) {
        step_aperiodic_into(cur, k, br, next);
        std::swap(cur, next);
    }
    return cur;
}

Eigen::MatrixXd dense_stencil_matrix(const StencilKernel& k, const GridShape& shape) {
    k.require_fits(shape);
    const Index n = shape.values();
    if (n > 2048)
        throw SpecError("dense_stencil_matrix: size " + std::to_string(n) +
                        " exceeds the dense-storage guard (2048)");
    const auto& dims = shape.dims();
    const int rank = shape.rank();
    const int m = shape.fields();

    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
    std::vector<Index> idx(rank, 0), src(rank);
    Index cell = 0;
    do {
        for (const auto& [off, block] : k.taps()) {
            for (int axis = 0; axis < rank; ++axis) {
                Index j = (idx[axis] + off[axis]) % dims[axis];
                src[axis] = j < 0 ? j + dims[axis] : j;
            }
            const Index sc = shape.flatten(src);
            for (int f = 0; f < m; ++f)
                for (int g = 0; g < m; ++g) mat(cell * m + f, sc * m + g) += block(f, g);
        }
        ++cell;
    } while (next_index(idx, dims));
    return mat;
}

} // namespace fftstencil
