#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fftstencil/errors.hpp"

namespace fftstencil {

using Index = std::int64_t;

/// Shape of a d-dimensional grid of m-component cells.
///
/// Cell values are laid out row-major over the spatial dims with the field
/// index innermost, i.e. flat position = cell_index * fields + field.
class GridShape {
public:
    GridShape() = default;

    GridShape(std::vector<Index> dims, int fields = 1)
        : dims_(std::move(dims)), fields_(fields) {
        if (dims_.empty()) throw SpecError("GridShape: need at least one dimension");
        if (fields_ < 1) throw SpecError("GridShape: fields must be >= 1");
        __int128 n = 1;
        for (Index d : dims_) {
            if (d < 1) throw SpecError("GridShape: every dimension must be >= 1");
            n *= d;
            if (n * fields_ > (__int128)INT64_MAX)
                throw SpecError("GridShape: total value count overflows");
        }
        cells_ = static_cast<Index>(n);
    }

    GridShape(std::initializer_list<Index> dims, int fields = 1)
        : GridShape(std::vector<Index>(dims), fields) {}

    int rank() const { return static_cast<int>(dims_.size()); }
    const std::vector<Index>& dims() const { return dims_; }
    Index dim(int axis) const { return dims_[axis]; }
    int fields() const { return fields_; }
    Index cells() const { return cells_; }
    Index values() const { return cells_ * fields_; }
    Index min_dim() const {
        Index m = dims_[0];
        for (Index d : dims_) m = std::min(m, d);
        return m;
    }

    /// Row-major flattening of a full multi-index to a cell number.
    Index flatten(std::span<const Index> idx) const {
        Index f = 0;
        for (int a = 0; a < rank(); ++a) {
            if (idx[a] < 0 || idx[a] >= dims_[a])
                throw SpecError("GridShape: index out of range");
            f = f * dims_[a] + idx[a];
        }
        return f;
    }

    std::vector<Index> unflatten(Index cell) const {
        std::vector<Index> idx(rank());
        for (int a = rank() - 1; a >= 0; --a) {
            idx[a] = cell % dims_[a];
            cell /= dims_[a];
        }
        return idx;
    }

    bool operator==(const GridShape& o) const {
        return dims_ == o.dims_ && fields_ == o.fields_;
    }
    bool operator!=(const GridShape& o) const { return !(*this == o); }

private:
    std::vector<Index> dims_;
    int fields_ = 1;
    Index cells_ = 0;
};

/// Dense grid of per-(cell, field) values.
template <typename Scalar>
struct Grid {
    GridShape shape;
    Eigen::Array<Scalar, Eigen::Dynamic, 1> data;

    Grid() = default;
    explicit Grid(GridShape s)
        : shape(std::move(s)),
          data(Eigen::Array<Scalar, Eigen::Dynamic, 1>::Zero(shape.values())) {}

    Scalar& at(Index cell, int field = 0) { return data[cell * shape.fields() + field]; }
    const Scalar& at(Index cell, int field = 0) const {
        return data[cell * shape.fields() + field];
    }
};

using FieldGrid = Grid<double>;
using ComplexGrid = Grid<std::complex<double>>;

/// Odometer-style multi-index increment; returns false after the last index.
inline bool next_index(std::vector<Index>& idx, const std::vector<Index>& dims) {
    for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
        if (++idx[a] < dims[a]) return true;
        idx[a] = 0;
    }
    return false;
}

ComplexGrid to_complex(const FieldGrid& g);

/// Drops imaginary parts without any residue checking (see periodic.hpp for
/// the checked variant used by the solvers).
FieldGrid real_part(const ComplexGrid& g);

/// Cyclic rotation: out[i] = in[i - shift] per axis, indices modular.
FieldGrid rotate_grid(const FieldGrid& g, std::span<const Index> shift);

} // namespace fftstencil
