#include "fftstencil/band.hpp"

#include <algorithm>

namespace fftstencil {

Index dist_to_boundary(const GridShape& shape, std::span<const Index> idx) {
    if (static_cast<int>(idx.size()) != shape.rank())
        throw SpecError("dist_to_boundary: index rank mismatch");
    Index d = INT64_MAX;
    for (int a = 0; a < shape.rank(); ++a) {
        if (idx[a] < 0 || idx[a] >= shape.dim(a))
            throw SpecError("dist_to_boundary: index out of range");
        d = std::min({d, idx[a] + 1, shape.dim(a) - idx[a]});
    }
    return d;
}

Face owner_face(const GridShape& shape, std::span<const Index> idx) {
    const Index d = dist_to_boundary(shape, idx);
    for (int a = 0; a < shape.rank(); ++a) {
        if (idx[a] + 1 == d) return Face{a, 0};
        if (shape.dim(a) - idx[a] == d) return Face{a, 1};
    }
    throw SpecError("owner_face: unreachable"); // dist always attained
}

namespace {

GridShape slab_shape(const GridShape& shape, int axis, Index width) {
    std::vector<Index> dims = shape.dims();
    dims[axis] = width;
    return GridShape(std::move(dims), shape.fields());
}

void check_band_range(const GridShape& shape, Index lo, Index hi) {
    if (lo < 0 || lo >= hi) throw SpecError("band range: need 0 <= lo < hi");
    const Index half = (shape.min_dim() + 1) / 2;
    if (hi > half)
        throw SpecError("band range: hi = " + std::to_string(hi) +
                        " overlaps itself (limit " + std::to_string(half) + ")");
}

} // namespace

BandGrid::BandGrid(GridShape shape, Index lo, Index hi)
    : shape_(std::move(shape)), lo_(lo), hi_(hi) {
    check_band_range(shape_, lo_, hi_);
    slabs_.reserve(face_count());
    for (int a = 0; a < shape_.rank(); ++a) {
        slabs_.push_back(FieldGrid(slab_shape(shape_, a, width())));
        slabs_.push_back(FieldGrid(slab_shape(shape_, a, width())));
    }
}

double BandGrid::value(std::span<const Index> idx, int field) const {
    return const_cast<BandGrid*>(this)->value(idx, field);
}

double& BandGrid::value(std::span<const Index> idx, int field) {
    const Face f = owner_face(shape_, idx);
    std::vector<Index> local(idx.begin(), idx.end());
    local[f.axis] = local_axis_index(f, idx[f.axis]);
    FieldGrid& s = slab(f);
    return s.data[s.shape.flatten(local) * s.shape.fields() + field];
}

BandGrid slice_band(const FieldGrid& grid, Index lo, Index hi) {
    BandGrid band(grid.shape, lo, hi);
    const int m = grid.shape.fields();
    for (int a = 0; a < grid.shape.rank(); ++a) {
        for (int side = 0; side < 2; ++side) {
            const Face f{a, side};
            FieldGrid& s = band.slab(f);
            const auto& sdims = s.shape.dims();
            std::vector<Index> idx(sdims.size(), 0), gidx(sdims.size());
            Index cell = 0;
            do {
                gidx = idx;
                gidx[a] = band.global_axis_index(f, idx[a]);
                const Index gc = grid.shape.flatten(gidx);
                for (int fd = 0; fd < m; ++fd)
                    s.data[cell * m + fd] = grid.data[gc * m + fd];
                ++cell;
            } while (next_index(idx, sdims));
        }
    }
    return band;
}

FieldGrid scatter_band(const FieldGrid& grid, const BandGrid& band, Index lo, Index hi) {
    if (band.lo() != lo || band.hi() != hi)
        throw SpecError("scatter_band: band provenance does not match (lo, hi]");
    return scatter_band(grid, band);
}

FieldGrid scatter_band(const FieldGrid& grid, const BandGrid& band) {
    if (grid.shape != band.shape())
        throw SpecError("scatter_band: grid shape does not match band provenance");
    FieldGrid out = grid;
    const int m = grid.shape.fields();
    // Walk each slab but let only the owner write, so every banded cell is
    // written exactly once.
    for (int a = 0; a < grid.shape.rank(); ++a) {
        for (int side = 0; side < 2; ++side) {
            const Face f{a, side};
            const FieldGrid& s = band.slab(f);
            const auto& sdims = s.shape.dims();
            std::vector<Index> idx(sdims.size(), 0), gidx(sdims.size());
            Index cell = 0;
            do {
                gidx = idx;
                gidx[a] = band.global_axis_index(f, idx[a]);
                const Index d = dist_to_boundary(grid.shape, gidx);
                if (d > band.lo() && d <= band.hi() &&
                    owner_face(grid.shape, gidx) == f) {
                    const Index gc = grid.shape.flatten(gidx);
                    for (int fd = 0; fd < m; ++fd)
                        out.data[gc * m + fd] = s.data[cell * m + fd];
                }
                ++cell;
            } while (next_index(idx, sdims));
        }
    }
    return out;
}

BandGrid shrink_band(const BandGrid& band, Index new_hi) {
    if (band.lo() != 0) throw SpecError("shrink_band: band must start at the boundary");
    if (new_hi > band.hi()) throw SpecError("shrink_band: cannot widen a band");
    BandGrid out(band.shape(), 0, new_hi);
    const int m = band.shape().fields();
    for (int a = 0; a < band.shape().rank(); ++a) {
        for (int side = 0; side < 2; ++side) {
            const Face f{a, side};
            const FieldGrid& src = band.slab(f);
            FieldGrid& dst = out.slab(f);
            const auto& ddims = dst.shape.dims();
            std::vector<Index> idx(ddims.size(), 0), sidx(ddims.size());
            Index cell = 0;
            do {
                sidx = idx;
                // Rows keep their face distance: low side shares row 0, high
                // side shares the deepest row.
                sidx[a] = side == 0 ? idx[a] : idx[a] + band.width() - out.width();
                const Index sc = src.shape.flatten(sidx);
                for (int fd = 0; fd < m; ++fd)
                    dst.data[cell * m + fd] = src.data[sc * m + fd];
                ++cell;
            } while (next_index(idx, ddims));
        }
    }
    return out;
}

} // namespace fftstencil
