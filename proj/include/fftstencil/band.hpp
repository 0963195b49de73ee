#pragma once

#include <span>
#include <vector>

#include "fftstencil/grid.hpp"

namespace fftstencil {

/// One of the 2d grid faces. side 0 = low end of the axis, side 1 = high end.
struct Face {
    int axis = 0;
    int side = 0;
    int id() const { return 2 * axis + side; }
    bool operator==(const Face& o) const { return axis == o.axis && side == o.side; }
};

/// Shell number of a cell: min over axes of min(index + 1, dim - index).
/// The outermost shell has distance 1.
Index dist_to_boundary(const GridShape& shape, std::span<const Index> idx);

/// Distance from a cell to one specific face (>= 1 inside the grid).
inline Index face_distance(const GridShape& shape, std::span<const Index> idx, Face f) {
    return f.side == 0 ? idx[f.axis] + 1 : shape.dim(f.axis) - idx[f.axis];
}

/// Nearest face, ties broken by lowest axis then low side. This is the face
/// whose slab owns the cell in a BandGrid.
Face owner_face(const GridShape& shape, std::span<const Index> idx);

/// Per-face slabs covering the cells with face-distance in (lo, hi], each
/// spanning the full extent of all other axes. Cells near corners appear in
/// several slabs; the deterministic owner assignment (owner_face) decides
/// which copy is authoritative when scattering back.
class BandGrid {
public:
    BandGrid(GridShape shape, Index lo, Index hi);

    const GridShape& shape() const { return shape_; }
    Index lo() const { return lo_; }
    Index hi() const { return hi_; }
    Index width() const { return hi_ - lo_; }
    int face_count() const { return 2 * shape_.rank(); }

    FieldGrid& slab(Face f) { return slabs_[f.id()]; }
    const FieldGrid& slab(Face f) const { return slabs_[f.id()]; }

    /// Maps a slab-local multi-index to the global one. Along f.axis the slab
    /// rows r in [0, width) sit at global lo + r (low side) or
    /// dim - hi + r (high side); other axes are untouched.
    Index global_axis_index(Face f, Index local_row) const {
        return f.side == 0 ? lo_ + local_row : shape_.dim(f.axis) - hi_ + local_row;
    }
    Index local_axis_index(Face f, Index global_row) const {
        return f.side == 0 ? global_row - lo_ : global_row - (shape_.dim(f.axis) - hi_);
    }

    /// Reads a value through the owner slab of the cell. The cell must have
    /// boundary distance in (lo, hi].
    double value(std::span<const Index> idx, int field) const;
    double& value(std::span<const Index> idx, int field);

private:
    GridShape shape_;
    Index lo_, hi_;
    std::vector<FieldGrid> slabs_;
};

/// Extracts the band (lo, hi] from a full grid. hi must not exceed
/// ceil(min dim / 2), otherwise the band would overlap itself.
BandGrid slice_band(const FieldGrid& grid, Index lo, Index hi);

/// Writes every cell with dist in (lo, hi] back from its owning slab; all
/// other cells are left unchanged. lo/hi must match the band's provenance.
FieldGrid scatter_band(const FieldGrid& grid, const BandGrid& band, Index lo, Index hi);
FieldGrid scatter_band(const FieldGrid& grid, const BandGrid& band);

/// Narrows a (0, hi] band to (0, new_hi], keeping the rows nearest each face.
BandGrid shrink_band(const BandGrid& band, Index new_hi);

} // namespace fftstencil
