#pragma once

#include <map>
#include <vector>

#include <Eigen/Core>

#include "fftstencil/grid.hpp"

namespace fftstencil {

/// A linear stencil: a sparse map from integer offset vectors to m x m real
/// coefficient blocks. The update rule it encodes is
///
///     out[i, f] = sum_taps sum_g block(f, g) * in[i + offset, g]
///
/// with index arithmetic modular (periodic) or guarded by a boundary rule
/// (aperiodic). Scalar stencils are the m = 1 case with 1 x 1 blocks.
class StencilKernel {
public:
    using Offset = std::vector<Index>;

    StencilKernel(int rank, int fields = 1) : rank_(rank), fields_(fields) {
        if (rank_ < 1) throw SpecError("StencilKernel: rank must be >= 1");
        if (fields_ < 1) throw SpecError("StencilKernel: fields must be >= 1");
    }

    /// Accumulates a coefficient block at an offset (+= if already present).
    void add_tap(Offset off, const Eigen::MatrixXd& block);

    /// Scalar convenience for m = 1 kernels.
    void add_tap(Offset off, double coeff);

    const std::map<Offset, Eigen::MatrixXd>& taps() const { return taps_; }
    int rank() const { return rank_; }
    int fields() const { return fields_; }
    bool empty() const { return taps_.empty(); }

    /// Stencil radius: max Chebyshev norm over tap offsets.
    Index radius() const;

    /// Largest |offset| along each axis; used for shape preconditions.
    std::vector<Index> max_reach() const;

    void require_nonempty() const {
        if (taps_.empty()) throw SpecError("StencilKernel: at least one tap required");
    }

    /// Throws unless every |offset_a| < dims[a].
    void require_fits(const GridShape& shape) const;

private:
    int rank_;
    int fields_;
    std::map<Offset, Eigen::MatrixXd> taps_; // sorted: deterministic tap order
};

/// Folds an m x m matrix of scalar kernels into one kernel with m x m blocks:
/// entry (i, j) describes how output field i depends on input field j.
/// Missing entries (empty kernels) are zero blocks.
StencilKernel fold_kernels(const std::vector<std::vector<StencilKernel>>& kset);

} // namespace fftstencil
