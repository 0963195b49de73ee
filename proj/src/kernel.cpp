#include "fftstencil/kernel.hpp"

#include <cmath>

namespace fftstencil {

void StencilKernel::add_tap(Offset off, const Eigen::MatrixXd& block) {
    if (static_cast<int>(off.size()) != rank_)
        throw SpecError("StencilKernel: offset rank mismatch");
    if (block.rows() != fields_ || block.cols() != fields_)
        throw SpecError("StencilKernel: block must be fields x fields");
    if (!block.allFinite())
        throw SpecError("StencilKernel: non-finite coefficient");
    auto [it, inserted] = taps_.try_emplace(std::move(off), block);
    if (!inserted) it->second += block;
}

void StencilKernel::add_tap(Offset off, double coeff) {
    if (fields_ != 1)
        throw SpecError("StencilKernel: scalar tap on a multi-field kernel");
    add_tap(std::move(off), Eigen::MatrixXd::Constant(1, 1, coeff));
}

Index StencilKernel::radius() const {
    Index r = 0;
    for (const auto& [off, block] : taps_)
        for (Index o : off) r = std::max(r, std::abs(o));
    return r;
}

std::vector<Index> StencilKernel::max_reach() const {
    std::vector<Index> reach(rank_, 0);
    for (const auto& [off, block] : taps_)
        for (int a = 0; a < rank_; ++a) reach[a] = std::max(reach[a], std::abs(off[a]));
    return reach;
}

void StencilKernel::require_fits(const GridShape& shape) const {
    require_nonempty();
    if (shape.rank() != rank_)
        throw SpecError("StencilKernel: grid rank mismatch");
    if (shape.fields() != fields_)
        throw SpecError("StencilKernel: grid field count mismatch");
    auto reach = max_reach();
    for (int a = 0; a < rank_; ++a)
        if (reach[a] >= shape.dim(a))
            throw SpecError("StencilKernel: tap offset exceeds dimension " +
                            std::to_string(a));
}

StencilKernel fold_kernels(const std::vector<std::vector<StencilKernel>>& kset) {
    const int m = static_cast<int>(kset.size());
    if (m < 1) throw SpecError("fold_kernels: empty kernel matrix");
    int rank = -1;
    for (const auto& row : kset) {
        if (static_cast<int>(row.size()) != m)
            throw SpecError("fold_kernels: kernel matrix must be square");
        for (const auto& k : row) {
            if (k.fields() != 1)
                throw SpecError("fold_kernels: entries must be scalar kernels");
            if (!k.empty()) {
                if (rank == -1) rank = k.rank();
                if (k.rank() != rank)
                    throw SpecError("fold_kernels: mixed kernel ranks");
            }
        }
    }
    if (rank == -1) throw SpecError("fold_kernels: all entries empty");

    StencilKernel folded(rank, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            for (const auto& [off, block] : kset[i][j].taps()) {
                Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
                b(i, j) = block(0, 0);
                folded.add_tap(off, b);
            }
        }
    }
    return folded;
}

} // namespace fftstencil
