#include "fftstencil/stencils.hpp"

#include <sstream>

namespace fftstencil {

namespace {

constexpr double kHeatAlpha = 0.125;

StencilKernel heat_kernel(int rank) {
    // u + alpha * (discrete Laplacian): center 1 - 2 d alpha, axial taps alpha.
    StencilKernel k(rank, 1);
    std::vector<Index> off(rank, 0);
    k.add_tap(off, 1.0 - 2.0 * rank * kHeatAlpha);
    for (int a = 0; a < rank; ++a) {
        for (int s : {-1, 1}) {
            std::vector<Index> o(rank, 0);
            o[a] = s;
            k.add_tap(o, kHeatAlpha);
        }
    }
    return k;
}

StencilKernel uniform_box(int rank, Index radius) {
    // Full Chebyshev box with uniform weights summing to 1.
    Index count = 1;
    for (int a = 0; a < rank; ++a) count *= 2 * radius + 1;
    const double w = 1.0 / static_cast<double>(count);
    StencilKernel k(rank, 1);
    std::vector<Index> off(rank, -radius);
    while (true) {
        k.add_tap(off, w);
        int a = rank - 1;
        while (a >= 0 && off[a] == radius) off[a--] = -radius;
        if (a < 0) break;
        ++off[a];
    }
    return k;
}

StencilKernel nineteen_point_3d() {
    // Center, the six axial offsets at distance 2, and the twelve in-plane
    // diagonals: 19 taps, Chebyshev radius 2, uniform weights.
    const double w = 1.0 / 19.0;
    StencilKernel k(3, 1);
    k.add_tap({0, 0, 0}, w);
    for (int a = 0; a < 3; ++a) {
        for (int s : {-2, 2}) {
            std::vector<Index> o(3, 0);
            o[a] = s;
            k.add_tap(o, w);
        }
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            for (int sa : {-1, 1}) {
                for (int sb : {-1, 1}) {
                    std::vector<Index> o(3, 0);
                    o[a] = sa;
                    o[b] = sb;
                    k.add_tap(o, w);
                }
            }
        }
    }
    return k;
}

} // namespace

StencilKernel builtin_stencil(const std::string& name) {
    if (name == "heat1d") return heat_kernel(1);
    if (name == "heat2d") return heat_kernel(2);
    if (name == "heat3d") return heat_kernel(3);
    if (name == "seidel2d") return uniform_box(2, 1);
    if (name == "jacobi2d") return uniform_box(2, 2);
    if (name == "19pt3d") return nineteen_point_3d();

    std::ostringstream msg;
    msg << "unknown stencil '" << name << "'; available:";
    for (const auto& n : builtin_stencil_names()) msg << " " << n;
    throw SpecError(msg.str());
}

std::vector<std::string> builtin_stencil_names() {
    return {"heat1d", "heat2d", "seidel2d", "jacobi2d", "heat3d", "19pt3d"};
}

int builtin_stencil_rank(const std::string& name) {
    return builtin_stencil(name).rank();
}

} // namespace fftstencil
