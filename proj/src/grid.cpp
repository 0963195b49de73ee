#include "fftstencil/grid.hpp"

namespace fftstencil {

ComplexGrid to_complex(const FieldGrid& g) {
    ComplexGrid out(g.shape);
    out.data = g.data.cast<std::complex<double>>();
    return out;
}

FieldGrid real_part(const ComplexGrid& g) {
    FieldGrid out(g.shape);
    out.data = g.data.real();
    return out;
}

FieldGrid rotate_grid(const FieldGrid& g, std::span<const Index> shift) {
    const auto& dims = g.shape.dims();
    if (shift.size() != dims.size())
        throw SpecError("rotate_grid: shift rank mismatch");
    const int m = g.shape.fields();
    FieldGrid out(g.shape);
    std::vector<Index> idx(dims.size(), 0), src(dims.size());
    Index cell = 0;
    do {
        for (size_t a = 0; a < dims.size(); ++a) {
            Index s = (idx[a] - shift[a]) % dims[a];
            src[a] = s < 0 ? s + dims[a] : s;
        }
        const Index sc = g.shape.flatten(src);
        for (int f = 0; f < m; ++f) out.data[cell * m + f] = g.data[sc * m + f];
        ++cell;
    } while (next_index(idx, dims));
    return out;
}

} // namespace fftstencil
