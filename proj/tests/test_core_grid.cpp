#include <doctest.h>

#include "fftstencil/band.hpp"
#include "oracles.hpp"

using namespace fftstencil;

TEST_CASE("dist_to_boundary definition") {
    GridShape line({10});
    Index i0 = 0, i4 = 4;
    CHECK(dist_to_boundary(line, std::span<const Index>(&i0, 1)) == 1);
    CHECK(dist_to_boundary(line, std::span<const Index>(&i4, 1)) == 5);

    GridShape square({10, 10});
    std::vector<Index> idx{3, 3};
    CHECK(dist_to_boundary(square, idx) == 4); // min(4, 7, 4, 7)

    std::vector<Index> bad{10, 3};
    CHECK_THROWS_AS(dist_to_boundary(square, bad), SpecError);
}

TEST_CASE("dist_to_boundary partitions the grid") {
    for (GridShape shape : {GridShape({9}), GridShape({8, 5}), GridShape({4, 6, 5})}) {
        std::map<Index, Index> shell_sizes;
        std::vector<Index> idx(shape.rank(), 0);
        do {
            ++shell_sizes[dist_to_boundary(shape, idx)];
        } while (next_index(idx, shape.dims()));
        Index total = 0;
        for (const auto& [d, n] : shell_sizes) total += n;
        CHECK(total == shape.cells());
    }
}

TEST_CASE("slice_band slabs and corner ownership") {
    GridShape line({10});
    FieldGrid g(line);
    for (Index i = 0; i < 10; ++i) g.data[i] = static_cast<double>(i);

    BandGrid band = slice_band(g, 0, 2);
    CHECK(band.slab(Face{0, 0}).data[0] == 0.0);
    CHECK(band.slab(Face{0, 0}).data[1] == 1.0);
    CHECK(band.slab(Face{0, 1}).data[0] == 8.0);
    CHECK(band.slab(Face{0, 1}).data[1] == 9.0);

    CHECK_THROWS_AS(slice_band(g, 0, 6), SpecError); // 6 > ceil(10/2)

    // 2-D 8x8, (0,1]: four 8-cell slabs; corners owned by the axis-0 face.
    GridShape square({8, 8});
    FieldGrid q(square);
    BandGrid b2 = slice_band(q, 0, 1);
    for (int f = 0; f < 4; ++f)
        CHECK(b2.slab(Face{f / 2, f % 2}).shape.cells() == 8);
    std::vector<Index> corner{0, 0};
    CHECK(owner_face(square, corner) == Face{0, 0});
    std::vector<Index> corner2{7, 0};
    CHECK(owner_face(square, corner2) == Face{0, 1});
    std::vector<Index> edge{3, 0};
    CHECK(owner_face(square, edge) == Face{1, 0});
}

TEST_CASE("every banded cell has exactly one owner slab") {
    GridShape shape({8, 7});
    const Index lo = 0, hi = 3;
    std::vector<Index> idx(2, 0);
    do {
        const Index d = dist_to_boundary(shape, idx);
        if (d <= lo || d > hi) continue;
        int claims = 0;
        for (int a = 0; a < 2; ++a)
            for (int s = 0; s < 2; ++s)
                if (owner_face(shape, idx) == Face{a, s}) ++claims;
        CHECK(claims == 1);
        // The owner's slab really contains the cell.
        const Face f = owner_face(shape, idx);
        CHECK(face_distance(shape, idx, f) == d);
        CHECK(d <= hi);
    } while (next_index(idx, shape.dims()));
}

TEST_CASE("slice then scatter round-trips exactly") {
    testutil::Rng rng(42);
    for (GridShape shape : {GridShape({11}), GridShape({8, 9}, 2), GridShape({6, 7, 8})}) {
        FieldGrid g = testutil::random_grid(rng, shape);
        const Index hi = (shape.min_dim() + 1) / 2;
        BandGrid band = slice_band(g, 0, hi);
        FieldGrid back = scatter_band(g, band, 0, hi);
        CHECK((back.data == g.data).all());

        // Scatter over a different base: banded cells come from the band,
        // the complement is untouched (exact equality).
        FieldGrid zeros(shape);
        FieldGrid mixed = scatter_band(zeros, band);
        std::vector<Index> idx(shape.rank(), 0);
        Index cell = 0;
        do {
            const Index d = dist_to_boundary(shape, idx);
            for (int f = 0; f < shape.fields(); ++f) {
                const double want =
                    d <= hi ? g.data[cell * shape.fields() + f] : 0.0;
                CHECK(mixed.data[cell * shape.fields() + f] == want);
            }
            ++cell;
        } while (next_index(idx, shape.dims()));
    }
}

TEST_CASE("scatter_band zeroed band zeroes exactly the banded cells") {
    GridShape line({10});
    FieldGrid g(line);
    g.data.setConstant(3.0);
    BandGrid band(line, 0, 2); // all-zero slabs
    FieldGrid out = scatter_band(g, band, 0, 2);
    for (Index i = 0; i < 10; ++i) {
        const bool banded = i <= 1 || i >= 8;
        CHECK(out.data[i] == (banded ? 0.0 : 3.0));
    }
}

TEST_CASE("scatter_band provenance and shape checks") {
    GridShape line({10});
    FieldGrid g(line);
    BandGrid band = slice_band(g, 0, 2);
    CHECK_THROWS_AS(scatter_band(g, band, 0, 3), SpecError);
    FieldGrid other(GridShape({12}));
    CHECK_THROWS_AS(scatter_band(other, band), SpecError);
    CHECK_THROWS_AS(slice_band(g, 2, 2), SpecError); // empty band rejected
}

TEST_CASE("shrink_band keeps the rows nearest each face") {
    GridShape line({12});
    FieldGrid g(line);
    for (Index i = 0; i < 12; ++i) g.data[i] = static_cast<double>(i);
    BandGrid band = slice_band(g, 0, 5);
    BandGrid narrow = shrink_band(band, 2);
    CHECK(narrow.slab(Face{0, 0}).data[0] == 0.0);
    CHECK(narrow.slab(Face{0, 0}).data[1] == 1.0);
    CHECK(narrow.slab(Face{0, 1}).data[0] == 10.0);
    CHECK(narrow.slab(Face{0, 1}).data[1] == 11.0);
}

TEST_CASE("band value lookup reads through the owner") {
    GridShape square({8, 8});
    testutil::Rng rng(7);
    FieldGrid g = testutil::random_grid(rng, square);
    BandGrid band = slice_band(g, 0, 3);
    std::vector<Index> idx(2, 0);
    Index cell = 0;
    do {
        const Index d = dist_to_boundary(square, idx);
        if (d <= 3) CHECK(band.value(idx, 0) == g.data[cell]);
        ++cell;
    } while (next_index(idx, square.dims()));
}
