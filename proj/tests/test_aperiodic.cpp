#include <doctest.h>

#include "fftstencil/aperiodic.hpp"
#include "oracles.hpp"

using namespace fftstencil;

namespace {

StencilKernel heat1d_kernel(double alpha = 0.125) {
    StencilKernel k(1, 1);
    k.add_tap({-1}, alpha);
    k.add_tap({0}, 1 - 2 * alpha);
    k.add_tap({1}, alpha);
    return k;
}

StencilKernel heat2d_kernel(double alpha = 0.125) {
    StencilKernel k(2, 1);
    k.add_tap({0, 0}, 1 - 4 * alpha);
    k.add_tap({-1, 0}, alpha);
    k.add_tap({1, 0}, alpha);
    k.add_tap({0, -1}, alpha);
    k.add_tap({0, 1}, alpha);
    return k;
}

// Compares a returned boundary band against the naive solution.
double band_vs_reference(const BandGrid& band, const FieldGrid& ref) {
    double err = 0;
    std::vector<Index> idx(ref.shape.rank(), 0);
    Index cell = 0;
    do {
        const Index d = dist_to_boundary(ref.shape, idx);
        if (d <= band.hi()) {
            for (int f = 0; f < ref.shape.fields(); ++f)
                err = std::max(err, std::abs(band.value(idx, f) -
                                             ref.data[cell * ref.shape.fields() + f]));
        }
        ++cell;
    } while (next_index(idx, ref.shape.dims()));
    return err;
}

} // namespace

TEST_CASE("roi_width") {
    CHECK(roi_width(1, 8) == 8);
    CHECK(roi_width(2, 0) == 0);
    CHECK(roi_width(3, 4) == 12);
}

TEST_CASE("recursive_boundary with T = 1 equals one naive step on the band") {
    testutil::Rng rng(103);
    FieldGrid a = testutil::random_grid(rng, GridShape({32}));
    const StencilKernel k = heat1d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.25);
    BandGrid band = recursive_boundary(a, k, br, 1, 4);
    CHECK(band.hi() == 1);
    FieldGrid ref = step_aperiodic(a, k, br);
    CHECK(band_vs_reference(band, ref) <= 1e-12);
}

TEST_CASE("identity-with-radius kernel: shell pinned, rest kept") {
    StencilKernel ident(1, 1);
    ident.add_tap({0}, 1.0);
    ident.add_tap({1}, 0.0);
    const BoundaryRule br = BoundaryRule::dirichlet(2.5);
    testutil::Rng rng(107);
    FieldGrid a = testutil::random_grid(rng, GridShape({64}));
    for (std::uint64_t T : {2, 5, 8}) {
        BandGrid band = recursive_boundary(a, ident, br, T, 2);
        std::vector<Index> idx(1, 0);
        do {
            const Index d = dist_to_boundary(a.shape, idx);
            if (d > band.hi()) continue;
            const double want = d <= 1 ? 2.5 : a.data[idx[0]];
            CHECK(band.value(idx, 0) == doctest::Approx(want).epsilon(1e-12));
        } while (next_index(idx, a.shape.dims()));
    }
}

TEST_CASE("recursive boundary matches the naive oracle through the recursion") {
    testutil::Rng rng(109);
    FieldGrid a = testutil::random_grid(rng, GridShape({64}));
    const StencilKernel k = heat1d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.0);
    RecursionStats stats;
    BandGrid band = recursive_boundary(a, k, br, 8, 2, &stats);
    CHECK(band.hi() == 8);
    CHECK(stats.max_depth >= 2); // actually recursed, not one big base case
    FieldGrid ref = evolve_aperiodic_naive(a, k, br, 8);
    CHECK(band_vs_reference(band, ref) <= 1e-9 * (1 + testutil::max_abs(ref)));
}

TEST_CASE("recursive_boundary precondition raises the fallback signal") {
    FieldGrid a(GridShape({16}));
    CHECK_THROWS_AS(
        recursive_boundary(a, heat1d_kernel(), BoundaryRule::dirichlet(0.0), 8, 2),
        FallbackRequired);
}

TEST_CASE("solve_aperiodic basics") {
    testutil::Rng rng(113);
    const StencilKernel k = heat1d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.0);

    FieldGrid a = testutil::random_grid(rng, GridShape({128}));
    CHECK((solve_aperiodic(a, k, br, 0).data == a.data).all());

    FieldGrid fast = solve_aperiodic(a, k, br, 16, 4);
    FieldGrid slow = evolve_aperiodic_naive(a, k, br, 16);
    CHECK(testutil::max_abs_diff(fast, slow) <= 1e-9 * (1 + testutil::max_abs(slow)));
}

TEST_CASE("solve_aperiodic 2-D including corners") {
    testutil::Rng rng(127);
    FieldGrid a = testutil::random_grid(rng, GridShape({24, 24}));
    const StencilKernel k = heat2d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.0);
    FieldGrid fast = solve_aperiodic(a, k, br, 4, 2);
    FieldGrid slow = evolve_aperiodic_naive(a, k, br, 4);
    CHECK(testutil::max_abs_diff(fast, slow) <= 1e-9 * (1 + testutil::max_abs(slow)));
}

TEST_CASE("interior purity: cells beyond the ROI match the periodic solver") {
    testutil::Rng rng(131);
    GridShape shape({40, 36});
    FieldGrid a = testutil::random_grid(rng, shape);
    const StencilKernel k = heat2d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.4);
    const std::uint64_t T = 4;
    const Index roi = roi_width(k.radius(), T);

    FieldGrid periodic = solve_periodic(a, k, T);
    FieldGrid naive = evolve_aperiodic_naive(a, k, br, T);
    FieldGrid fft = solve_aperiodic(a, k, br, T, 2);

    std::vector<Index> idx(2, 0);
    Index cell = 0;
    do {
        const Index d = dist_to_boundary(shape, idx);
        if (d > roi) {
            CHECK(std::abs(periodic.data[cell] - naive.data[cell]) <=
                  1e-9 * (1 + std::abs(naive.data[cell])));
            // solve_aperiodic keeps the periodic interior bit-for-bit.
            CHECK(fft.data[cell] == periodic.data[cell]);
        }
        ++cell;
    } while (next_index(idx, shape.dims()));
}

TEST_CASE("fallback path: band too wide for the grid") {
    testutil::Rng rng(137);
    FieldGrid a = testutil::random_grid(rng, GridShape({20}));
    const StencilKernel k = heat1d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.0);
    // 4 * 1 * ceil(12/2) = 24 > ceil(20/2): falls back to the naive loop.
    FieldGrid fast = solve_aperiodic(a, k, br, 12, 2);
    FieldGrid slow = evolve_aperiodic_naive(a, k, br, 12);
    CHECK((fast.data == slow.data).all());
}

TEST_CASE("randomized geometry sweep, both paths, with profiles and fields") {
    testutil::Rng rng(139);
    int recursive_cases = 0, fallback_cases = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int rank = 1 + static_cast<int>(rng.next() % 2);
        const Index sigma = rng.range(1, 2);
        const std::uint64_t T = static_cast<std::uint64_t>(rng.range(2, 8));
        std::vector<Index> dims(rank);
        for (int a = 0; a < rank; ++a) dims[a] = rng.range(16, 40);
        GridShape shape(dims);

        StencilKernel k = testutil::random_kernel(rng, rank, sigma);
        FieldGrid a0 = testutil::random_grid(rng, shape);
        const BoundaryRule br = BoundaryRule::dirichlet(rng.symmetric());

        const bool recursive =
            4 * sigma * static_cast<Index>((T + 1) / 2) <= (shape.min_dim() + 1) / 2;
        (recursive ? recursive_cases : fallback_cases) += 1;

        FieldGrid fast = solve_aperiodic(a0, k, br, T, 2);
        FieldGrid slow = evolve_aperiodic_naive(a0, k, br, T);
        CHECK(testutil::max_abs_diff(fast, slow) <=
              1e-8 * (1 + testutil::max_abs(slow)));
    }
    CHECK(recursive_cases > 0);
    CHECK(fallback_cases > 0);
}

TEST_CASE("dirichlet profile boundary") {
    GridShape shape({48});
    const StencilKernel k = heat1d_kernel();
    std::unordered_map<Index, double> table;
    table[0] = 1.25;  // cell 0
    table[47] = -0.5; // cell 47
    const BoundaryRule br = BoundaryRule::dirichlet_profile(std::move(table));
    testutil::Rng rng(149);
    FieldGrid a = testutil::random_grid(rng, shape);
    FieldGrid fast = solve_aperiodic(a, k, br, 6, 2);
    FieldGrid slow = evolve_aperiodic_naive(a, k, br, 6);
    CHECK(testutil::max_abs_diff(fast, slow) <= 1e-9 * (1 + testutil::max_abs(slow)));
}

TEST_CASE("vector fields through the aperiodic solver") {
    testutil::Rng rng(151);
    GridShape shape({40}, 2);
    StencilKernel k = testutil::random_kernel(rng, 1, 1, 2);
    Eigen::VectorXd vals(2);
    vals << 0.1, -0.2;
    const BoundaryRule br = BoundaryRule::dirichlet(vals);
    FieldGrid a = testutil::random_grid(rng, shape);
    FieldGrid fast = solve_aperiodic(a, k, br, 4, 2);
    FieldGrid slow = evolve_aperiodic_naive(a, k, br, 4);
    CHECK(testutil::max_abs_diff(fast, slow) <= 1e-9 * (1 + testutil::max_abs(slow)));
}

TEST_CASE("recursion depth follows the halving schedule") {
    testutil::Rng rng(157);
    FieldGrid a = testutil::random_grid(rng, GridShape({520}));
    const StencilKernel k = heat1d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.0);

    for (auto [T, cutoff] : {std::pair<std::uint64_t, Index>{40, 4},
                             {33, 4},
                             {64, 32}}) {
        RecursionStats stats;
        (void)recursive_boundary(a, k, br, T, cutoff, &stats);
        // Depth of the halving recurrence d(T) = 0 if T < cutoff else
        // 1 + d(ceil(T/2)); within one level of ceil(log2(T / cutoff)).
        int expect = 0;
        std::uint64_t t = T;
        while (!(t <= 1 || t < static_cast<std::uint64_t>(cutoff))) {
            ++expect;
            t = (t + 1) / 2;
        }
        CHECK(stats.max_depth == expect);
        const double ratio = static_cast<double>(T) / static_cast<double>(cutoff);
        const int log_bound = static_cast<int>(std::ceil(std::log2(std::max(ratio, 1.0))));
        CHECK(stats.max_depth >= log_bound);
        CHECK(stats.max_depth <= log_bound + 1);

        FieldGrid fast = solve_aperiodic(a, k, br, T, cutoff);
        FieldGrid slow = evolve_aperiodic_naive(a, k, br, T);
        CHECK(testutil::max_abs_diff(fast, slow) <=
              1e-8 * (1 + testutil::max_abs(slow)));
    }
}

TEST_CASE("odd T splits") {
    testutil::Rng rng(163);
    FieldGrid a = testutil::random_grid(rng, GridShape({200}));
    const StencilKernel k = heat1d_kernel();
    const BoundaryRule br = BoundaryRule::dirichlet(0.1);
    for (std::uint64_t T : {3, 5, 7, 9, 11, 13, 21}) {
        FieldGrid fast = solve_aperiodic(a, k, br, T, 2);
        FieldGrid slow = evolve_aperiodic_naive(a, k, br, T);
        CHECK(testutil::max_abs_diff(fast, slow) <=
              1e-8 * (1 + testutil::max_abs(slow)));
    }
}
