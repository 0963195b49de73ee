#include <doctest.h>

#include "fftstencil/oracle.hpp"
#include "oracles.hpp"

using namespace fftstencil;

namespace {

StencilKernel reference_kernel() {
    // a'[i] = -2 a[i-1] + a[i] + 3 a[i+1]
    StencilKernel k(1, 1);
    k.add_tap({-1}, -2.0);
    k.add_tap({0}, 1.0);
    k.add_tap({1}, 3.0);
    return k;
}

FieldGrid line_grid(std::vector<double> v) {
    FieldGrid g(GridShape({static_cast<Index>(v.size())}));
    for (size_t i = 0; i < v.size(); ++i) g.data[static_cast<Index>(i)] = v[i];
    return g;
}

} // namespace

TEST_CASE("step_periodic on the 4-cell reference kernel") {
    FieldGrid a = line_grid({1, 2, 3, 4});
    FieldGrid out = step_periodic(a, reference_kernel());
    // Row-by-row product with the circulant matrix [[1,3,0,-2], ...].
    CHECK(out.data[0] == doctest::Approx(-1).epsilon(1e-14));
    CHECK(out.data[1] == doctest::Approx(9).epsilon(1e-14));
    CHECK(out.data[2] == doctest::Approx(11).epsilon(1e-14));
    CHECK(out.data[3] == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("step_periodic identity and shift") {
    StencilKernel ident(1, 1);
    ident.add_tap({0}, 1.0);
    FieldGrid a = line_grid({1, 2, 3, 4});
    CHECK((step_periodic(a, ident).data == a.data).all());

    StencilKernel shift(1, 1);
    shift.add_tap({1}, 1.0); // a'[i] = a[i+1]
    FieldGrid s = step_periodic(a, shift);
    CHECK(s.data[0] == 2);
    CHECK(s.data[1] == 3);
    CHECK(s.data[2] == 4);
    CHECK(s.data[3] == 1);
}

TEST_CASE("step_periodic rejects oversized offsets") {
    StencilKernel k(1, 1);
    k.add_tap({4}, 1.0);
    FieldGrid a = line_grid({1, 2, 3, 4});
    CHECK_THROWS_AS(step_periodic(a, k), SpecError);
}

TEST_CASE("evolve_periodic_naive composition") {
    FieldGrid a = line_grid({1, 2, 3, 4});
    CHECK((evolve_periodic_naive(a, reference_kernel(), 0).data == a.data).all());

    StencilKernel shift(1, 1);
    shift.add_tap({1}, 1.0);
    FieldGrid s5 = evolve_periodic_naive(a, shift, 5); // shift by 5 mod 4
    CHECK(s5.data[0] == 2);
    CHECK(s5.data[1] == 3);
    CHECK(s5.data[2] == 4);
    CHECK(s5.data[3] == 1);

    // Delta input pulls out column 0 of the reference matrix.
    FieldGrid delta = line_grid({1, 0, 0, 0});
    FieldGrid col = evolve_periodic_naive(delta, reference_kernel(), 1);
    CHECK(col.data[0] == 1);
    CHECK(col.data[1] == -2);
    CHECK(col.data[2] == 0);
    CHECK(col.data[3] == 3);
}

TEST_CASE("step_aperiodic heat profile") {
    StencilKernel heat(1, 1);
    heat.add_tap({-1}, 0.25);
    heat.add_tap({0}, 0.5);
    heat.add_tap({1}, 0.25);
    const BoundaryRule zero = BoundaryRule::dirichlet(0.0);

    FieldGrid a = line_grid({0, 0, 1, 0, 0});
    FieldGrid one = step_aperiodic(a, heat, zero);
    const double want1[5] = {0, 0.25, 0.5, 0.25, 0};
    for (Index i = 0; i < 5; ++i) CHECK(one.data[i] == doctest::Approx(want1[i]));

    FieldGrid two = evolve_aperiodic_naive(a, heat, zero, 2);
    const double want2[5] = {0, 0.25, 0.375, 0.25, 0};
    for (Index i = 0; i < 5; ++i) CHECK(two.data[i] == doctest::Approx(want2[i]));

    CHECK((evolve_aperiodic_naive(a, heat, zero, 0).data == a.data).all());
    CHECK((evolve_aperiodic_naive(a, heat, zero, 1).data == one.data).all());
}

TEST_CASE("step_aperiodic identity keeps the interior, pins the shell") {
    StencilKernel ident(1, 1);
    ident.add_tap({0}, 1.0);
    ident.add_tap({1}, 0.0); // radius 1 so a boundary shell exists
    const BoundaryRule c = BoundaryRule::dirichlet(7.5);
    FieldGrid a = line_grid({1, 2, 3, 4, 5});
    FieldGrid out = step_aperiodic(a, ident, c);
    CHECK(out.data[0] == 7.5);
    CHECK(out.data[1] == 2);
    CHECK(out.data[2] == 3);
    CHECK(out.data[3] == 4);
    CHECK(out.data[4] == 7.5);
}

TEST_CASE("step_aperiodic grid-too-small guard") {
    StencilKernel wide(1, 1);
    wide.add_tap({-2}, 0.1);
    wide.add_tap({2}, 0.1);
    FieldGrid a = line_grid({1, 2, 3, 4}); // 2 sigma = 4 >= 4
    CHECK_THROWS_AS(step_aperiodic(a, wide, BoundaryRule::dirichlet(0.0)), SpecError);
}

TEST_CASE("dense_stencil_matrix reproduces the reference matrix exactly") {
    Eigen::MatrixXd m = dense_stencil_matrix(reference_kernel(), GridShape({4}));
    Eigen::MatrixXd want(4, 4);
    want << 1, 3, 0, -2, //
        -2, 1, 3, 0,     //
        0, -2, 1, 3,     //
        3, 0, -2, 1;
    CHECK(m == want);

    StencilKernel ident(1, 1);
    ident.add_tap({0}, 1.0);
    CHECK(dense_stencil_matrix(ident, GridShape({3})) == Eigen::MatrixXd::Identity(3, 3));

    // Kernel {-1: 1} realizes the right-shift operator X[i,j] = delta_{i,j+1}.
    StencilKernel left(1, 1);
    left.add_tap({-1}, 1.0);
    Eigen::MatrixXd x = dense_stencil_matrix(left, GridShape({3}));
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j)
            CHECK(x(i, j) == ((i == (j + 1) % 3) ? 1.0 : 0.0));
}

TEST_CASE("dense_stencil_matrix size guard") {
    StencilKernel ident(1, 1);
    ident.add_tap({0}, 1.0);
    CHECK_THROWS_AS(dense_stencil_matrix(ident, GridShape({4096})), SpecError);
}

TEST_CASE("dense matrix is circulant per axis and matches step_periodic") {
    testutil::Rng rng(11);
    for (GridShape shape : {GridShape({8}), GridShape({4, 5})}) {
        StencilKernel k = testutil::random_kernel(rng, shape.rank(), 1);
        Eigen::MatrixXd mat = dense_stencil_matrix(k, shape);

        // Entry depends only on (i - j) mod dims.
        std::vector<Index> i(shape.rank(), 0);
        do {
            std::vector<Index> j(shape.rank(), 0);
            do {
                std::vector<Index> d(shape.rank());
                for (int a = 0; a < shape.rank(); ++a)
                    d[a] = ((i[a] - j[a]) % shape.dim(a) + shape.dim(a)) % shape.dim(a);
                std::vector<Index> zero(shape.rank(), 0);
                CHECK(mat(shape.flatten(i), shape.flatten(j)) ==
                      mat(shape.flatten(d), shape.flatten(zero)));
            } while (next_index(j, shape.dims()));
        } while (next_index(i, shape.dims()));

        FieldGrid a = testutil::random_grid(rng, shape);
        FieldGrid via_step = step_periodic(a, k);
        Eigen::VectorXd via_mat = mat * a.data.matrix();
        CHECK((via_step.data.matrix() - via_mat).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("shift decomposition: matrix equals sum of pure-shift matrices") {
    testutil::Rng rng(13);
    for (GridShape shape : {GridShape({9}), GridShape({8, 8})}) {
        StencilKernel k = testutil::random_kernel(rng, shape.rank(), 2);
        Eigen::MatrixXd whole = dense_stencil_matrix(k, shape);
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(shape.cells(), shape.cells());
        for (const auto& [off, block] : k.taps()) {
            StencilKernel shift(shape.rank(), 1);
            shift.add_tap(off, 1.0);
            sum += block(0, 0) * dense_stencil_matrix(shift, shape);
        }
        CHECK(whole == sum); // exact: same += sequence per entry
    }
}

TEST_CASE("step_periodic commutes with cyclic rotation") {
    testutil::Rng rng(17);
    for (GridShape shape : {GridShape({12}), GridShape({6, 7})}) {
        StencilKernel k = testutil::random_kernel(rng, shape.rank(), 2);
        FieldGrid a = testutil::random_grid(rng, shape);
        std::vector<Index> shift(shape.rank());
        for (int x = 0; x < shape.rank(); ++x) shift[x] = rng.range(0, shape.dim(x) - 1);

        FieldGrid lhs = step_periodic(rotate_grid(a, shift), k);
        FieldGrid rhs = rotate_grid(step_periodic(a, k), shift);
        CHECK(testutil::max_abs_diff(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("vector-field step matches the dense block matrix") {
    testutil::Rng rng(19);
    GridShape shape({5, 4}, 2);
    StencilKernel k = testutil::random_kernel(rng, 2, 1, 2);
    FieldGrid a = testutil::random_grid(rng, shape);
    Eigen::MatrixXd mat = dense_stencil_matrix(k, shape);
    Eigen::VectorXd want = mat * a.data.matrix();
    FieldGrid got = step_periodic(a, k);
    CHECK((got.data.matrix() - want).cwiseAbs().maxCoeff() < 1e-12);
}
