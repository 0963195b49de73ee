#include "fftstencil/modal.hpp"

#include <cmath>
#include <numbers>

namespace fftstencil {

namespace {

// Double-double (compensated) arithmetic, enough for exact mode
// amplification: relative error stays near 1e-32 per multiply, so lambda^T
// is exact to well below either solver's floating-point error.
struct DD {
    double hi = 0, lo = 0;
};

DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_norm(double hi, double lo) {
    const DD s = two_sum(hi, lo);
    return s;
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return dd_norm(s.hi, s.lo + a.lo + b.lo);
}

DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    return dd_norm(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

DD dd_from(double x) { return {x, 0.0}; }

struct DDComplex {
    DD re, im;
};

DDComplex ddc_mul(const DDComplex& a, const DDComplex& b) {
    DDComplex r;
    r.re = dd_add(dd_mul(a.re, b.re), dd_mul(dd_mul(a.im, b.im), dd_from(-1.0)));
    r.im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return r;
}

DDComplex ddc_pow(DDComplex base, std::uint64_t t) {
    DDComplex acc{dd_from(1.0), dd_from(0.0)};
    while (t) {
        if (t & 1) acc = ddc_mul(acc, base);
        t >>= 1;
        if (t) base = ddc_mul(base, base);
    }
    return acc;
}

DD dd_pow(DD base, std::uint64_t t) {
    DD acc = dd_from(1.0);
    while (t) {
        if (t & 1) acc = dd_mul(acc, base);
        t >>= 1;
        if (t) base = dd_mul(base, base);
    }
    return acc;
}

struct Mode {
    std::vector<Index> k;
    double amplitude;
    double phase;
};

std::vector<Mode> periodic_modes(const GridShape& shape) {
    const int d = shape.rank();
    std::vector<Mode> modes(3);
    modes[0] = {std::vector<Index>(d, 0), 1.0, 0.0};
    modes[0].k[0] = 1;
    modes[1] = {std::vector<Index>(d, 0), 0.6, 0.7};
    if (d >= 2)
        modes[1].k[1] = 1;
    else
        modes[1].k[0] = 2;
    modes[2] = {std::vector<Index>(d, 1), 0.3, 1.3};
    if (d == 1) modes[2].k[0] = 3;
    return modes;
}

} // namespace

ModalProblem modal_problem_periodic(const GridShape& shape, const StencilKernel& k,
                                    std::uint64_t T) {
    k.require_fits(shape);
    if (shape.fields() != 1)
        throw SpecError("accuracy mode: periodic reference needs a scalar field");

    const auto modes = periodic_modes(shape);
    const int d = shape.rank();

    // Eigenvalue of mode q: sum over taps of coeff * exp(2 pi i k.off / dims).
    std::vector<DDComplex> amplified(modes.size());
    for (size_t q = 0; q < modes.size(); ++q) {
        std::complex<double> lam(0, 0);
        for (const auto& [off, block] : k.taps()) {
            double frac = 0;
            for (int a = 0; a < d; ++a)
                frac += static_cast<double>(modes[q].k[a] * off[a]) /
                        static_cast<double>(shape.dim(a));
            const double angle = 2.0 * std::numbers::pi * frac;
            lam += block(0, 0) * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        amplified[q] = ddc_pow({dd_from(lam.real()), dd_from(lam.imag())}, T);
    }

    ModalProblem p{FieldGrid(shape), FieldGrid(shape)};
    std::vector<Index> idx(d, 0);
    Index cell = 0;
    do {
        double init = 0, ref = 0;
        for (size_t q = 0; q < modes.size(); ++q) {
            double frac = 0;
            for (int a = 0; a < d; ++a)
                frac += static_cast<double>((modes[q].k[a] * idx[a]) % shape.dim(a)) /
                        static_cast<double>(shape.dim(a));
            const double angle = 2.0 * std::numbers::pi * frac + modes[q].phase;
            const double c = std::cos(angle), s = std::sin(angle);
            init += modes[q].amplitude * c;
            // Re(lambda^T * exp(i angle))
            ref += modes[q].amplitude *
                   (amplified[q].re.hi * c - amplified[q].im.hi * s);
        }
        p.initial.data[cell] = init;
        p.reference.data[cell] = ref;
        ++cell;
    } while (next_index(idx, shape.dims()));
    return p;
}

ModalProblem modal_problem_aperiodic(const GridShape& shape, const StencilKernel& k,
                                     const BoundaryRule& br, std::uint64_t T) {
    k.require_fits(shape);
    const int d = shape.rank();
    if (shape.fields() != 1)
        throw SpecError("accuracy mode: aperiodic reference needs a scalar field");
    if (br.kind() != BoundaryRule::Kind::DirichletConstant ||
        br.value(shape, 0, 0) != 0.0)
        throw SpecError("accuracy mode: aperiodic reference needs Dirichlet 0");
    for (Index dim : shape.dims())
        if (dim < 5)
            throw SpecError("accuracy mode: every dimension must be >= 5");

    // Validate the heat family: center tap plus symmetric axial +-1 taps.
    if (k.radius() != 1)
        throw SpecError("accuracy mode: aperiodic reference needs radius 1");
    double center = 0;
    std::vector<double> axial(d, 0);
    for (const auto& [off, block] : k.taps()) {
        int nonzero_axis = -1, count = 0;
        for (int a = 0; a < d; ++a)
            if (off[a] != 0) {
                nonzero_axis = a;
                ++count;
            }
        if (count == 0) {
            center = block(0, 0);
        } else if (count == 1) {
            if (axial[nonzero_axis] == 0)
                axial[nonzero_axis] = block(0, 0);
            else if (axial[nonzero_axis] != block(0, 0))
                throw SpecError("accuracy mode: kernel must be symmetric per axis");
        } else {
            throw SpecError("accuracy mode: kernel must have axial taps only");
        }
    }

    const double amps[3] = {1.0, 0.6, 0.3};
    std::vector<Mode> modes(3);
    for (int q = 0; q < 3; ++q)
        modes[q] = {std::vector<Index>(d, static_cast<Index>(q + 1)), amps[q], 0.0};

    // Sine-mode eigenvalue: center + sum_a 2 axial_a cos(pi k_a / (dim_a - 1)).
    std::vector<DD> amplified(modes.size());
    for (size_t q = 0; q < modes.size(); ++q) {
        DD mu = dd_from(center);
        for (int a = 0; a < d; ++a) {
            const double angle = std::numbers::pi * static_cast<double>(modes[q].k[a]) /
                                 static_cast<double>(shape.dim(a) - 1);
            mu = dd_add(mu, dd_from(2.0 * axial[a] * std::cos(angle)));
        }
        amplified[q] = dd_pow(mu, T);
    }

    ModalProblem p{FieldGrid(shape), FieldGrid(shape)};
    std::vector<Index> idx(d, 0);
    Index cell = 0;
    do {
        double init = 0, ref = 0;
        for (size_t q = 0; q < modes.size(); ++q) {
            double v = modes[q].amplitude;
            for (int a = 0; a < d; ++a)
                v *= std::sin(std::numbers::pi * static_cast<double>(modes[q].k[a]) *
                              static_cast<double>(idx[a]) /
                              static_cast<double>(shape.dim(a) - 1));
            init += v;
            ref += v * amplified[q].hi;
        }
        p.initial.data[cell] = init;
        p.reference.data[cell] = ref;
        ++cell;
    } while (next_index(idx, shape.dims()));
    return p;
}

} // namespace fftstencil
