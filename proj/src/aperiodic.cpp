#include "fftstencil/aperiodic.hpp"

#include <chrono>
#include <future>

#include "fftstencil/parallel.hpp"

namespace fftstencil {

Index roi_width(Index sigma, std::uint64_t T) {
    if (sigma < 0) throw SpecError("roi_width: sigma must be nonnegative");
    const __int128 w = static_cast<__int128>(sigma) * static_cast<__int128>(T);
    if (w > INT64_MAX) throw SpecError("roi_width: sigma * T overflows");
    return static_cast<Index>(w);
}

namespace {

Index ceil_half(std::uint64_t T) { return static_cast<Index>((T + 1) / 2); }

bool is_base_case(std::uint64_t T, Index cutoff) {
    return T <= 1 || T < static_cast<std::uint64_t>(cutoff);
}

// Width of correct time-0 data a call needs: the looping base case consumes
// sigma cells per step on top of the sigma*T it returns; a recursive call
// feeds per-face slabs of depth 4 * Delta.
Index width_needed(Index sigma, std::uint64_t T, Index cutoff) {
    if (is_base_case(T, cutoff)) return 2 * sigma * static_cast<Index>(T);
    return 4 * sigma * ceil_half(T);
}

// One aperiodic step of a single face slab, restricted to the rows with
// face-distance <= valid_depth (deeper rows are stale and never read again).
void step_slab(const FieldGrid& cur, FieldGrid& next, const StencilKernel& k,
               const BoundaryRule& br, const GridShape& global_shape, Face f,
               Index band_hi, Index valid_depth) {
    const auto& sdims = cur.shape.dims();
    const int rank = cur.shape.rank();
    const int m = cur.shape.fields();
    const Index sigma = k.radius();
    const Index w = band_hi;
    const Index axis_dim = global_shape.dim(f.axis);

    // Slab-local flat deltas; valid for every stencil-updated cell.
    std::vector<Index> strides(rank);
    {
        Index acc = 1;
        for (int a = rank - 1; a >= 0; --a) {
            strides[a] = acc;
            acc *= sdims[a];
        }
    }
    std::vector<std::pair<Index, const Eigen::MatrixXd*>> flat_taps;
    for (const auto& [off, block] : k.taps()) {
        Index delta = 0;
        for (int a = 0; a < rank; ++a) delta += off[a] * strides[a];
        flat_taps.emplace_back(delta, &block);
    }

    std::vector<Index> idx(rank, 0), gidx(rank);
    Index cell = 0;
    do {
        const Index face_dist =
            f.side == 0 ? idx[f.axis] + 1 : w - idx[f.axis];
        if (face_dist > valid_depth) {
            ++cell;
            continue;
        }
        gidx = idx;
        gidx[f.axis] = f.side == 0 ? idx[f.axis] : axis_dim - w + idx[f.axis];
        Index dist = INT64_MAX;
        for (int a = 0; a < rank; ++a)
            dist = std::min({dist, gidx[a] + 1, global_shape.dim(a) - gidx[a]});

        if (dist <= sigma) {
            const Index gcell = global_shape.flatten(gidx);
            for (int fd = 0; fd < m; ++fd)
                next.data[cell * m + fd] = br.value(global_shape, gcell, fd);
        } else if (m == 1) {
            double acc = 0;
            for (const auto& [delta, block] : flat_taps)
                acc += (*block)(0, 0) * cur.data[cell + delta];
            next.data[cell] = acc;
        } else {
            for (int fd = 0; fd < m; ++fd) {
                double acc = 0;
                for (const auto& [delta, block] : flat_taps)
                    for (int g = 0; g < m; ++g)
                        acc += (*block)(fd, g) * cur.data[(cell + delta) * m + g];
                next.data[cell * m + fd] = acc;
            }
        }
        ++cell;
    } while (next_index(idx, sdims));
}

// Direct looping on the band: every slab advances independently; any cell of
// the output band is correct in its own face's slab.
BandGrid rb_base(const BandGrid& in, const StencilKernel& k, const BoundaryRule& br,
                 std::uint64_t T) {
    const GridShape& shape = in.shape();
    const Index sigma = k.radius();
    const Index w_in = in.hi();
    const Index w_out = roi_width(sigma, T);

    BandGrid out(shape, 0, w_out);
    const int m = shape.fields();
    for (int a = 0; a < shape.rank(); ++a) {
        for (int side = 0; side < 2; ++side) {
            const Face f{a, side};
            FieldGrid cur = in.slab(f);
            FieldGrid next(cur.shape);
            for (std::uint64_t t = 1; t <= T; ++t) {
                step_slab(cur, next, k, br, shape, f, w_in, w_in - sigma * t);
                std::swap(cur, next);
            }
            // Keep the rows with face-distance <= w_out.
            FieldGrid& dst = out.slab(f);
            const auto& ddims = dst.shape.dims();
            std::vector<Index> idx(ddims.size(), 0), sidx(ddims.size());
            Index cell = 0;
            do {
                sidx = idx;
                sidx[a] = side == 0 ? idx[a] : idx[a] + w_in - w_out;
                const Index sc = cur.shape.flatten(sidx);
                for (int fd = 0; fd < m; ++fd)
                    dst.data[cell * m + fd] = cur.data[sc * m + fd];
                ++cell;
            } while (next_index(idx, ddims));
        }
    }
    return out;
}

// Fills a fresh band of the given width at one time level: cells the inner
// recursion covered come from it, the rest from the kept region of the
// per-face periodic slab solves (read through the cell's owner face).
BandGrid assemble_band(const GridShape& shape, Index width, const BandGrid& inner,
                       const std::vector<FieldGrid>& solved, Index solved_width) {
    BandGrid out(shape, 0, width);
    const int m = shape.fields();
    for (int a = 0; a < shape.rank(); ++a) {
        for (int side = 0; side < 2; ++side) {
            const Face g{a, side};
            FieldGrid& dst = out.slab(g);
            const auto& ddims = dst.shape.dims();
            std::vector<Index> idx(ddims.size(), 0), gidx(ddims.size()),
                lidx(ddims.size());
            Index cell = 0;
            do {
                gidx = idx;
                gidx[a] = out.global_axis_index(g, idx[a]);
                const Index d = dist_to_boundary(shape, gidx);
                if (d <= inner.hi()) {
                    for (int fd = 0; fd < m; ++fd)
                        dst.data[cell * m + fd] = inner.value(gidx, fd);
                } else {
                    const Face h = owner_face(shape, gidx);
                    const FieldGrid& src = solved[h.id()];
                    lidx = gidx;
                    lidx[h.axis] = h.side == 0
                                       ? gidx[h.axis]
                                       : gidx[h.axis] - (shape.dim(h.axis) - solved_width);
                    const Index sc = src.shape.flatten(lidx);
                    for (int fd = 0; fd < m; ++fd)
                        dst.data[cell * m + fd] = src.data[sc * m + fd];
                }
                ++cell;
            } while (next_index(idx, ddims));
        }
    }
    return out;
}

BandGrid rb_run(const BandGrid& in, const StencilKernel& k, const BoundaryRule& br,
                std::uint64_t T, Index cutoff, SpectrumCache& cache,
                RecursionStats* stats, int depth);

// Launches the sibling recursion on its own thread when a thread budget
// exists; the slab solves of the same step run on the calling thread.
std::future<BandGrid> spawn_recursion(const BandGrid& band, Index width,
                                      const StencilKernel& k, const BoundaryRule& br,
                                      std::uint64_t T, Index cutoff,
                                      SpectrumCache& cache, RecursionStats* stats,
                                      int depth) {
    const auto policy =
        thread_count() > 1 ? std::launch::async : std::launch::deferred;
    BandGrid input = shrink_band(band, width);
    return std::async(policy, [input = std::move(input), &k, &br, T, cutoff, &cache,
                               stats, depth]() {
        return rb_run(input, k, br, T, cutoff, cache, stats, depth);
    });
}

void merge_stats(RecursionStats* into, const RecursionStats& child) {
    if (!into) return;
    into->max_depth = std::max(into->max_depth, child.max_depth);
    into->base_cases += child.base_cases;
    into->periodic_solves += child.periodic_solves;
}

BandGrid rb_run(const BandGrid& in, const StencilKernel& k, const BoundaryRule& br,
                std::uint64_t T, Index cutoff, SpectrumCache& cache,
                RecursionStats* stats, int depth) {
    if (stats) stats->max_depth = std::max(stats->max_depth, depth);
    if (is_base_case(T, cutoff)) {
        if (stats) ++stats->base_cases;
        return rb_base(in, k, br, T);
    }

    const GridShape& shape = in.shape();
    const Index sigma = k.radius();
    const std::uint64_t T1 = (T + 1) / 2, T2 = T / 2;
    const Index delta = sigma * static_cast<Index>(T1);
    if (in.hi() != 4 * delta)
        throw Error("recursive_boundary: internal band width mismatch");

    // Step 1: values at time T1 on dist <= 3 Delta. Slab solves keep
    // (Delta, 3 Delta]; the concurrent recursion supplies dist <= Delta.
    RecursionStats child1;
    auto b1_future = spawn_recursion(in, width_needed(sigma, T1, cutoff), k, br, T1,
                                     cutoff, cache, stats ? &child1 : nullptr, depth + 1);
    std::vector<FieldGrid> solved1;
    solved1.reserve(in.face_count());
    for (int a = 0; a < shape.rank(); ++a)
        for (int side = 0; side < 2; ++side)
            solved1.push_back(solve_periodic_cached(in.slab(Face{a, side}), k, T1, cache));
    if (stats) stats->periodic_solves += in.face_count();

    const BandGrid b1 = b1_future.get();
    merge_stats(stats, child1);
    const BandGrid b = assemble_band(shape, 3 * delta, b1, solved1, in.hi());

    // Step 2: values at time T on dist <= sigma T. Slab solves keep
    // (sigma T2, sigma T]; the concurrent recursion supplies dist <= sigma T2.
    RecursionStats child2;
    auto c1_future = spawn_recursion(b, width_needed(sigma, T2, cutoff), k, br, T2,
                                     cutoff, cache, stats ? &child2 : nullptr, depth + 1);
    std::vector<FieldGrid> solved2;
    solved2.reserve(b.face_count());
    for (int a = 0; a < shape.rank(); ++a)
        for (int side = 0; side < 2; ++side)
            solved2.push_back(solve_periodic_cached(b.slab(Face{a, side}), k, T2, cache));
    if (stats) stats->periodic_solves += b.face_count();

    const BandGrid c1 = c1_future.get();
    merge_stats(stats, child2);
    return assemble_band(shape, roi_width(sigma, T), c1, solved2, b.hi());
}

void check_rb_preconditions(const GridShape& shape, const StencilKernel& k,
                            std::uint64_t T, Index cutoff) {
    k.require_fits(shape);
    if (T < 1) throw SpecError("recursive_boundary: T must be >= 1");
    if (cutoff < 1) throw SpecError("recursive_boundary: cutoff must be positive");
    if (k.radius() < 1)
        throw SpecError("recursive_boundary: stencil radius must be >= 1");
    const Index half = (shape.min_dim() + 1) / 2;
    const __int128 need = static_cast<__int128>(4) * k.radius() * ceil_half(T);
    if (need > half)
        throw FallbackRequired("recursive_boundary: band 4*sigma*ceil(T/2) = " +
                               std::to_string(static_cast<long long>(need)) +
                               " exceeds ceil(min dim / 2) = " + std::to_string(half));
}

} // namespace

BandGrid recursive_boundary(const FieldGrid& a0, const StencilKernel& k,
                            const BoundaryRule& br, std::uint64_t T, Index cutoff,
                            RecursionStats* stats) {
    check_rb_preconditions(a0.shape, k, T, cutoff);
    SpectrumCache cache;
    const BandGrid in = slice_band(a0, 0, width_needed(k.radius(), T, cutoff));
    return rb_run(in, k, br, T, cutoff, cache, stats, 0);
}

FieldGrid solve_aperiodic(const FieldGrid& a0, const StencilKernel& k,
                          const BoundaryRule& br, std::uint64_t T, Index cutoff,
                          StageTimings* st) {
    k.require_fits(a0.shape);
    if (cutoff < 1) throw SpecError("solve_aperiodic: cutoff must be positive");
    if (T == 0) return a0;
    if (k.radius() < 1)
        throw SpecError("solve_aperiodic: stencil radius must be >= 1");

    const Index half = (a0.shape.min_dim() + 1) / 2;
    const __int128 need = static_cast<__int128>(4) * k.radius() * ceil_half(T);
    if (need > half) {
        // ROI covers the grid; nothing for the periodic interior to keep.
        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        FieldGrid out = evolve_aperiodic_naive(a0, k, br, T);
        if (st)
            st->boundary_recursion +=
                std::chrono::duration<double>(clock::now() - t0).count();
        return out;
    }

    // Interior runs concurrently with the boundary recursion; they write
    // disjoint stage-timing fields.
    const auto policy =
        thread_count() > 1 ? std::launch::async : std::launch::deferred;
    auto interior_future =
        std::async(policy, [&] { return solve_periodic(a0, k, T, st); });

    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    SpectrumCache cache;
    const BandGrid in = slice_band(a0, 0, width_needed(k.radius(), T, cutoff));
    const BandGrid band = rb_run(in, k, br, T, cutoff, cache, nullptr, 0);
    if (st)
        st->boundary_recursion += std::chrono::duration<double>(clock::now() - t0).count();

    return scatter_band(interior_future.get(), band);
}

} // namespace fftstencil
