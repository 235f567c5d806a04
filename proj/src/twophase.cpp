#include "fca/twophase.hpp"

#include <atomic>
#include <cassert>

#include "fca/percolation.hpp"
#include "fca/rng.hpp"

namespace fca {
namespace {

// Byte grid over an explicit coordinate rectangle; field transforms shrink
// the rectangle by exactly their dependence reach, so exactness is carried
// by construction.
struct Region {
    int x0 = 0, y0 = 0, w = 0, h = 0;
    int x1() const { return x0 + w; }  // exclusive
    int y1() const { return y0 + h; }
};

Region intersect(Region a, Region b) {
    int x0 = std::max(a.x0, b.x0), y0 = std::max(a.y0, b.y0);
    int x1 = std::min(a.x1(), b.x1()), y1 = std::min(a.y1(), b.y1());
    return {x0, y0, x1 - x0, y1 - y0};
}

struct Grid {
    Region reg;
    std::vector<uint8_t> v;

    explicit Grid(Region r) : reg(r) {
        require(r.w > 0 && r.h > 0, Err::ExactnessViolated, "window too small for exact evaluation");
        v.assign(static_cast<size_t>(r.w) * r.h, 0);
    }
    uint8_t at(int x, int y) const { return v[static_cast<size_t>(y - reg.y0) * reg.w + (x - reg.x0)]; }
    void set(int x, int y, uint8_t val) { v[static_cast<size_t>(y - reg.y0) * reg.w + (x - reg.x0)] = val; }
};

struct Sat {
    Region reg;
    std::vector<int32_t> s;  // (w+1) x (h+1)

    // inclusive corners in absolute coordinates
    int32_t rect(int ax0, int ay0, int ax1, int ay1) const {
        int rx0 = ax0 - reg.x0, ry0 = ay0 - reg.y0;
        int rx1 = ax1 - reg.x0 + 1, ry1 = ay1 - reg.y0 + 1;
        int W = reg.w + 1;
        return s[static_cast<size_t>(ry1) * W + rx1] - s[static_cast<size_t>(ry0) * W + rx1] -
               s[static_cast<size_t>(ry1) * W + rx0] + s[static_cast<size_t>(ry0) * W + rx0];
    }
};

Sat make_sat(const Grid& g) {
    Sat sat;
    sat.reg = g.reg;
    int W = g.reg.w + 1, H = g.reg.h + 1;
    sat.s.assign(static_cast<size_t>(W) * H, 0);
    for (int y = 0; y < g.reg.h; ++y) {
        int32_t row = 0;
        for (int x = 0; x < g.reg.w; ++x) {
            row += g.v[static_cast<size_t>(y) * g.reg.w + x];
            sat.s[static_cast<size_t>(y + 1) * W + (x + 1)] = sat.s[static_cast<size_t>(y) * W + (x + 1)] + row;
        }
    }
    return sat;
}

// indicator of bw x bh all-one blocks anchored at their lower-left corner
Grid all_one_blocks(const Sat& sat, int bw, int bh) {
    Grid out(Region{sat.reg.x0, sat.reg.y0, sat.reg.w - bw + 1, sat.reg.h - bh + 1});
    int32_t full = bw * bh;
    for (int y = out.reg.y0; y < out.reg.y1(); ++y)
        for (int x = out.reg.x0; x < out.reg.x1(); ++x)
            out.set(x, y, sat.rect(x, y, x + bw - 1, y + bh - 1) == full ? 1 : 0);
    return out;
}

// any-one over the box z + [lo_x..hi_x] x [lo_y..hi_y]
Grid box_any(const Grid& src, int lo_x, int hi_x, int lo_y, int hi_y) {
    Sat sat = make_sat(src);
    Grid out(Region{src.reg.x0 - lo_x, src.reg.y0 - lo_y, src.reg.w - (hi_x - lo_x),
                    src.reg.h - (hi_y - lo_y)});
    for (int y = out.reg.y0; y < out.reg.y1(); ++y)
        for (int x = out.reg.x0; x < out.reg.x1(); ++x)
            out.set(x, y, sat.rect(x + lo_x, y + lo_y, x + hi_x, y + hi_y) > 0 ? 1 : 0);
    return out;
}

Grid gprime_field(const Grid& x, const TwoPhaseParams& p) {
    int N = p.n_block;
    Sat sx = make_sat(x);
    Grid ones = all_one_blocks(sx, N, N);
    Grid blob = box_any(ones, -4 * N, 3 * N, -4 * N, 3 * N);

    Region dens{x.reg.x0 + N, x.reg.y0 + N, x.reg.w - 2 * N, x.reg.h - 2 * N};
    Grid out(intersect(blob.reg, dens));

    Rat lo = p.eps1 - p.delta, hi = p.eps1 + p.delta;
    int64_t m2 = static_cast<int64_t>(2 * N + 1) * (2 * N + 1);
    for (int y = out.reg.y0; y < out.reg.y1(); ++y) {
        for (int x0 = out.reg.x0; x0 < out.reg.x1(); ++x0) {
            if (blob.at(x0, y)) {
                out.set(x0, y, 0);
                continue;
            }
            int64_t cnt = sx.rect(x0 - N, y - N, x0 + N, y + N);
            bool inside = cnt * lo.den > lo.num * m2 && cnt * hi.den < hi.num * m2;
            out.set(x0, y, inside ? 1 : 0);
        }
    }
    return out;
}

Grid g_field(const Grid& x, const TwoPhaseParams& p) {
    int N = p.n_block;
    Grid gp = gprime_field(x, p);
    Grid gpsq = all_one_blocks(make_sat(gp), N, N);
    Grid dil = box_any(gpsq, -(N - 1), 0, -(N - 1), 0);
    Grid out(intersect(dil.reg, x.reg));
    for (int y = out.reg.y0; y < out.reg.y1(); ++y)
        for (int x0 = out.reg.x0; x0 < out.reg.x1(); ++x0)
            out.set(x0, y, x.at(x0, y) | dil.at(x0, y));
    return out;
}

Grid h_field(const Grid& x, const TwoPhaseParams& p) {
    int N = p.n_block;
    Grid rect = all_one_blocks(make_sat(x), 2 * N, N);
    rect.reg.y0 -= N;  // R(z) asks for the all-one rectangle at z + (0, N)
    Grid dil = box_any(rect, -(N - 1), 0, -(N - 1), 0);
    Grid out(intersect(dil.reg, x.reg));
    for (int y = out.reg.y0; y < out.reg.y1(); ++y)
        for (int x0 = out.reg.x0; x0 < out.reg.x1(); ++x0)
            out.set(x0, y, x.at(x0, y) | dil.at(x0, y));
    return out;
}

Grid grid_from_view(const PaddedView& v, Region r) {
    Grid g(r);
    for (int y = r.y0; y < r.y1(); ++y)
        for (int x = r.x0; x < r.x1(); ++x) g.set(x, y, v.at(x, y));
    return g;
}

Grid grid_from_window(const Window& w) {
    Grid g(Region{0, 0, w.width(), w.height()});
    for (int y = 0; y < w.height(); ++y)
        for (int x = 0; x < w.width(); ++x) g.set(x, y, w.get(x, y));
    return g;
}

void write_out(const Grid& g, Region target, uint8_t* out, ptrdiff_t stride) {
    for (int y = target.y0; y < target.y1(); ++y)
        for (int x = target.x0; x < target.x1(); ++x)
            out[static_cast<ptrdiff_t>(y) * stride + x] = g.at(x, y);
}

using FieldFn = Grid (*)(const Grid&, const TwoPhaseParams&);

RuleKernel make_kernel(const std::string& name, int radius, const TwoPhaseParams& p, FieldFn fn) {
    RuleKernel k;
    k.name = name;
    k.radius = radius;
    k.alphabet_size = 2;
    k.max_state = 1;
    TwoPhaseParams pp = p;
    k.bulk = [pp, fn, radius](const PaddedView& v, uint8_t* out, ptrdiff_t stride) {
        Grid in = grid_from_view(v, Region{-radius, -radius, v.w + 2 * radius, v.h + 2 * radius});
        Grid res = fn(in, pp);
        write_out(res, Region{0, 0, v.w, v.h}, out, stride);
    };
    k.cell = [pp, fn, radius](const PaddedView& v, int x, int y) -> uint8_t {
        Grid in = grid_from_view(v, Region{x - radius, y - radius, 2 * radius + 1, 2 * radius + 1});
        Grid res = fn(in, pp);
        return res.at(x, y);
    };
    return k;
}

Grid f_composite(const Grid& x, const TwoPhaseParams& p) { return h_field(g_field(x, p), p); }

}  // namespace

void TwoPhaseParams::validate() const {
    require(n_block >= 1, Err::InvalidArgument, "block size must be positive");
    Rat zero(0), one(1);
    require(zero < delta && delta < eps1 && eps1 < eps2 - delta && eps2 < one, Err::InvalidArgument,
            "need 0 < delta < eps1 < eps2 - delta and eps2 < 1");
}

RuleKernel gprime_kernel(const TwoPhaseParams& p) {
    p.validate();
    return make_kernel("gprime", p.radius_gprime(), p, &gprime_field);
}

RuleKernel g_kernel(const TwoPhaseParams& p) {
    p.validate();
    return make_kernel("g", p.radius_g(), p, &g_field);
}

RuleKernel h_kernel(const TwoPhaseParams& p) {
    p.validate();
    return make_kernel("h", p.radius_h(), p, &h_field);
}

RuleKernel f_kernel(const TwoPhaseParams& p) {
    p.validate();
    return make_kernel("f", p.radius_f(), p, &f_composite);
}

namespace {

CoarseField coarsen(const Grid& g, int N, bool blocks_of_one) {
    Grid base = g;
    if (blocks_of_one) base = all_one_blocks(make_sat(g), N, N);
    int a0 = base.reg.x0 >= 0 ? (base.reg.x0 + N - 1) / N : -((-base.reg.x0) / N);
    int b0 = base.reg.y0 >= 0 ? (base.reg.y0 + N - 1) / N : -((-base.reg.y0) / N);
    int a1 = base.reg.x1() > 0 ? (base.reg.x1() - 1) / N : -((-base.reg.x1() + N - 1) / N) - 1;
    int b1 = base.reg.y1() > 0 ? (base.reg.y1() - 1) / N : -((-base.reg.y1() + N - 1) / N) - 1;
    require(a1 >= a0 && b1 >= b0, Err::ExactnessViolated, "no coarse cell has an exact dependence region");

    CoarseField out;
    out.a0 = a0;
    out.b0 = b0;
    out.cells = Window(a1 - a0 + 1, b1 - b0 + 1, Boundary::Zero, 2, 0);
    for (int b = b0; b <= b1; ++b)
        for (int a = a0; a <= a1; ++a) {
            uint8_t v = base.at(a * N, b * N);
            out.cells.set(a - a0, b - b0, blocks_of_one ? v : (v == 0 ? 1 : 0));
        }
    return out;
}

}  // namespace

CoarseField coarse_field_A(const Window& fine, const TwoPhaseParams& p) {
    p.validate();
    return coarsen(g_field(grid_from_window(fine), p), p.n_block, false);
}

CoarseField coarse_field_B(const Window& fine, const TwoPhaseParams& p) {
    p.validate();
    return coarsen(g_field(grid_from_window(fine), p), p.n_block, true);
}

FieldSpecPair coarse_field_specs(const TwoPhaseParams& p) {
    int N = p.n_block;
    FieldSpecPair out;
    out.a = {N, -(5 * N - 1), 5 * N - 2};
    out.b = {N, -(5 * N - 1), 6 * N - 3};
    return out;
}

namespace {

Grid sample_grid(int side, Rat p, uint64_t seed, uint64_t trial) {
    Grid g(Region{0, 0, side, side});
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            g.set(x, y, bernoulli_hash(cell_hash(seed, x, y, trial), p) ? 1 : 0);
    return g;
}

}  // namespace

IdempotenceReport verify_idempotence(const TwoPhaseParams& p, int64_t trials, int window_side,
                                     int max_n, std::span<const Rat> ps, uint64_t seed,
                                     int threads) {
    p.validate();
    require(window_side >= 20 * p.n_block, Err::InvalidArgument,
            "window side below 20 blocks leaves no exact interior");
    std::atomic<int64_t> checks{0}, failures{0};
    std::atomic<int64_t> bad_x{INT64_MIN}, bad_y{INT64_MIN};
    int64_t total = trials * static_cast<int64_t>(ps.size());

    parallel_for(total, threads, [&](int64_t lo, int64_t hi) {
        for (int64_t i = lo; i < hi; ++i) {
            Rat prob = ps[static_cast<size_t>(i / trials)];
            Grid x = sample_grid(window_side, prob, seed, static_cast<uint64_t>(i));
            Grid z = g_field(x, p);
            for (int n = 0; n <= max_n; ++n) {
                Grid gz = g_field(z, p);
                checks.fetch_add(1, std::memory_order_relaxed);
                for (int y = gz.reg.y0; y < gz.reg.y1(); ++y)
                    for (int cx = gz.reg.x0; cx < gz.reg.x1(); ++cx)
                        if (gz.at(cx, y) != z.at(cx, y)) {
                            failures.fetch_add(1, std::memory_order_relaxed);
                            bad_x.store(cx);
                            bad_y.store(y);
                        }
                if (n < max_n) z = h_field(z, p);
            }
        }
    });

    IdempotenceReport rep;
    rep.samples = total;
    rep.checks = checks.load();
    rep.failures = failures.load();
    if (rep.failures > 0) rep.first_bad_cell = IntVec2{bad_x.load(), bad_y.load()};
    return rep;
}

PathClaimCheck check_path_claims_window(const Window& fine, const TwoPhaseParams& p) {
    p.validate();
    int N = p.n_block;
    PathClaimCheck out;

    Grid x = grid_from_window(fine);
    Grid z = g_field(x, p);

    // coarse views of g(x) on its exact region
    CoarseField A = coarsen(z, N, false);
    CoarseField B = coarsen(z, N, true);

    // shared origin block: middle column, lower third (leaves both rows above
    // for the path and distance below for the growth-step budget)
    int a_orig = B.a0 + B.cells.width() / 2;
    int b_orig = B.b0 + B.cells.height() / 3;
    out.a_origin = a_orig;
    out.b_origin = b_orig;
    IntVec2 fine_origin{static_cast<int64_t>(a_orig) * N, static_cast<int64_t>(b_orig) * N};

    // how many growth steps stay exact at the fine origin
    int rh = p.radius_h();
    auto exact_budget = [&](const Grid& base) {
        int d = std::min(std::min(static_cast<int>(fine_origin.x) - base.reg.x0,
                                  base.reg.x1() - 1 - static_cast<int>(fine_origin.x)),
                         std::min(static_cast<int>(fine_origin.y) - base.reg.y0,
                                  base.reg.y1() - 1 - static_cast<int>(fine_origin.y)));
        return d / rh;
    };
    int64_t budget = exact_budget(z);

    // A-direction: a block path of stalled growth pins the origin at 0
    if (a_orig >= A.a0 && a_orig < A.a0 + A.cells.width() && b_orig >= A.b0 &&
        b_orig < A.b0 + A.cells.height()) {
        IntVec2 ao{a_orig - A.a0, b_orig - A.b0};
        if (directed_crossing(A.cells, 1, ao)) {
            int64_t rows_above = A.cells.height() - 1 - ao.y;
            int64_t t_max = std::min(rows_above, budget);
            out.a_checked = t_max > 0;
            Grid cur = z;
            for (int64_t t = 1; t <= t_max && out.a_ok; ++t) {
                cur = h_field(cur, p);
                if (cur.at(static_cast<int>(fine_origin.x), static_cast<int>(fine_origin.y)) != 0)
                    out.a_ok = false;
            }
        }
    }

    // B-direction: a finite block bound forces fill-in within that many steps
    IntVec2 bo{a_orig - B.a0, b_orig - B.b0};
    auto bound = koenig_bound(B.cells, 0, bo);
    if (bound.has_value() && *bound <= budget) {
        out.b_checked = true;
        out.b_bound = *bound;
        Grid cur = z;
        for (int64_t t = 0; t < *bound; ++t) cur = h_field(cur, p);
        if (cur.at(static_cast<int>(fine_origin.x), static_cast<int>(fine_origin.y)) != 1)
            out.b_ok = false;
    }
    return out;
}

PathClaimsReport verify_path_claims(const TwoPhaseParams& p, int64_t trials, int window_side,
                                    Rat p_blocked, Rat p_filling, uint64_t seed, int threads) {
    p.validate();
    std::atomic<int64_t> a_checked{0}, a_fail{0}, b_checked{0}, b_fail{0};
    parallel_for(trials, threads, [&](int64_t lo, int64_t hi) {
        for (int64_t t = lo; t < hi; ++t) {
            Rat prob = (t % 2 == 0) ? p_blocked : p_filling;
            Window w(window_side, window_side, Boundary::Zero, 2, 0);
            for (int y = 0; y < window_side; ++y)
                for (int x = 0; x < window_side; ++x)
                    if (bernoulli_hash(cell_hash(seed, x, y, static_cast<uint64_t>(t)), prob))
                        w.set(x, y, 1);
            PathClaimCheck c = check_path_claims_window(w, p);
            if (c.a_checked) {
                a_checked.fetch_add(1, std::memory_order_relaxed);
                if (!c.a_ok) a_fail.fetch_add(1, std::memory_order_relaxed);
            }
            if (c.b_checked) {
                b_checked.fetch_add(1, std::memory_order_relaxed);
                if (!c.b_ok) b_fail.fetch_add(1, std::memory_order_relaxed);
            }
        }
    });
    PathClaimsReport rep;
    rep.samples = trials;
    rep.a_checked = a_checked.load();
    rep.a_failures = a_fail.load();
    rep.b_checked = b_checked.load();
    rep.b_failures = b_fail.load();
    return rep;
}

std::optional<std::pair<Window, Window>> find_nonmonotone_witness(const TwoPhaseParams& p) {
    p.validate();
    RuleKernel f = f_kernel(p);
    int side = 2 * f.radius + 1;
    int c = f.radius;

    auto eval_center = [&](const Window& w) {
        Grid g = grid_from_window(w);
        g.reg.x0 = -c;
        g.reg.y0 = -c;
        Grid res = f_composite(g, p);
        return res.at(0, 0);
    };

    // parity scatter at density 1/4 triggers the density clause; the filled
    // superset at density 3/4 suppresses it and leaves the center stuck
    if (p.eps1 - p.delta < Rat(1, 4) && Rat(1, 4) < p.eps1 + p.delta &&
        (Rat(3, 4) <= p.eps1 - p.delta || Rat(3, 4) >= p.eps1 + p.delta)) {
        Window x(side, side, Boundary::Zero, 2, 0), y(side, side, Boundary::Zero, 2, 0);
        for (int yy = 0; yy < side; ++yy)
            for (int xx = 0; xx < side; ++xx) {
                int px = xx - c, py = yy - c;  // center at the origin
                bool ox = ((px % 2) + 2) % 2 == 1, oy = ((py % 2) + 2) % 2 == 1;
                if (ox && oy) x.set(xx, yy, 1);
                if (ox || oy) y.set(xx, yy, 1);
            }
        if (eval_center(x) == 1 && eval_center(y) == 0) return std::make_pair(x, y);
    }

    // randomized fallback: sparse sample inside the trigger band, denser superset
    for (uint64_t t = 0; t < 2000; ++t) {
        Window x(side, side, Boundary::Zero, 2, 0), y(side, side, Boundary::Zero, 2, 0);
        for (int yy = 0; yy < side; ++yy)
            for (int xx = 0; xx < side; ++xx) {
                uint64_t h1 = cell_hash(11, xx, yy, t);
                bool base = bernoulli_hash(h1, p.eps1);
                bool extra = bernoulli_hash(cell_hash(13, xx, yy, t), p.eps2);
                if (!(xx == c && yy == c)) {
                    if (base) x.set(xx, yy, 1);
                    if (base || extra) y.set(xx, yy, 1);
                }
            }
        if (eval_center(x) == 1 && eval_center(y) == 0) return std::make_pair(x, y);
    }
    return std::nullopt;
}

TwoPhaseParams exploration_params(int n_block, Rat eps) {
    require(Rat(0) < eps && eps < Rat(2), Err::InvalidArgument, "eps must lie in (0, 2)");
    TwoPhaseParams p;
    p.n_block = n_block;
    p.eps2 = eps / Rat(2);
    p.eps1 = p.eps2 / Rat(2);
    p.delta = p.eps2 / Rat(4);
    p.validate();
    return p;
}

}  // namespace fca
