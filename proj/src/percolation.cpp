#include "fca/percolation.hpp"

#include <atomic>
#include <cmath>

#include "fca/engine.hpp"
#include "fca/rng.hpp"

namespace fca {

Window sample_window(const BernoulliSpec& spec, int w, int h, uint64_t trial, Boundary b) {
    Window win(w, h, b, 2, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (bernoulli_hash(cell_hash(spec.seed, x, y, trial), spec.p)) win.set(x, y, 1);
    return win;
}

bool directed_crossing(const Window& w, uint8_t symbol, IntVec2 origin) {
    require(origin.x >= 0 && origin.x < w.width() && origin.y >= 0 && origin.y < w.height(),
            Err::InvalidArgument, "origin outside window");
    int W = w.width(), H = w.height();
    std::vector<uint8_t> reach(static_cast<size_t>(W), 0);
    // sweep from the top row down to the origin row
    for (int y = H - 1; y >= static_cast<int>(origin.y); --y) {
        std::vector<uint8_t> cur(static_cast<size_t>(W), 0);
        for (int x = 0; x < W; ++x) {
            if (w.get(x, y) != symbol) continue;
            if (y == H - 1)
                cur[x] = 1;
            else
                cur[x] = reach[x] || (x + 1 < W && reach[x + 1]);
        }
        reach.swap(cur);
    }
    return reach[origin.x] != 0;
}

std::optional<int64_t> koenig_bound(const Window& w, uint8_t symbol, IntVec2 origin) {
    require(origin.x >= 0 && origin.x < w.width() && origin.y >= 0 && origin.y < w.height(),
            Err::InvalidArgument, "origin outside window");
    int W = w.width(), H = w.height();
    constexpr int64_t kInf = -1;
    std::vector<int64_t> len(static_cast<size_t>(W), 0);
    for (int y = H - 1; y >= static_cast<int>(origin.y); --y) {
        std::vector<int64_t> cur(static_cast<size_t>(W), 0);
        for (int x = 0; x < W; ++x) {
            if (w.get(x, y) != symbol) {
                cur[x] = 0;
                continue;
            }
            if (y == H - 1) {
                cur[x] = kInf;  // touches the top row: unbounded at this truncation
                continue;
            }
            int64_t up = len[x];
            int64_t diag = (x + 1 < W) ? len[x + 1] : 0;
            if (up == kInf || diag == kInf)
                cur[x] = kInf;
            else
                cur[x] = 1 + std::max(up, diag);
        }
        len.swap(cur);
    }
    int64_t v = len[origin.x];
    if (v == kInf) return std::nullopt;
    return v;
}

std::pair<double, double> wilson_interval(int64_t successes, int64_t trials) {
    if (trials <= 0) return {0.0, 1.0};
    double z = 1.959963984540054;  // 95%
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    double lo = std::max(0.0, center - half);
    double hi = std::min(1.0, center + half);
    return {lo, hi};
}

namespace {

ScanRow finish_row(Rat p, int64_t trials, int64_t successes) {
    ScanRow row;
    row.p = p;
    row.trials = trials;
    row.successes = successes;
    row.estimate = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    auto ci = wilson_interval(successes, trials);
    row.ci_low = ci.first;
    row.ci_high = ci.second;
    return row;
}

}  // namespace

ScanRow survival_estimate(uint8_t symbol, Rat p, int w, int h, int64_t trials, uint64_t seed,
                          int threads) {
    require(trials >= 1, Err::InvalidArgument, "need at least one trial");
    std::atomic<int64_t> total{0};
    parallel_for(trials, threads, [&](int64_t lo, int64_t hi) {
        int64_t hits = 0;
        for (int64_t t = lo; t < hi; ++t) {
            Window win = sample_window({p, seed}, w, h, static_cast<uint64_t>(t));
            if (directed_crossing(win, symbol, {0, 0})) ++hits;
        }
        total.fetch_add(hits, std::memory_order_relaxed);
    });
    return finish_row(p, trials, total.load());
}

ScanResult fixation_scan(const RuleKernel& k, std::span<const Rat> p_grid, int w, int h,
                         int64_t horizon, int64_t trials, uint64_t seed, int threads) {
    require(trials >= 1, Err::InvalidArgument, "need at least one trial");
    int side = std::max(k.radius, w / 8);
    side = std::max(1, std::min(side, std::min(w, h)));
    int x0 = (w - side) / 2, y0 = (h - side) / 2;

    size_t np = p_grid.size();
    std::vector<std::atomic<int64_t>> hits(np);
    for (auto& a : hits) a.store(0);

    parallel_for(trials, threads, [&](int64_t lo, int64_t hi) {
        for (int64_t t = lo; t < hi; ++t) {
            for (size_t pi = 0; pi < np; ++pi) {
                Window win = sample_window({p_grid[pi], seed}, w, h, static_cast<uint64_t>(t),
                                           Boundary::Periodic);
                auto [fin, rep] = run_until_fixed(std::move(win), k, horizon);
                bool all_max = true;
                for (int y = y0; y < y0 + side && all_max; ++y)
                    for (int x = x0; x < x0 + side; ++x)
                        if (fin.get(x, y) != k.max_state) {
                            all_max = false;
                            break;
                        }
                if (all_max) hits[pi].fetch_add(1, std::memory_order_relaxed);
            }
        }
    });

    ScanResult out;
    out.meta = {w, h, horizon, "periodic", seed,
                "finite window and horizon; fixation fractions are truncation proxies"};
    for (size_t pi = 0; pi < np; ++pi)
        out.rows.push_back(finish_row(p_grid[pi], trials, hits[pi].load()));
    return out;
}

int64_t dependence_radius(const FieldSpec& f) {
    require(f.block >= 1, Err::InvalidArgument, "block size must be positive");
    require(f.hi_x >= f.lo_x && f.hi_y >= f.lo_y, Err::InvalidArgument, "empty dependence box");
    int64_t kx = (f.hi_x - f.lo_x) / f.block;
    int64_t ky = (f.hi_y - f.lo_y) / f.block;
    return std::max(kx, ky);
}

double hoeffding_bound(int64_t n, Rat eps) {
    require(n >= 1, Err::InvalidArgument, "sample count must be positive");
    require(eps > Rat(0), Err::InvalidArgument, "deviation must be positive");
    double e = eps.to_double();
    return 2.0 * std::exp(-2.0 * e * e * static_cast<double>(n));
}

}  // namespace fca
