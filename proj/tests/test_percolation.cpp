#include <doctest.h>

#include <cmath>

#include "fca/engine.hpp"
#include "fca/percolation.hpp"
#include "fca/rng.hpp"
#include "fca/twophase.hpp"

using namespace fca;

namespace {

// brute-force: enumerate all up/up-right paths from origin
bool brute_crossing(const Window& w, uint8_t symbol, IntVec2 origin) {
    if (w.get(static_cast<int>(origin.x), static_cast<int>(origin.y)) != symbol) return false;
    if (origin.y == w.height() - 1) return true;
    for (int64_t dx = 0; dx <= 1; ++dx) {
        IntVec2 next{origin.x + dx, origin.y + 1};
        if (next.x >= w.width()) continue;
        if (brute_crossing(w, symbol, next)) return true;
    }
    return false;
}

int64_t brute_longest(const Window& w, uint8_t symbol, IntVec2 origin, bool& hit_top) {
    if (origin.x >= w.width() || w.get(static_cast<int>(origin.x), static_cast<int>(origin.y)) != symbol)
        return 0;
    if (origin.y == w.height() - 1) {
        hit_top = true;
        return 1;
    }
    int64_t best = 0;
    for (int64_t dx = 0; dx <= 1; ++dx)
        best = std::max(best, brute_longest(w, symbol, {origin.x + dx, origin.y + 1}, hit_top));
    return 1 + best;
}

}  // namespace

TEST_CASE("bernoulli sampling: endpoints and density") {
    Window all1 = sample_window({Rat(1), 7}, 16, 16);
    CHECK(all1.all_state(1));
    Window all0 = sample_window({Rat(0), 7}, 16, 16);
    CHECK(all0.all_state(0));

    Window half = sample_window({Rat(1, 2), 12345}, 64, 64);
    double mean = static_cast<double>(half.count_state(1)) / (64.0 * 64.0);
    double sigma = 0.5 / 64.0;  // sd of the mean of 4096 fair bits
    CHECK(std::abs(mean - 0.5) <= 4 * sigma);

    // windows of different sizes agree on overlaps
    Window small = sample_window({Rat(1, 2), 12345}, 32, 32);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) REQUIRE(small.get(x, y) == half.get(x, y));
}

TEST_CASE("directed crossing: pinned examples") {
    Window w(3, 3, Boundary::Zero, 2, 0);
    for (auto [x, y] : {std::pair{0, 0}, {0, 1}, {1, 2}}) w.set(x, y, 1);
    CHECK(directed_crossing(w, 1, {0, 0}));

    Window all(4, 4, Boundary::Zero, 2, 1);
    CHECK(directed_crossing(all, 1, {0, 0}));
    CHECK(directed_crossing(all, 1, {3, 3}));

    Window blocked(4, 4, Boundary::Zero, 2, 1);
    for (int x = 0; x < 4; ++x) blocked.set(x, 3, 0);
    CHECK_FALSE(directed_crossing(blocked, 1, {0, 0}));
}

TEST_CASE("directed crossing matches brute-force enumeration") {
    SplitMix64 rng(4);
    for (int iter = 0; iter < 2000; ++iter) {
        int w = 2 + static_cast<int>(rng.below(4)), h = 2 + static_cast<int>(rng.below(4));
        Window win(w, h, Boundary::Zero, 2, 0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) win.set(x, y, rng.below(2));
        IntVec2 o{static_cast<int64_t>(rng.below(w)), 0};
        REQUIRE(directed_crossing(win, 1, o) == brute_crossing(win, 1, o));
        REQUIRE(directed_crossing(win, 0, o) == brute_crossing(win, 0, o));
    }
}

TEST_CASE("path bound: pinned examples and brute force") {
    Window w(5, 6, Boundary::Zero, 2, 1);  // ones everywhere
    CHECK_FALSE(koenig_bound(w, 1, {0, 0}).has_value());
    CHECK(koenig_bound(w, 0, {0, 0}) == 0);

    Window lone(5, 6, Boundary::Zero, 2, 1);
    lone.set(2, 0, 0);
    CHECK(koenig_bound(lone, 0, {2, 0}) == 1);

    Window diag(8, 8, Boundary::Zero, 2, 1);
    for (int i = 0; i < 5; ++i) diag.set(1 + i, i, 0);
    CHECK(koenig_bound(diag, 0, {1, 0}) == 5);

    SplitMix64 rng(14);
    for (int iter = 0; iter < 1500; ++iter) {
        int ww = 2 + static_cast<int>(rng.below(4)), hh = 2 + static_cast<int>(rng.below(4));
        Window win(ww, hh, Boundary::Zero, 2, 0);
        for (int y = 0; y < hh; ++y)
            for (int x = 0; x < ww; ++x) win.set(x, y, rng.below(2));
        IntVec2 o{static_cast<int64_t>(rng.below(ww)), 0};
        bool hit_top = false;
        int64_t expect = brute_longest(win, 1, o, hit_top);
        auto got = koenig_bound(win, 1, o);
        if (hit_top)
            REQUIRE_FALSE(got.has_value());
        else
            REQUIRE(got == expect);
    }
}

TEST_CASE("survival estimate against the exhaustive 4x4 oracle (reduced trials)") {
    for (Rat p : {Rat(3, 10), Rat(1, 2)}) {
        double pd = p.to_double();
        double exact = 0;
        for (uint32_t mask = 0; mask < (1u << 16); ++mask) {
            Window w(4, 4, Boundary::Zero, 2, 0);
            int ones = 0;
            for (int i = 0; i < 16; ++i)
                if (mask & (1u << i)) {
                    w.set(i % 4, i / 4, 1);
                    ++ones;
                }
            if (!directed_crossing(w, 1, {0, 0})) continue;
            exact += std::pow(pd, ones) * std::pow(1 - pd, 16 - ones);
        }
        int64_t trials = 20000;
        ScanRow row = survival_estimate(1, p, 4, 4, trials, 99, 2);
        double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(trials));
        CHECK(std::abs(row.estimate - exact) <= 4 * sigma + 1e-9);
        CHECK(row.ci_low <= row.estimate);
        CHECK(row.estimate <= row.ci_high);
    }
}

TEST_CASE("coupled sampling is exactly monotone in p") {
    std::vector<Rat> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(Rat(i, 10));
    for (uint64_t trial = 0; trial < 50; ++trial) {
        bool prev = false;
        for (const Rat& p : grid) {
            Window w = sample_window({p, 321}, 12, 12, trial);
            bool cross = directed_crossing(w, 1, {0, 0});
            if (prev) REQUIRE(cross);  // adding ones never destroys a crossing
            prev = cross;
        }
    }
}

TEST_CASE("path bound drops by exactly one per growth step") {
    NeighborFamily e = canonicalize_family({NeighborSet::of({{0, 1}, {1, 1}})});
    auto k = rule_from_family(e);
    SplitMix64 rng(10101);
    int done = 0;
    while (done < 200) {
        Window w(24, 24, Boundary::One, 2, 0);
        for (int y = 0; y < 24; ++y)
            for (int x = 0; x < 24; ++x) w.set(x, y, rng.below(10) < 6 ? 1 : 0);
        IntVec2 o{12, 4};
        auto b = koenig_bound(w, 0, o);
        if (!b.has_value() || *b == 0) continue;
        // keep clear of the top so the bound is exact for the window
        if (*b > 10) continue;
        ++done;
        Window next = step(w, k);
        auto b2 = koenig_bound(next, 0, o);
        REQUIRE(b2.has_value());
        REQUIRE(*b2 == *b - 1);
    }
}

TEST_CASE("hoeffding bound arithmetic") {
    double b = hoeffding_bound(100, Rat(1, 10));
    CHECK(b == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(hoeffding_bound(1, Rat(2)) <= 2.0 * std::exp(-2.0));
    CHECK_THROWS_AS(hoeffding_bound(0, Rat(1, 10)), Error);
}

TEST_CASE("empirical deviations stay under the bound (reduced trials)") {
    SplitMix64 rng(2);
    for (int64_t n : {25ll, 100ll}) {
        for (Rat eps : {Rat(1, 20), Rat(1, 10), Rat(1, 5)}) {
            int64_t trials = 4000, over = 0;
            double e = eps.to_double();
            for (int64_t t = 0; t < trials; ++t) {
                int64_t ones = 0;
                for (int64_t i = 0; i < n; ++i) ones += rng.below(2);
                double mean = static_cast<double>(ones) / static_cast<double>(n);
                if (std::abs(mean - 0.5) > e) ++over;
            }
            double freq = static_cast<double>(over) / static_cast<double>(trials);
            double bound = hoeffding_bound(n, eps);
            REQUIRE(freq <= bound + 3 * std::sqrt(bound * (1 - std::min(bound, 1.0)) / trials) + 0.02);
        }
    }
}

TEST_CASE("wilson interval brackets the estimate") {
    for (auto [s, n] : {std::pair<int64_t, int64_t>{0, 100}, {100, 100}, {3, 7}, {999, 1000}}) {
        auto [lo, hi] = wilson_interval(s, n);
        double est = static_cast<double>(s) / static_cast<double>(n);
        CHECK(lo <= est + 1e-12);
        CHECK(est <= hi + 1e-12);
        CHECK(lo >= 0.0);
        CHECK(hi <= 1.0);
    }
}

TEST_CASE("dependence radius") {
    CHECK(dependence_radius({1, 0, 0, 0, 0}) == 0);  // identity field
    for (int r : {1, 2, 5}) CHECK(dependence_radius({1, -r, r, -r, r}) == 2 * r);

    TwoPhaseParams p;
    auto specs = coarse_field_specs(p);
    CHECK(dependence_radius({specs.a.block, specs.a.lo, specs.a.hi, specs.a.lo, specs.a.hi}) == 9);
    CHECK(dependence_radius({specs.b.block, specs.b.lo, specs.b.hi, specs.b.lo, specs.b.hi}) == 10);
}
