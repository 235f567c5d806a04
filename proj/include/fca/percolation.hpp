#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fca/rational.hpp"
#include "fca/rules.hpp"
#include "fca/window.hpp"

namespace fca {

struct BernoulliSpec {
    Rat p;
    uint64_t seed = 0;
};

// i.i.d. cells with P(1) = p, keyed by (seed, x, y, trial): windows of
// different sizes agree on overlapping cells, and thresholding the same
// hashes at increasing p is monotone by construction (coupled sampling).
Window sample_window(const BernoulliSpec& spec, int w, int h, uint64_t trial = 0,
                     Boundary b = Boundary::Periodic);

// Is there a path origin -> top row moving (0,1)/(1,1) over symbol cells?
bool directed_crossing(const Window& w, uint8_t symbol, IntVec2 origin);

// Longest such path measured in cells; nullopt when it reaches the top row
// (unbounded at this truncation). 0 when the origin is not on the symbol.
std::optional<int64_t> koenig_bound(const Window& w, uint8_t symbol, IntVec2 origin);

struct ScanRow {
    Rat p;
    int64_t trials = 0;
    int64_t successes = 0;
    double estimate = 0, ci_low = 0, ci_high = 0;
};

struct ScanMeta {
    int width = 0, height = 0;
    int64_t horizon = 0;
    std::string boundary;
    uint64_t seed = 0;
    std::string caveat;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    ScanMeta meta;
};

// 95% Wilson score interval.
std::pair<double, double> wilson_interval(int64_t successes, int64_t trials);

// Monte Carlo estimate of the crossing probability from origin (0,0).
ScanRow survival_estimate(uint8_t symbol, Rat p, int w, int h, int64_t trials, uint64_t seed,
                          int threads = 1);

// Fraction of trials whose central max(radius, width/8) square is entirely
// maximal at the horizon; periodic boundary enforced.
ScanResult fixation_scan(const RuleKernel& k, std::span<const Rat> p_grid, int w, int h,
                         int64_t horizon, int64_t trials, uint64_t seed, int threads = 1);

// Declared rectangular dependence of a block map: output cell (a,b) reads fine
// cells (a,b)*block + [lo,hi]^2 (per axis). Returns the least k such that
// outputs farther than k apart in infinity norm have disjoint reads.
struct FieldSpec {
    int64_t block = 1;
    int64_t lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
};

int64_t dependence_radius(const FieldSpec& f);

// 2 exp(-2 eps^2 n): bound on P(|sample mean - p| > eps) over n trials.
double hoeffding_bound(int64_t n, Rat eps);

}  // namespace fca
