#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "fca/rational.hpp"
#include "fca/rules.hpp"
#include "fca/window.hpp"

namespace fca {

// Parameters of the density-modification / growth composite automaton.
struct TwoPhaseParams {
    int n_block = 4;  // block side N
    Rat eps1 = Rat(1, 4);
    Rat eps2 = Rat(1, 2);
    Rat delta = Rat(1, 8);

    void validate() const;
    int radius_gprime() const { return 4 * n_block; }
    int radius_g() const { return 5 * n_block - 1; }
    int radius_h() const { return 2 * n_block - 1; }
    int radius_f() const { return radius_g() + radius_h(); }
};

// Density trigger: fires where no N-square of 1s is in scan range and the
// local 1-density sits strictly inside (eps1 - delta, eps1 + delta).
RuleKernel gprime_kernel(const TwoPhaseParams& p);
// Density modification: freezing closure of gprime batches.
RuleKernel g_kernel(const TwoPhaseParams& p);
// Block growth process (the percolation phase).
RuleKernel h_kernel(const TwoPhaseParams& p);
// The composite f = h after g.
RuleKernel f_kernel(const TwoPhaseParams& p);

// Block-resolution views of g(x): A marks blocks whose anchor stays 0,
// B marks blocks entirely filled by g(x). Coarse cell (a,b) reads fine
// (a*N, b*N); only cells whose dependence region fits the window are emitted.
struct CoarseField {
    int a0 = 0, b0 = 0;  // coarse coordinates of cell (0,0)
    Window cells;
};

CoarseField coarse_field_A(const Window& fine, const TwoPhaseParams& p);
CoarseField coarse_field_B(const Window& fine, const TwoPhaseParams& p);

struct FieldSpecPair {
    struct Box {
        int64_t block, lo, hi;
    } a, b;
};

// Declared dependence geometry of the two coarse fields (exact boxes).
FieldSpecPair coarse_field_specs(const TwoPhaseParams& p);

struct IdempotenceReport {
    int64_t samples = 0;
    int64_t checks = 0;     // (sample, n) pairs compared
    int64_t failures = 0;
    std::optional<IntVec2> first_bad_cell;
};

// Checks g(h^n(g(x))) == h^n(g(x)) cell-exactly on exact interiors.
IdempotenceReport verify_idempotence(const TwoPhaseParams& p, int64_t trials, int window_side,
                                     int max_n, std::span<const Rat> ps, uint64_t seed,
                                     int threads = 1);

struct PathClaimsReport {
    int64_t samples = 0;
    int64_t a_checked = 0, a_failures = 0;  // growth blocked along a 1-path of A
    int64_t b_checked = 0, b_failures = 0;  // fill-in within the path bound of B
};

struct PathClaimCheck {
    bool a_checked = false, a_ok = true;
    bool b_checked = false, b_ok = true;
    int64_t b_bound = -1;
    int a_origin = 0, b_origin = 0;  // coarse coordinates of the probed block
};

PathClaimCheck check_path_claims_window(const Window& fine, const TwoPhaseParams& p);
PathClaimsReport verify_path_claims(const TwoPhaseParams& p, int64_t trials, int window_side,
                                    Rat p_blocked, Rat p_filling, uint64_t seed, int threads = 1);

// A comparable pair x <= y with f(x) = 1 and f(y) = 0 at the center,
// demonstrating non-monotonicity of the density clause.
std::optional<std::pair<Window, Window>> find_nonmonotone_witness(const TwoPhaseParams& p);

// Parameter solver for exploration scans: eps2 is pinned to eps/2 and the
// remaining knobs are backfilled to satisfy the ordering constraints.
TwoPhaseParams exploration_params(int n_block, Rat eps);

}  // namespace fca
