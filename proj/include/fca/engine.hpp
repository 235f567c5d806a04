#pragma once

#include <optional>
#include <utility>

#include "fca/rules.hpp"
#include "fca/window.hpp"

namespace fca {

struct RunReport {
    int64_t steps_taken = 0;  // steps that changed at least one cell
    bool fixed = false;
    std::vector<int64_t> changed_cells_per_step;  // includes the terminal zero when fixed
};

// One synchronous update. Dispatches to the word-parallel path for binary
// family rules, a bulk evaluator when the kernel ships one, and the generic
// scalar path otherwise.
Window step(const Window& w, const RuleKernel& k);

// Forced paths, exposed so equivalence tests can pit them against each other.
Window step_scalar(const Window& w, const RuleKernel& k);
Window step_bits(const Window& w, const RuleKernel& k);

std::pair<Window, RunReport> run_until_fixed(Window w, const RuleKernel& k, int64_t horizon);

// Least t at which the window center holds the maximal state.
std::optional<int64_t> origin_fixation_time(const Window& w, const RuleKernel& k, int64_t horizon);

// Exact infinite-lattice check: the configuration that is 0 exactly on
// zero_cells and 1 elsewhere is a fixed point of the family rule.
bool check_fixed_point_family(const std::vector<IntVec2>& zero_cells, const NeighborFamily& e);

}  // namespace fca
