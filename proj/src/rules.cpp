#include "fca/rules.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_set>

#include "fca/rng.hpp"

namespace fca {

NeighborSet NeighborSet::of(std::vector<IntVec2> cells) {
    require(!cells.empty(), Err::EmptySetMeansConstant, "empty neighbor set would force a constant rule");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (const IntVec2& c : cells)
        require(!c.is_zero(), Err::OriginInNeighborSet, "neighbor set contains the origin");
    NeighborSet s;
    s.cells = std::move(cells);
    return s;
}

int64_t NeighborSet::radius() const {
    int64_t r = 0;
    for (const IntVec2& c : cells) r = std::max(r, c.norm_linf());
    return r;
}

bool NeighborSet::contains(IntVec2 v) const {
    return std::binary_search(cells.begin(), cells.end(), v);
}

bool NeighborSet::subset_of(const NeighborSet& other) const {
    return std::includes(other.cells.begin(), other.cells.end(), cells.begin(), cells.end());
}

std::string NeighborSet::str() const {
    std::string s = "{";
    for (size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i].str();
    return s + "}";
}

int64_t NeighborFamily::radius() const {
    int64_t r = 0;
    for (const NeighborSet& s : sets) r = std::max(r, s.radius());
    return r;
}

std::string NeighborFamily::str() const {
    std::string s = "{";
    for (size_t i = 0; i < sets.size(); ++i) s += (i ? "," : "") + sets[i].str();
    return s + "}";
}

NeighborFamily canonicalize_family(std::vector<NeighborSet> raw) {
    for (NeighborSet& s : raw) s = NeighborSet::of(s.cells);  // re-validates
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

    NeighborFamily fam;
    for (size_t i = 0; i < raw.size(); ++i) {
        bool has_proper_subset = false;
        for (size_t j = 0; j < raw.size() && !has_proper_subset; ++j)
            if (j != i && raw[j].subset_of(raw[i])) has_proper_subset = true;
        if (!has_proper_subset) fam.sets.push_back(raw[i]);
    }
    return fam;
}

FGSplit split_fg(const NeighborFamily& e) {
    FGSplit out;
    for (const NeighborSet& s : e.sets) {
        if (hull_contains_origin(convex_hull(s.cells)))
            out.g_sets.sets.push_back(s);
        else
            out.f_sets.sets.push_back(s);
    }
    return out;
}

RuleKernel rule_from_family(const NeighborFamily& e) {
    RuleKernel k;
    k.name = "family" + e.str();
    k.radius = static_cast<int>(e.radius());
    k.alphabet_size = 2;
    k.max_state = 1;
    k.family = e;
    NeighborFamily fam = e;
    k.cell = [fam](const PaddedView& v, int x, int y) -> uint8_t {
        if (v.at(x, y)) return 1;
        for (const NeighborSet& s : fam.sets) {
            bool all = true;
            for (const IntVec2& c : s.cells) {
                if (!v.at(x + static_cast<int>(c.x), y + static_cast<int>(c.y))) {
                    all = false;
                    break;
                }
            }
            if (all) return 1;
        }
        return 0;
    };
    return k;
}

namespace {

// Evaluates a kernel on a standalone patch buffer (row-major, side 2r+1),
// returning the new center state.
uint8_t eval_patch(const RuleKernel& k, const std::vector<uint8_t>& patch) {
    int side = 2 * k.radius + 1;
    assert(static_cast<int>(patch.size()) == side * side);
    PaddedView v;
    v.origin = patch.data() + static_cast<ptrdiff_t>(k.radius) * side + k.radius;
    v.stride = side;
    v.w = 1;
    v.h = 1;
    v.pad = k.radius;
    return k.cell(v, 0, 0);
}

std::vector<uint8_t> random_patch(const RuleKernel& k, uint64_t seed, int64_t trial) {
    int side = 2 * k.radius + 1;
    std::vector<uint8_t> patch(static_cast<size_t>(side) * side);
    if (k.alphabet_size == 2) {
        // sweep the density per trial so density-sensitive clauses get exercised
        Rat density(static_cast<int64_t>(mix64(seed * 0x51ed ^ trial) % 9) + 1, 10);
        for (size_t i = 0; i < patch.size(); ++i)
            patch[i] = bernoulli_hash(cell_hash(seed, static_cast<int64_t>(i), 0, trial), density);
        return patch;
    }
    for (size_t i = 0; i < patch.size(); ++i)
        patch[i] = static_cast<uint8_t>(cell_hash(seed, static_cast<int64_t>(i), 0, trial) % k.alphabet_size);
    return patch;
}

// Freezing violation: output must be the old state or the maximal one under
// the flat order with top (for binary this is just "no 1 -> 0").
bool freezing_ok(const RuleKernel& k, uint8_t before, uint8_t after) {
    if (k.alphabet_size == 2) return !(before == 1 && after == 0);
    return after == before || after == k.max_state;
}

}  // namespace

CheckResult is_freezing(const RuleKernel& k, const CheckMode& mode) {
    int side = 2 * k.radius + 1;
    int cells = side * side;
    if (mode.exhaustive) {
        double patches = std::pow(static_cast<double>(k.alphabet_size), cells);
        require(patches <= 33554432.0, Err::InvalidArgument, "patch space too large for exhaustive check");
        require(k.alphabet_size == 2, Err::InvalidArgument, "exhaustive freezing check is binary-only");
        std::vector<uint8_t> patch(cells);
        int center = (cells - 1) / 2;
        for (uint64_t mask = 0; mask < (1ull << cells); ++mask) {
            for (int i = 0; i < cells; ++i) patch[i] = (mask >> i) & 1;
            if (!freezing_ok(k, patch[center], eval_patch(k, patch))) return {false, patch};
        }
        return {true, {}};
    }
    int center = (cells - 1) / 2;
    for (int64_t t = 0; t < mode.trials; ++t) {
        std::vector<uint8_t> patch = random_patch(k, mode.seed, t);
        if (!freezing_ok(k, patch[center], eval_patch(k, patch))) return {false, patch};
    }
    return {true, {}};
}

CheckResult is_monotone(const RuleKernel& k, const CheckMode& mode) {
    require(k.alphabet_size == 2, Err::InvalidArgument, "monotonicity check is binary-only");
    int side = 2 * k.radius + 1;
    int cells = side * side;
    if (mode.exhaustive) {
        require(cells <= 25, Err::InvalidArgument, "patch space too large for exhaustive check");
        std::vector<uint8_t> lo(cells), hi(cells);
        for (uint64_t mask = 0; mask < (1ull << cells); ++mask) {
            for (int i = 0; i < cells; ++i) lo[i] = (mask >> i) & 1;
            uint8_t out_lo = eval_patch(k, lo);
            for (int c = 0; c < cells; ++c) {
                if (lo[c]) continue;
                hi = lo;
                hi[c] = 1;
                if (out_lo > eval_patch(k, hi)) {
                    std::vector<uint8_t> wit = lo;
                    wit.insert(wit.end(), hi.begin(), hi.end());
                    return {false, wit};
                }
            }
        }
        return {true, {}};
    }
    for (int64_t t = 0; t < mode.trials; ++t) {
        std::vector<uint8_t> lo = random_patch(k, mode.seed, 2 * t);
        std::vector<uint8_t> hi = lo;
        for (size_t i = 0; i < hi.size(); ++i)
            if (cell_hash(mode.seed ^ 0xabcdef, static_cast<int64_t>(i), 1, t) & 1) hi[i] = std::max(hi[i], uint8_t(1));
        if (eval_patch(k, lo) > eval_patch(k, hi)) {
            std::vector<uint8_t> wit = lo;
            wit.insert(wit.end(), hi.begin(), hi.end());
            return {false, wit};
        }
    }
    return {true, {}};
}

namespace {

// Oracle view of a binary freezing monotone kernel as a monotone boolean
// function over the non-center patch cells (center fixed to 0).
struct GrowthOracle {
    const RuleKernel* k;
    std::vector<IntVec2> universe;  // patch cells except origin
    int side;
    mutable std::vector<uint8_t> patch;

    explicit GrowthOracle(const RuleKernel& kernel) : k(&kernel), side(2 * kernel.radius + 1) {
        for (int dy = -kernel.radius; dy <= kernel.radius; ++dy)
            for (int dx = -kernel.radius; dx <= kernel.radius; ++dx)
                if (dx || dy) universe.push_back({dx, dy});
        patch.assign(static_cast<size_t>(side) * side, 0);
    }

    bool flips(uint32_t mask) const {
        std::fill(patch.begin(), patch.end(), 0);
        for (size_t i = 0; i < universe.size(); ++i) {
            if (mask & (1u << i)) {
                const IntVec2& c = universe[i];
                patch[(c.y + k->radius) * side + (c.x + k->radius)] = 1;
            }
        }
        return eval_patch(*k, patch) == 1;
    }
};

// Greedy minimality: drop every droppable element of a true set.
uint32_t peel(const GrowthOracle& f, uint32_t set) {
    for (uint32_t bit = 1; bit && bit <= set; bit <<= 1) {
        if (!(set & bit)) continue;
        if (f.flips(set & ~bit)) set &= ~bit;
    }
    return set;
}

// All minimal true sets by exclusion branching: peel one minimal set, then
// recurse with each of its elements forced out. Any other minimal set avoids
// at least one element of every set found so far, so this is exhaustive.
std::vector<uint32_t> minimal_true_sets(const GrowthOracle& f, uint32_t universe) {
    std::vector<uint32_t> out;
    std::unordered_set<uint32_t> seen_excl, seen_min;
    std::vector<uint32_t> stack{0};
    seen_excl.insert(0);
    while (!stack.empty()) {
        uint32_t excl = stack.back();
        stack.pop_back();
        uint32_t avail = universe & ~excl;
        if (!f.flips(avail)) continue;
        uint32_t m = peel(f, avail);
        if (seen_min.insert(m).second) out.push_back(m);
        for (uint32_t bit = 1; bit && bit <= m; bit <<= 1) {
            if (!(m & bit)) continue;
            uint32_t next = excl | bit;
            if (seen_excl.insert(next).second) stack.push_back(next);
        }
    }
    return out;
}

}  // namespace

NeighborFamily family_from_rule(const RuleKernel& k, const CheckMode& validation) {
    require(k.alphabet_size == 2, Err::InvalidArgument, "family extraction is binary-only");
    require(k.radius <= 2, Err::RadiusTooLarge, "family extraction supports radius <= 2");

    CheckResult fr = is_freezing(k, validation);
    CheckResult mo = is_monotone(k, validation);
    require(fr.ok && mo.ok, Err::NotMonotoneFreezing, "kernel is not freezing and monotone");

    GrowthOracle oracle(k);
    require(!oracle.flips(0), Err::EmptySetMeansConstant,
            "kernel grows on the empty context; no neighbor family represents it");

    uint32_t all = oracle.universe.size() >= 32 ? 0xffffffffu : ((1u << oracle.universe.size()) - 1);
    std::vector<uint32_t> minimal = minimal_true_sets(oracle, all);

    std::vector<NeighborSet> sets;
    for (uint32_t m : minimal) {
        std::vector<IntVec2> cells;
        for (size_t i = 0; i < oracle.universe.size(); ++i)
            if (m & (1u << i)) cells.push_back(oracle.universe[i]);
        sets.push_back(NeighborSet::of(std::move(cells)));
    }
    NeighborFamily fam;
    fam.sets = std::move(sets);
    std::sort(fam.sets.begin(), fam.sets.end());
    return fam;
}

}  // namespace fca
