#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fca/geometry.hpp"
#include "fca/vec.hpp"

namespace fca {

// Finite origin-free set of relative cells whose joint occupation triggers growth.
struct NeighborSet {
    std::vector<IntVec2> cells;  // sorted, unique

    static NeighborSet of(std::vector<IntVec2> cells);
    int64_t radius() const;
    bool contains(IntVec2 v) const;

    friend bool operator==(const NeighborSet& a, const NeighborSet& b) { return a.cells == b.cells; }
    friend bool operator<(const NeighborSet& a, const NeighborSet& b) { return a.cells < b.cells; }
    bool subset_of(const NeighborSet& other) const;
    std::string str() const;
};

// Antichain of neighbor sets; canonical form of a binary freezing monotone rule.
struct NeighborFamily {
    std::vector<NeighborSet> sets;  // sorted

    int64_t radius() const;
    std::string str() const;
    friend bool operator==(const NeighborFamily& a, const NeighborFamily& b) { return a.sets == b.sets; }
};

NeighborFamily canonicalize_family(std::vector<NeighborSet> raw);

struct FGSplit {
    NeighborFamily f_sets;  // origin outside the hull
    NeighborFamily g_sets;  // origin inside
};

FGSplit split_fg(const NeighborFamily& e);

// Read-only view into a padded state grid. Rules may read coordinates within
// their radius around any interior cell.
struct PaddedView {
    const uint8_t* origin = nullptr;  // cell (0,0) of the interior
    ptrdiff_t stride = 0;
    int w = 0, h = 0;
    int pad = 0;

    uint8_t at(int x, int y) const { return origin[static_cast<ptrdiff_t>(y) * stride + x]; }
};

using CellRule = std::function<uint8_t(const PaddedView&, int x, int y)>;
using WindowRule = std::function<void(const PaddedView&, uint8_t* out, ptrdiff_t out_stride)>;

// Uniform interface the engine steps: per-cell rule always present, optional
// bulk evaluator for rules whose naive per-cell cost is prohibitive, optional
// neighbor family enabling the bit-parallel binary path.
struct RuleKernel {
    std::string name;
    int radius = 0;
    uint8_t alphabet_size = 2;
    uint8_t max_state = 1;
    CellRule cell;
    WindowRule bulk;
    std::optional<NeighborFamily> family;
};

RuleKernel rule_from_family(const NeighborFamily& e);

struct CheckMode {
    bool exhaustive = false;
    int64_t trials = 100000;
    uint64_t seed = 1;
};

struct CheckResult {
    bool ok = true;
    std::vector<uint8_t> witness;  // offending patch (pair concatenated for monotonicity)
};

CheckResult is_freezing(const RuleKernel& k, const CheckMode& mode);
CheckResult is_monotone(const RuleKernel& k, const CheckMode& mode);

// Extracts the minimal growth sets of a binary freezing monotone kernel.
// Exhaustive over the patch lattice; radius above 2 is rejected.
NeighborFamily family_from_rule(const RuleKernel& k, const CheckMode& validation = CheckMode{false, 4096, 7});

}  // namespace fca
