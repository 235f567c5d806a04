#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "fca/rules.hpp"
#include "fca/tm.hpp"
#include "fca/window.hpp"

namespace fca {

// State set of the machine-checking automaton: machine tiles (plain symbols
// and head pairs), eight border direction states, and the maximal state M.
struct FTAlphabet {
    int n_symbols = 0;
    int n_states = 0;

    uint8_t plain(int sym) const { return static_cast<uint8_t>(sym); }
    uint8_t head(int state, int sym) const {
        return static_cast<uint8_t>(n_symbols + state * n_symbols + sym);
    }
    bool is_plain(uint8_t v) const { return v < n_symbols; }
    bool is_head(uint8_t v) const { return v >= n_symbols && v < d_base(); }
    int head_state(uint8_t v) const { return (v - n_symbols) / n_symbols; }
    int head_symbol(uint8_t v) const { return (v - n_symbols) % n_symbols; }

    int d_base() const { return n_symbols + n_states * n_symbols; }
    // order: N, NE, E, SE, S, SW, W, NW
    enum Dir { DN = 0, DNE, DE, DSE, DS, DSW, DW, DNW };
    uint8_t d(Dir which) const { return static_cast<uint8_t>(d_base() + which); }
    bool is_d(uint8_t v) const { return v >= d_base() && v < d_base() + 8; }

    uint8_t m() const { return static_cast<uint8_t>(d_base() + 8); }
    int size() const { return d_base() + 9; }

    std::vector<std::string> names(const TMSpec& tm) const;
};

inline uint32_t pack_quad(uint8_t bl, uint8_t br, uint8_t tl, uint8_t tr) {
    return static_cast<uint32_t>(bl) | (static_cast<uint32_t>(br) << 8) |
           (static_cast<uint32_t>(tl) << 16) | (static_cast<uint32_t>(tr) << 24);
}

struct CompiledFT {
    TMSpec tm;
    FTAlphabet alphabet;
    std::shared_ptr<const std::unordered_set<uint32_t>> valid2x2;
    RuleKernel kernel;  // radius 1, alphabet Q_F

    bool quad_valid(uint8_t bl, uint8_t br, uint8_t tl, uint8_t tr) const {
        return valid2x2->count(pack_quad(bl, br, tl, tr)) != 0;
    }
    // new state under the three-clause dynamics, given the 3x3 patch (y up)
    uint8_t apply3x3(const uint8_t patch[9]) const;
};

CompiledFT compile_tm(const TMSpec& tm);

// Three-clause update on a raw 3x3 patch (row-major, y up, center at [4]).
uint8_t ft_apply3x3(const FTAlphabet& a, const std::unordered_set<uint32_t>& valid2x2,
                    const uint8_t patch[9]);

// The framed halting space-time diagram with a one-cell M border; fixed under
// the compiled dynamics in any context. Fails with BudgetExceeded when the
// machine does not halt within the budget.
Window halting_obstacle(const CompiledFT& ft, int64_t step_budget);

}  // namespace fca
