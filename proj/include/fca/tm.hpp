#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fca/util.hpp"

namespace fca {

// Deterministic single-tape machine on a right semi-infinite tape.
struct TMSpec {
    struct Action {
        int write;  // symbol index
        char move;  // 'L' or 'R'
        int next;   // state index
    };

    std::vector<std::string> states;
    std::vector<std::string> symbols;  // tape alphabet, blank included
    int blank = 0;
    int initial = 0;
    int halt = 0;
    // key: state * |symbols| + symbol; missing key = undefined (machine stuck)
    std::map<int, Action> transitions;

    int state_id(const std::string& name) const;
    int symbol_id(const std::string& name) const;
    const Action* lookup(int state, int symbol) const;
    void validate() const;
};

// Appends a sweep state that walks right over non-blank cells and lands on
// the rightmost one before entering the halt state. Useful for machines whose
// natural halting position is not the right end of their tape.
TMSpec with_right_sweep(const TMSpec& tm);

struct TMDiagram {
    bool halted = false;
    int64_t steps = 0;       // rows - 1 when halted
    int width = 0;           // tape cells used (max of visited and non-blank extents)
    int halt_col = -1;
    // rows[t][c]: symbol index, or head marker encoded separately
    std::vector<std::vector<int>> tape_rows;
    std::vector<int> head_col;    // per row
    std::vector<int> head_state;  // per row
};

// Runs from the empty tape, recording the full space-time diagram.
TMDiagram simulate_diagram(const TMSpec& tm, int64_t step_budget);

}  // namespace fca
