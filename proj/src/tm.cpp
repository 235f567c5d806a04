#include "fca/tm.hpp"

#include <algorithm>

namespace fca {

int TMSpec::state_id(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    require(it != states.end(), Err::ParseError, "unknown state: " + name);
    return static_cast<int>(it - states.begin());
}

int TMSpec::symbol_id(const std::string& name) const {
    auto it = std::find(symbols.begin(), symbols.end(), name);
    require(it != symbols.end(), Err::ParseError, "unknown symbol: " + name);
    return static_cast<int>(it - symbols.begin());
}

const TMSpec::Action* TMSpec::lookup(int state, int symbol) const {
    auto it = transitions.find(state * static_cast<int>(symbols.size()) + symbol);
    return it == transitions.end() ? nullptr : &it->second;
}

void TMSpec::validate() const {
    require(!states.empty() && !symbols.empty(), Err::InvalidArgument, "empty machine");
    require(blank >= 0 && blank < static_cast<int>(symbols.size()), Err::InvalidArgument, "bad blank");
    require(initial >= 0 && initial < static_cast<int>(states.size()), Err::InvalidArgument, "bad initial");
    require(halt >= 0 && halt < static_cast<int>(states.size()), Err::InvalidArgument, "bad halt");
    for (const auto& [key, act] : transitions) {
        require(act.move == 'L' || act.move == 'R', Err::InvalidArgument, "move must be L or R");
        require(act.write >= 0 && act.write < static_cast<int>(symbols.size()), Err::InvalidArgument,
                "bad write symbol");
        require(act.next >= 0 && act.next < static_cast<int>(states.size()), Err::InvalidArgument,
                "bad next state");
        require(key / static_cast<int>(symbols.size()) != halt, Err::InvalidArgument,
                "halt state must have no outgoing transitions");
    }
}

TMSpec with_right_sweep(const TMSpec& tm) {
    tm.validate();
    TMSpec out = tm;
    int sweep = static_cast<int>(out.states.size());
    int land = sweep + 1;
    out.states.push_back("__sweep");
    out.states.push_back("__land");
    int ns = static_cast<int>(out.symbols.size());

    // redirect transitions entering halt into the sweep state
    std::map<int, TMSpec::Action> redirected;
    for (auto [key, act] : out.transitions) {
        if (act.next == out.halt) act.next = sweep;
        redirected[key] = act;
    }
    out.transitions = std::move(redirected);

    // walk right over non-blanks, bounce once on the first blank, and halt
    // there: the halting cell is the rightmost column the head ever visits
    for (int s = 0; s < ns; ++s) {
        if (s == out.blank)
            out.transitions[sweep * ns + s] = {s, 'L', land};
        else
            out.transitions[sweep * ns + s] = {s, 'R', sweep};
        out.transitions[land * ns + s] = {s, 'R', out.halt};
    }
    return out;
}

TMDiagram simulate_diagram(const TMSpec& tm, int64_t step_budget) {
    tm.validate();
    TMDiagram d;
    std::vector<int> tape(1, tm.blank);
    int head = 0, state = tm.initial;
    int max_col = 0;

    auto record = [&]() {
        d.tape_rows.push_back(tape);
        d.head_col.push_back(head);
        d.head_state.push_back(state);
    };
    record();

    for (int64_t t = 0; t < step_budget; ++t) {
        if (state == tm.halt) break;
        const TMSpec::Action* act = tm.lookup(state, tape[head]);
        require(act != nullptr, Err::InvalidArgument,
                "machine has no transition for state " + tm.states[state] + " reading " +
                    tm.symbols[tape[head]]);
        tape[head] = act->write;
        if (act->move == 'R') {
            ++head;
            if (head >= static_cast<int>(tape.size())) tape.push_back(tm.blank);
        } else {
            require(head > 0, Err::InvalidArgument,
                    "machine moved left off the tape; not supported by the frame encoding");
            --head;
        }
        max_col = std::max(max_col, head);
        state = act->next;
        record();
        ++d.steps;
    }

    d.halted = (state == tm.halt);
    if (!d.halted) return d;

    for (const auto& row : d.tape_rows)
        for (int c = 0; c < static_cast<int>(row.size()); ++c)
            if (row[c] != tm.blank) max_col = std::max(max_col, c);
    d.width = max_col + 1;
    d.halt_col = d.head_col.back();

    for (auto& row : d.tape_rows) row.resize(d.width, tm.blank);
    return d;
}

}  // namespace fca
