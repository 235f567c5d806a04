#include <doctest.h>

#include "fca/io.hpp"
#include "fca/rng.hpp"

using namespace fca;

TEST_CASE("pbm round trip, both formats") {
    SplitMix64 rng(1);
    for (int iter = 0; iter < 50; ++iter) {
        int w = 1 + static_cast<int>(rng.below(40));
        int h = 1 + static_cast<int>(rng.below(20));
        Window win(w, h, Boundary::Zero, 2, 0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) win.set(x, y, rng.below(2));
        CHECK(from_pbm(to_pbm(win, false)) == win);
        CHECK(from_pbm(to_pbm(win, true)) == win);
    }
}

TEST_CASE("pbm layout: top row first") {
    Window win(2, 2, Boundary::Zero, 2, 0);
    win.set(0, 1, 1);  // top-left
    CHECK(to_pbm(win, false) == "P1\n2 2\n1 0\n0 0\n");
}

TEST_CASE("family json round trip and diagnostics") {
    std::string txt = R"({"neighbor_sets": [[[0,1],[1,1]], [[-1,0],[1,0]]]})";
    NeighborFamily e = family_from_json(txt);
    CHECK(e.sets.size() == 2);
    CHECK(family_from_json(family_to_json(e)) == e);

    CHECK_THROWS_AS(family_from_json("{"), Error);
    CHECK_THROWS_AS(family_from_json(R"({"neighbor_sets": [[[0,0]]]})"), Error);
}

TEST_CASE("machine json") {
    std::string txt = R"({
      "states": ["A", "B", "H"],
      "blank": "_",
      "transitions": [
        {"state": "A", "read": "_", "write": "1", "move": "R", "next": "B"},
        {"state": "B", "read": "_", "write": "1", "move": "L", "next": "H"}
      ],
      "initial": "A",
      "halt": "H"
    })";
    TMSpec tm = tm_from_json(txt);
    CHECK(tm.states.size() == 3);
    CHECK(tm.symbols.size() == 2);
    CHECK(tm.transitions.size() == 2);
    CHECK_THROWS_AS(tm_from_json("[]"), Error);
}

TEST_CASE("state grid json round trip") {
    SplitMix64 rng(3);
    Window win(5, 4, Boundary::Zero, 9, 0);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 5; ++x) win.set(x, y, static_cast<uint8_t>(rng.below(9)));
    std::vector<std::string> names;
    for (int i = 0; i < 9; ++i) names.push_back("s" + std::to_string(i));
    Window back = state_grid_from_json(state_grid_to_json(win, names));
    CHECK(back == win);
}

TEST_CASE("scan csv format") {
    ScanResult r;
    ScanRow row;
    row.p = Rat(1, 2);
    row.trials = 10;
    row.successes = 5;
    row.estimate = 0.5;
    row.ci_low = 0.2;
    row.ci_high = 0.8;
    r.rows.push_back(row);
    CHECK(scan_to_csv(r) == "p,trials,estimate,ci_low,ci_high\n1/2,10,0.500000,0.200000,0.800000\n");
}
