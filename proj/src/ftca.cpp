#include "fca/ftca.hpp"

#include <algorithm>
#include <cassert>

#include "fca/engine.hpp"
#include "fca/rng.hpp"

namespace fca {

std::vector<std::string> FTAlphabet::names(const TMSpec& tm) const {
    std::vector<std::string> out;
    for (int s = 0; s < n_symbols; ++s) out.push_back(tm.symbols[s]);
    for (int q = 0; q < n_states; ++q)
        for (int s = 0; s < n_symbols; ++s) out.push_back(tm.states[q] + "." + tm.symbols[s]);
    const char* dirs[8] = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};
    for (const char* d : dirs) out.push_back(d);
    out.push_back("M");
    return out;
}

namespace {

// Cardinal neighbors a state listens to for M propagation: direction states
// ignore the cardinals named in them, everything else listens on all four.
struct Actives {
    bool north, east, south, west;
};

Actives active_dirs(const FTAlphabet& a, uint8_t v) {
    if (!a.is_d(v)) return {true, true, true, true};
    switch (v - a.d_base()) {
        case FTAlphabet::DN: return {false, true, true, true};
        case FTAlphabet::DNE: return {false, false, true, true};
        case FTAlphabet::DE: return {true, false, true, true};
        case FTAlphabet::DSE: return {true, false, false, true};
        case FTAlphabet::DS: return {true, true, false, true};
        case FTAlphabet::DSW: return {true, true, false, false};
        case FTAlphabet::DW: return {true, true, true, false};
        case FTAlphabet::DNW: return {false, true, true, false};
    }
    return {true, true, true, true};
}

// All 2x2 windows of frames embedded in M, away from the interior: generated
// from parametric templates with a wildcard interior.
void add_structural(const FTAlphabet& A, std::unordered_set<uint32_t>& out) {
    constexpr uint8_t kWild = 255;
    for (int wi = 1; wi <= 5; ++wi) {
        for (int hi = 1; hi <= 5; ++hi) {
            int W = wi + 6, H = hi + 6;  // frame plus two rings of M
            std::vector<uint8_t> t(static_cast<size_t>(W) * H, A.m());
            auto at = [&](int x, int y) -> uint8_t& { return t[static_cast<size_t>(y) * W + x]; };
            int fx0 = 2, fy0 = 2, fx1 = 2 + wi + 1, fy1 = 2 + hi + 1;  // perimeter corners
            for (int x = fx0 + 1; x < fx1; ++x) {
                at(x, fy0) = A.d(FTAlphabet::DS);
                at(x, fy1) = A.d(FTAlphabet::DN);
            }
            for (int y = fy0 + 1; y < fy1; ++y) {
                at(fx0, y) = A.d(FTAlphabet::DW);
                at(fx1, y) = A.d(FTAlphabet::DE);
            }
            at(fx0, fy0) = A.d(FTAlphabet::DSW);
            at(fx1, fy0) = A.d(FTAlphabet::DSE);
            at(fx0, fy1) = A.d(FTAlphabet::DNW);
            at(fx1, fy1) = A.d(FTAlphabet::DNE);
            for (int y = fy0 + 1; y < fy1; ++y)
                for (int x = fx0 + 1; x < fx1; ++x) at(x, y) = kWild;

            for (int y = 0; y + 1 < H; ++y)
                for (int x = 0; x + 1 < W; ++x) {
                    uint8_t bl = at(x, y), br = at(x + 1, y), tl = at(x, y + 1), tr = at(x + 1, y + 1);
                    if (bl == kWild || br == kWild || tl == kWild || tr == kWild) continue;
                    out.insert(pack_quad(bl, br, tl, tr));
                }
        }
    }
}

void add_computation(const TMSpec& tm, const FTAlphabet& A, std::unordered_set<uint32_t>& out) {
    int ns = static_cast<int>(tm.symbols.size());
    int nq = static_cast<int>(tm.states.size());
    auto ins = [&](uint8_t bl, uint8_t br, uint8_t tl, uint8_t tr) {
        out.insert(pack_quad(bl, br, tl, tr));
    };

    std::vector<bool> r_in(nq, false), l_in(nq, false);
    for (const auto& [key, act] : tm.transitions)
        (act.move == 'R' ? r_in : l_in)[act.next] = true;

    uint8_t S = A.d(FTAlphabet::DS), N = A.d(FTAlphabet::DN), E = A.d(FTAlphabet::DE),
            W = A.d(FTAlphabet::DW), SW = A.d(FTAlphabet::DSW), SE = A.d(FTAlphabet::DSE),
            NW = A.d(FTAlphabet::DNW), NE = A.d(FTAlphabet::DNE);
    uint8_t q0T = A.head(tm.initial, tm.blank);
    uint8_t blankT = A.plain(tm.blank);

    // bottom interior row: initial head at the left, blank tape elsewhere
    ins(S, S, q0T, blankT);
    ins(S, S, blankT, blankT);
    ins(SW, S, W, q0T);
    ins(S, SE, blankT, E);
    ins(S, SE, q0T, E);  // one-column interior

    // interior rows against the side columns
    for (int s = 0; s < ns; ++s) {
        uint8_t ps = A.plain(s);
        ins(W, ps, W, ps);
        ins(ps, E, ps, E);
        for (int q = 0; q < nq; ++q) {
            if (l_in[q]) ins(W, ps, W, A.head(q, s));   // head arrives from the right
            if (r_in[q]) ins(ps, E, A.head(q, s), E);   // head arrives from the left
            const TMSpec::Action* act = tm.lookup(q, s);
            if (!act) continue;
            if (act->move == 'R') ins(W, A.head(q, s), W, A.plain(act->write));
            if (act->move == 'L') ins(A.head(q, s), E, A.plain(act->write), E);
        }
    }

    // top interior row: plain tape with the halt head in the corner
    for (int a = 0; a < ns; ++a) {
        uint8_t pa = A.plain(a);
        for (int b = 0; b < ns; ++b) ins(pa, A.plain(b), N, N);
        for (int s = 0; s < ns; ++s) ins(pa, A.head(tm.halt, s), N, N);
        ins(W, pa, NW, N);
    }
    for (int s = 0; s < ns; ++s) {
        ins(A.head(tm.halt, s), E, N, NE);
        ins(W, A.head(tm.halt, s), NW, N);  // one-column interior
    }

    // interior-interior windows of single-head diagrams
    for (int a = 0; a < ns; ++a) {
        for (int b = 0; b < ns; ++b) {
            uint8_t pa = A.plain(a), pb = A.plain(b);
            ins(pa, pb, pa, pb);
            for (int q = 0; q < nq; ++q) {
                if (r_in[q]) ins(pa, pb, A.head(q, a), pb);
                if (l_in[q]) ins(pa, pb, pa, A.head(q, b));
            }
        }
    }
    for (const auto& [key, act] : tm.transitions) {
        int q = key / ns, s = key % ns;
        uint8_t hd = A.head(q, s), wr = A.plain(act.write);
        for (int o = 0; o < ns; ++o) {
            uint8_t po = A.plain(o);
            if (act.move == 'R') {
                ins(hd, po, wr, A.head(act.next, o));  // step right within the window
                ins(po, hd, po, wr);                   // head leaves to the right
            } else {
                ins(po, hd, A.head(act.next, o), wr);  // step left within the window
                ins(hd, po, wr, po);                   // head leaves to the left
            }
        }
    }
}

}  // namespace

uint8_t ft_apply3x3(const FTAlphabet& A, const std::unordered_set<uint32_t>& valid,
                    const uint8_t patch[9]) {
    // patch indices: y*3+x with (1,1) the center, y up
    auto at = [&](int x, int y) { return patch[y * 3 + x]; };
    uint8_t c = at(1, 1);
    uint8_t M = A.m();
    if (c == M) return M;
    for (int wy = 0; wy < 2; ++wy)
        for (int wx = 0; wx < 2; ++wx)
            if (!valid.count(pack_quad(at(wx, wy), at(wx + 1, wy), at(wx, wy + 1), at(wx + 1, wy + 1))))
                return M;
    Actives a = active_dirs(A, c);
    if (a.north && at(1, 2) == M) return M;
    if (a.south && at(1, 0) == M) return M;
    if (a.east && at(2, 1) == M) return M;
    if (a.west && at(0, 1) == M) return M;
    return c;
}

uint8_t CompiledFT::apply3x3(const uint8_t patch[9]) const {
    return ft_apply3x3(alphabet, *valid2x2, patch);
}

CompiledFT compile_tm(const TMSpec& tm) {
    tm.validate();
    CompiledFT ft;
    ft.tm = tm;
    ft.alphabet.n_symbols = static_cast<int>(tm.symbols.size());
    ft.alphabet.n_states = static_cast<int>(tm.states.size());
    require(ft.alphabet.size() <= 256, Err::InvalidArgument, "alphabet too large for byte states");

    auto valid = std::make_shared<std::unordered_set<uint32_t>>();
    valid->insert(pack_quad(ft.alphabet.m(), ft.alphabet.m(), ft.alphabet.m(), ft.alphabet.m()));
    add_structural(ft.alphabet, *valid);
    add_computation(tm, ft.alphabet, *valid);
    ft.valid2x2 = valid;

    RuleKernel k;
    k.name = "machine-checker";
    k.radius = 1;
    k.alphabet_size = static_cast<uint8_t>(ft.alphabet.size());
    k.max_state = ft.alphabet.m();
    FTAlphabet A = ft.alphabet;
    std::shared_ptr<const std::unordered_set<uint32_t>> vv = valid;
    k.cell = [A, vv](const PaddedView& v, int x, int y) -> uint8_t {
        uint8_t patch[9];
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) patch[(dy + 1) * 3 + (dx + 1)] = v.at(x + dx, y + dy);
        return ft_apply3x3(A, *vv, patch);
    };
    ft.kernel = k;
    return ft;
}

Window halting_obstacle(const CompiledFT& ft, int64_t step_budget) {
    TMDiagram d = simulate_diagram(ft.tm, step_budget);
    require(d.halted, Err::BudgetExceeded, "machine did not halt within the step budget");
    require(d.halt_col == d.width - 1, Err::InvalidArgument,
            "machine does not halt at the right end of its tape; wrap it with with_right_sweep");

    const FTAlphabet& A = ft.alphabet;
    int wi = d.width, hi = static_cast<int>(d.tape_rows.size());
    int W = wi + 4, H = hi + 4;  // perimeter plus one ring of M
    Window out(W, H, Boundary::One, static_cast<uint8_t>(A.size()), A.m());

    int fx0 = 1, fy0 = 1, fx1 = 1 + wi + 1, fy1 = 1 + hi + 1;
    for (int x = fx0 + 1; x < fx1; ++x) {
        out.set(x, fy0, A.d(FTAlphabet::DS));
        out.set(x, fy1, A.d(FTAlphabet::DN));
    }
    for (int y = fy0 + 1; y < fy1; ++y) {
        out.set(fx0, y, A.d(FTAlphabet::DW));
        out.set(fx1, y, A.d(FTAlphabet::DE));
    }
    out.set(fx0, fy0, A.d(FTAlphabet::DSW));
    out.set(fx1, fy0, A.d(FTAlphabet::DSE));
    out.set(fx0, fy1, A.d(FTAlphabet::DNW));
    out.set(fx1, fy1, A.d(FTAlphabet::DNE));

    for (int t = 0; t < hi; ++t)
        for (int c = 0; c < wi; ++c) {
            uint8_t v = (c == d.head_col[t]) ? A.head(d.head_state[t], d.tape_rows[t][c])
                                             : A.plain(d.tape_rows[t][c]);
            out.set(2 + c, 2 + t, v);
        }

    // the pattern must be inert in arbitrary surroundings
    RuleKernel k = ft.kernel;
    for (uint64_t ctx = 0; ctx < 3; ++ctx) {
        Window big(W + 8, H + 8, Boundary::One, static_cast<uint8_t>(A.size()), A.m());
        for (int y = 0; y < big.height(); ++y)
            for (int x = 0; x < big.width(); ++x)
                big.set(x, y, static_cast<uint8_t>(cell_hash(977, x, y, ctx) % A.size()));
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) big.set(4 + x, 4 + y, out.get(x, y));
        Window next = step(big, k);
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x)
                require(next.get(4 + x, 4 + y) == out.get(x, y), Err::ObstacleVerificationFailed,
                        "framed diagram changed under the dynamics");
    }
    return out;
}

}  // namespace fca
