#include "fca/engine.hpp"

#include <bit>
#include <cassert>
#include <cstring>
#include <unordered_set>

namespace fca {
namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

int64_t floor_div(int64_t a, int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

struct BitGrid {
    int w = 0, h = 0, wpr = 0;
    std::vector<uint64_t> bits;

    BitGrid(int width, int height) : w(width), h(height), wpr((width + 63) / 64), bits(static_cast<size_t>(wpr) * height, 0) {}

    uint64_t* row(int y) { return bits.data() + static_cast<size_t>(y) * wpr; }
    const uint64_t* row(int y) const { return bits.data() + static_cast<size_t>(y) * wpr; }

    uint64_t tail_mask() const {
        int r = w % 64;
        return r == 0 ? ~0ull : ((1ull << r) - 1);
    }
};

BitGrid pack(const Window& win) {
    BitGrid g(win.width(), win.height());
    for (int y = 0; y < win.height(); ++y) {
        uint64_t* r = g.row(y);
        for (int x = 0; x < win.width(); ++x)
            if (win.get(x, y)) r[x >> 6] |= 1ull << (x & 63);
    }
    return g;
}

// dst[x] = src[x + dx] with virtual positions outside [0, w) reading fill.
// src must already have its tail bits (>= w in the last word) set to fill.
void shift_row_fill(uint64_t* dst, const uint64_t* src, int wpr, int dx, bool fill) {
    uint64_t fill_word = fill ? ~0ull : 0ull;
    int64_t q = floor_div(dx, 64);
    int s = static_cast<int>(dx - 64 * q);
    auto in = [&](int64_t i) { return (i >= 0 && i < wpr) ? src[i] : fill_word; };
    for (int j = 0; j < wpr; ++j) {
        uint64_t lo = in(j + q);
        if (s == 0) {
            dst[j] = lo;
        } else {
            uint64_t hi = in(j + q + 1);
            dst[j] = (lo >> s) | (hi << (64 - s));
        }
    }
}

// dst[x] = src[(x + dx) mod w]; fast path for word-aligned widths.
void shift_row_periodic(uint64_t* dst, const uint64_t* src, int wpr, int w, int dx) {
    int r = mod(dx, w);
    if (w % 64 == 0) {
        int q = r >> 6, s = r & 63;
        for (int j = 0; j < wpr; ++j) {
            uint64_t lo = src[(j + q) % wpr];
            if (s == 0) {
                dst[j] = lo;
            } else {
                uint64_t hi = src[(j + q + 1) % wpr];
                dst[j] = (lo >> s) | (hi << (64 - s));
            }
        }
        return;
    }
    for (int j = 0; j < wpr; ++j) dst[j] = 0;
    for (int x = 0; x < w; ++x) {
        int sx = (x + r) % w;
        if ((src[sx >> 6] >> (sx & 63)) & 1) dst[x >> 6] |= 1ull << (x & 63);
    }
}

Window unpack(const BitGrid& g, const Window& like) {
    Window out(like.width(), like.height(), like.boundary(), like.alphabet_size());
    out.set_exact_margin(like.exact_margin());
    for (int y = 0; y < g.h; ++y) {
        const uint64_t* r = g.row(y);
        for (int x = 0; x < g.w; ++x) out.set(x, y, (r[x >> 6] >> (x & 63)) & 1);
    }
    return out;
}

void bump_margin(Window& w, int radius) {
    if (w.boundary() != Boundary::Periodic) w.set_exact_margin(w.exact_margin() + radius);
}

// Padded byte buffer for the scalar and bulk paths.
struct Padded {
    std::vector<uint8_t> buf;
    int w, h, pad;
    ptrdiff_t stride;

    PaddedView view() const {
        PaddedView v;
        v.origin = buf.data() + static_cast<ptrdiff_t>(pad) * stride + pad;
        v.stride = stride;
        v.w = w;
        v.h = h;
        v.pad = pad;
        return v;
    }
};

Padded make_padded(const Window& win, int pad, uint8_t max_state) {
    Padded p;
    p.w = win.width();
    p.h = win.height();
    p.pad = pad;
    p.stride = p.w + 2 * static_cast<ptrdiff_t>(pad);
    p.buf.assign(p.stride * (p.h + 2 * static_cast<size_t>(pad)), 0);

    uint8_t fill = 0;
    bool periodic = win.boundary() == Boundary::Periodic;
    if (win.boundary() == Boundary::One) fill = max_state;

    for (int y = -pad; y < p.h + pad; ++y) {
        uint8_t* row = p.buf.data() + (y + pad) * p.stride;
        bool y_in = y >= 0 && y < p.h;
        for (int x = -pad; x < p.w + pad; ++x) {
            bool x_in = x >= 0 && x < p.w;
            uint8_t v;
            if (x_in && y_in)
                v = win.get(x, y);
            else if (periodic)
                v = win.get(mod(x, p.w), mod(y, p.h));
            else
                v = fill;
            row[x + pad] = v;
        }
    }
    return p;
}

}  // namespace

Window step_bits(const Window& win, const RuleKernel& k) {
    require(k.family.has_value(), Err::InvalidArgument, "bit stepping needs a family rule");
    require(win.alphabet_size() == 2, Err::AlphabetMismatch, "bit stepping is binary-only");
    const NeighborFamily& fam = *k.family;

    BitGrid cur = pack(win);
    BitGrid src = cur;
    bool one = win.boundary() == Boundary::One;
    bool periodic = win.boundary() == Boundary::Periodic;
    if (one) {
        // tails must read as boundary ones for horizontal shifts
        uint64_t tm = src.tail_mask();
        if (tm != ~0ull)
            for (int y = 0; y < src.h; ++y) src.row(y)[src.wpr - 1] |= ~tm;
    }

    BitGrid next = cur;
    std::vector<uint64_t> fill_row(static_cast<size_t>(cur.wpr), one ? ~0ull : 0ull);
    std::vector<uint64_t> shifted(cur.wpr), acc(cur.wpr), grow(cur.wpr);
    uint64_t tail = cur.tail_mask();

    for (int y = 0; y < cur.h; ++y) {
        std::fill(grow.begin(), grow.end(), 0ull);
        for (const NeighborSet& s : fam.sets) {
            std::fill(acc.begin(), acc.end(), ~0ull);
            for (const IntVec2& c : s.cells) {
                int ry = y + static_cast<int>(c.y);
                const uint64_t* srow;
                if (periodic)
                    srow = src.row(mod(ry, cur.h));
                else if (ry < 0 || ry >= cur.h)
                    srow = fill_row.data();
                else
                    srow = src.row(ry);
                if (periodic)
                    shift_row_periodic(shifted.data(), srow, cur.wpr, cur.w, static_cast<int>(c.x));
                else
                    shift_row_fill(shifted.data(), srow, cur.wpr, static_cast<int>(c.x), one);
                for (int j = 0; j < cur.wpr; ++j) acc[j] &= shifted[j];
            }
            for (int j = 0; j < cur.wpr; ++j) grow[j] |= acc[j];
        }
        uint64_t* nrow = next.row(y);
        const uint64_t* crow = cur.row(y);
        for (int j = 0; j < cur.wpr; ++j) nrow[j] = crow[j] | grow[j];
        nrow[cur.wpr - 1] &= tail;
    }

    Window out = unpack(next, win);
    bump_margin(out, k.radius);
    return out;
}

Window step_scalar(const Window& win, const RuleKernel& k) {
    require(static_cast<bool>(k.cell), Err::InvalidArgument, "kernel has no cell rule");
    Padded p = make_padded(win, k.radius, k.max_state);
    Window out(win.width(), win.height(), win.boundary(), win.alphabet_size());
    out.set_exact_margin(win.exact_margin());
    PaddedView v = p.view();
    for (int y = 0; y < p.h; ++y)
        for (int x = 0; x < p.w; ++x) out.set(x, y, k.cell(v, x, y));
    bump_margin(out, k.radius);
    return out;
}

namespace {

Window step_bulk(const Window& win, const RuleKernel& k) {
    Padded p = make_padded(win, k.radius, k.max_state);
    Window out(win.width(), win.height(), win.boundary(), win.alphabet_size());
    out.set_exact_margin(win.exact_margin());
    k.bulk(p.view(), out.cells().data(), win.width());
    bump_margin(out, k.radius);
    return out;
}

}  // namespace

Window step(const Window& win, const RuleKernel& k) {
    require(k.alphabet_size == win.alphabet_size(), Err::AlphabetMismatch,
            "kernel and window alphabets differ");
    if (k.family && win.alphabet_size() == 2) return step_bits(win, k);
    if (k.bulk) return step_bulk(win, k);
    return step_scalar(win, k);
}

std::pair<Window, RunReport> run_until_fixed(Window w, const RuleKernel& k, int64_t horizon) {
    RunReport rep;
    for (int64_t t = 0; t < horizon; ++t) {
        Window next = step(w, k);
        int64_t changed = 0;
        const auto& a = w.cells();
        const auto& b = next.cells();
        for (size_t i = 0; i < a.size(); ++i) changed += (a[i] != b[i]);
        rep.changed_cells_per_step.push_back(changed);
        w = std::move(next);
        if (changed == 0) {
            rep.fixed = true;
            break;
        }
        ++rep.steps_taken;
    }
    return {std::move(w), std::move(rep)};
}

std::optional<int64_t> origin_fixation_time(const Window& w, const RuleKernel& k, int64_t horizon) {
    IntVec2 c = w.center();
    int cx = static_cast<int>(c.x), cy = static_cast<int>(c.y);
    if (w.get(cx, cy) == k.max_state) return 0;

    int64_t dist = std::min(std::min<int64_t>(cx, cy),
                            std::min<int64_t>(w.width() - 1 - cx, w.height() - 1 - cy));
    Window cur = w;
    for (int64_t t = 1; t <= horizon; ++t) {
        if (cur.boundary() != Boundary::Periodic)
            require(w.exact_margin() + t * k.radius <= dist, Err::ExactnessViolated,
                    "origin light cone leaves the exact region before the horizon");
        cur = step(cur, k);
        if (cur.get(cx, cy) == k.max_state) return t;
    }
    return std::nullopt;
}

bool check_fixed_point_family(const std::vector<IntVec2>& zero_cells, const NeighborFamily& e) {
    struct VecHash {
        size_t operator()(const IntVec2& v) const {
            return std::hash<int64_t>()(v.x * 1000003 + v.y);
        }
    };
    std::unordered_set<IntVec2, VecHash> zeros(zero_cells.begin(), zero_cells.end());
    for (const IntVec2& z : zero_cells) {
        for (const NeighborSet& s : e.sets) {
            bool meets = false;
            for (const IntVec2& n : s.cells) {
                if (zeros.count(z + n)) {
                    meets = true;
                    break;
                }
            }
            if (!meets) return false;  // this set is all-1 around z, so z flips
        }
    }
    return true;
}

}  // namespace fca
