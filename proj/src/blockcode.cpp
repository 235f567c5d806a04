#include "fca/blockcode.hpp"

#include <cassert>

namespace fca {

BlockCode BlockCode::for_alphabet(const FTAlphabet& a, int n) {
    require(n >= 5, Err::InvalidArgument, "block side must be at least 5");
    BlockCode c;
    c.n = n;
    c.alphabet = a;
    int non_m = a.size() - 1;
    require(c.payload_bits() < 63 ? (1ll << c.payload_bits()) >= non_m : true, Err::InvalidArgument,
            "block side too small to encode the alphabet");
    return c;
}

void BlockCode::encode_state(uint8_t q, Window& out, int x0, int y0) const {
    if (q == alphabet.m()) {
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) out.set(x0 + x, y0 + y, 1);
        return;
    }
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            bool outer = x == 0 || y == 0 || x == n - 1 || y == n - 1;
            bool inner = !outer && (x == 1 || y == 1 || x == n - 2 || y == n - 2);
            uint8_t v = 0;
            if (outer)
                v = 1;
            else if (inner)
                v = 0;
            else {
                int k = (y - 2) * (n - 4) + (x - 2);
                v = (q >> k) & 1;
            }
            out.set(x0 + x, y0 + y, v);
        }
}

std::optional<uint8_t> BlockCode::decode_block(const Window& w, int x0, int y0) const {
    bool all_one = true;
    for (int y = 0; y < n && all_one; ++y)
        for (int x = 0; x < n; ++x)
            if (!w.get(x0 + x, y0 + y)) {
                all_one = false;
                break;
            }
    if (all_one) return alphabet.m();

    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            bool outer = x == 0 || y == 0 || x == n - 1 || y == n - 1;
            bool inner = !outer && (x == 1 || y == 1 || x == n - 2 || y == n - 2);
            uint8_t v = w.get(x0 + x, y0 + y);
            if (outer && v != 1) return std::nullopt;
            if (inner && v != 0) return std::nullopt;
        }
    uint32_t idx = 0;
    for (int y = 2; y < n - 2; ++y)
        for (int x = 2; x < n - 2; ++x) {
            int k = (y - 2) * (n - 4) + (x - 2);
            if (k < 31 && w.get(x0 + x, y0 + y)) idx |= 1u << k;
        }
    if (idx >= static_cast<uint32_t>(alphabet.m())) return std::nullopt;
    return static_cast<uint8_t>(idx);
}

Window block_encode(const BlockCode& code, const Window& coarse) {
    int n = code.n;
    Window out(coarse.width() * n, coarse.height() * n, coarse.boundary(), 2, 0);
    for (int b = 0; b < coarse.height(); ++b)
        for (int a = 0; a < coarse.width(); ++a) code.encode_state(coarse.get(a, b), out, a * n, b * n);
    return out;
}

DecodedWindow block_decode(const BlockCode& code, const Window& fine) {
    int n = code.n;
    require(fine.width() % n == 0 && fine.height() % n == 0, Err::InvalidArgument,
            "window dimensions are not block-aligned");
    DecodedWindow out;
    int aw = fine.width() / n, ah = fine.height() / n;
    out.coarse = Window(aw, ah, fine.boundary(), static_cast<uint8_t>(code.alphabet.size()),
                        code.alphabet.m());
    out.valid.assign(static_cast<size_t>(aw) * ah, 0);
    for (int b = 0; b < ah; ++b)
        for (int a = 0; a < aw; ++a) {
            auto q = code.decode_block(fine, a * n, b * n);
            if (q) {
                out.coarse.set(a, b, *q);
                out.valid[static_cast<size_t>(b) * aw + a] = 1;
            }
        }
    return out;
}

RuleKernel gt_kernel(const BlockCode& code, const CompiledFT& ft) {
    RuleKernel k;
    k.name = "gt";
    k.radius = 2 * code.n - 1;
    k.alphabet_size = 2;
    k.max_state = 1;

    BlockCode c = code;
    auto valid = ft.valid2x2;
    FTAlphabet A = ft.alphabet;

    // decode an n x n block anchored at absolute view coords
    auto decode_at = [c, A](const PaddedView& v, int bx, int by) -> std::optional<uint8_t> {
        int n = c.n;
        bool all_one = true;
        for (int y = 0; y < n && all_one; ++y)
            for (int x = 0; x < n; ++x)
                if (!v.at(bx + x, by + y)) {
                    all_one = false;
                    break;
                }
        if (all_one) return A.m();
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                bool outer = x == 0 || y == 0 || x == n - 1 || y == n - 1;
                bool inner = !outer && (x == 1 || y == 1 || x == n - 2 || y == n - 2);
                uint8_t val = v.at(bx + x, by + y);
                if (outer && val != 1) return std::nullopt;
                if (inner && val != 0) return std::nullopt;
            }
        uint32_t idx = 0;
        for (int y = 2; y < n - 2; ++y)
            for (int x = 2; x < n - 2; ++x) {
                int kbit = (y - 2) * (n - 4) + (x - 2);
                if (kbit < 31 && v.at(bx + x, by + y)) idx |= 1u << kbit;
            }
        if (idx >= static_cast<uint32_t>(A.m())) return std::nullopt;
        return static_cast<uint8_t>(idx);
    };

    k.cell = [c, A, valid, decode_at](const PaddedView& v, int x, int y) -> uint8_t {
        if (v.at(x, y)) return 1;  // 1s are inert
        int n = c.n;
        // a 0 cell fixes its block alignment: at most one anchor decodes
        int ax = INT32_MIN, ay = INT32_MIN;
        uint8_t center_state = 0;
        bool found = false;
        for (int dy = -(n - 1); dy <= 0 && !found; ++dy)
            for (int dx = -(n - 1); dx <= 0; ++dx) {
                auto q = decode_at(v, x + dx, y + dy);
                if (q) {
                    ax = x + dx;
                    ay = y + dy;
                    center_state = *q;
                    found = true;
                    break;
                }
            }
        if (!found) return 1;  // not inside any valid block

        uint8_t patch[9];
        for (int by = -1; by <= 1; ++by)
            for (int bx = -1; bx <= 1; ++bx) {
                auto q = decode_at(v, ax + bx * n, ay + by * n);
                if (!q) return 1;  // neighborhood of nine valid blocks required
                patch[(by + 1) * 3 + (bx + 1)] = *q;
            }
        assert(patch[4] == center_state);
        (void)center_state;
        uint8_t next = ft_apply3x3(A, *valid, patch);
        return next == A.m() ? 1 : 0;
    };
    return k;
}

}  // namespace fca
