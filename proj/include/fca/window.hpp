#pragma once

#include <cstdint>
#include <vector>

#include "fca/util.hpp"
#include "fca/vec.hpp"

namespace fca {

enum class Boundary : uint8_t { Zero, One, Periodic };

// Finite rectangular state grid. Row-major with y = 0 the bottom row; directed
// paths and the growth conventions move toward increasing y. exact_margin
// tracks how deep a cell must sit for its state to match the evolution of the
// embedded infinite configuration (0 on a fresh window, +radius per step under
// a deterministic boundary).
class Window {
public:
    Window() = default;
    Window(int w, int h, Boundary b, uint8_t alphabet_size = 2, uint8_t fill = 0)
        : w_(w), h_(h), boundary_(b), alphabet_(alphabet_size),
          cells_(static_cast<size_t>(w) * h, fill) {
        require(w > 0 && h > 0, Err::InvalidArgument, "window dimensions must be positive");
    }

    int width() const { return w_; }
    int height() const { return h_; }
    Boundary boundary() const { return boundary_; }
    void set_boundary(Boundary b) { boundary_ = b; }
    uint8_t alphabet_size() const { return alphabet_; }
    int exact_margin() const { return exact_margin_; }
    void set_exact_margin(int m) { exact_margin_ = m; }

    uint8_t get(int x, int y) const { return cells_[static_cast<size_t>(y) * w_ + x]; }
    void set(int x, int y, uint8_t v) { cells_[static_cast<size_t>(y) * w_ + x] = v; }

    const std::vector<uint8_t>& cells() const { return cells_; }
    std::vector<uint8_t>& cells() { return cells_; }

    IntVec2 center() const { return {w_ / 2, h_ / 2}; }

    int64_t count_state(uint8_t s) const {
        int64_t n = 0;
        for (uint8_t c : cells_) n += (c == s);
        return n;
    }

    bool all_state(uint8_t s) const {
        for (uint8_t c : cells_)
            if (c != s) return false;
        return true;
    }

    friend bool operator==(const Window& a, const Window& b) {
        return a.w_ == b.w_ && a.h_ == b.h_ && a.cells_ == b.cells_;
    }

private:
    int w_ = 0, h_ = 0;
    Boundary boundary_ = Boundary::Zero;
    uint8_t alphabet_ = 2;
    int exact_margin_ = 0;
    std::vector<uint8_t> cells_;
};

}  // namespace fca
