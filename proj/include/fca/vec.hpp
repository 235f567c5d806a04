#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "fca/util.hpp"

namespace fca {

struct IntVec2 {
    int64_t x = 0;
    int64_t y = 0;

    friend IntVec2 operator+(IntVec2 a, IntVec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend IntVec2 operator-(IntVec2 a, IntVec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend IntVec2 operator-(IntVec2 a) { return {-a.x, -a.y}; }
    friend IntVec2 operator*(int64_t k, IntVec2 a) { return {k * a.x, k * a.y}; }
    friend bool operator==(IntVec2 a, IntVec2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(IntVec2 a, IntVec2 b) { return !(a == b); }
    friend bool operator<(IntVec2 a, IntVec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

    bool is_zero() const { return x == 0 && y == 0; }
    int64_t norm_linf() const { return std::max(std::llabs(x), std::llabs(y)); }
    int64_t norm2() const { return x * x + y * y; }
    std::string str() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

inline int64_t dot(IntVec2 a, IntVec2 b) { return a.x * b.x + a.y * b.y; }
inline int64_t cross(IntVec2 a, IntVec2 b) { return a.x * b.y - a.y * b.x; }
inline IntVec2 rot90(IntVec2 v) { return {-v.y, v.x}; }  // counterclockwise quarter turn

inline IntVec2 primitive(IntVec2 v) {
    require(!v.is_zero(), Err::InvalidArgument, "primitive of zero vector");
    int64_t g = std::gcd(std::llabs(v.x), std::llabs(v.y));
    return {v.x / g, v.y / g};
}

// A rational direction on the circle, stored as its primitive integer vector.
struct Direction {
    IntVec2 v;

    Direction() : v{1, 0} {}
    explicit Direction(IntVec2 raw) : v(primitive(raw)) {}
    Direction(int64_t x, int64_t y) : Direction(IntVec2{x, y}) {}

    Direction antipode() const {
        Direction d;
        d.v = -v;
        return d;
    }
    friend bool operator==(Direction a, Direction b) { return a.v == b.v; }
    friend bool operator!=(Direction a, Direction b) { return !(a == b); }
    std::string str() const { return v.str(); }
};

// Half of the circle a direction falls in: 0 for angles in [0, pi), 1 otherwise.
inline int angle_half(Direction d) { return (d.v.y > 0 || (d.v.y == 0 && d.v.x > 0)) ? 0 : 1; }

// Strict angular order with origin at direction (1,0), counterclockwise.
inline int angle_cmp(Direction a, Direction b) {
    int ha = angle_half(a), hb = angle_half(b);
    if (ha != hb) return ha < hb ? -1 : 1;
    int64_t c = cross(a.v, b.v);
    return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

inline bool angle_less(Direction a, Direction b) { return angle_cmp(a, b) < 0; }

}  // namespace fca
