#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "fca/util.hpp"

namespace fca {

// Exact small rational, always reduced with positive denominator.
// Operands stay tiny here (probabilities, thresholds, face lengths), so
// int64 storage with __int128 cross products is ample.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    Rat() = default;
    Rat(int64_t n) : num(n), den(1) {}  // NOLINT: implicit by design
    Rat(int64_t n, int64_t d) : num(n), den(d) {
        require(d != 0, Err::InvalidArgument, "rational with zero denominator");
        reduce();
    }

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(Rat a, Rat b) {
        require(b.num != 0, Err::InvalidArgument, "rational division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    friend Rat operator-(Rat a) { return Rat(-a.num, a.den); }

    friend int cmp(Rat a, Rat b) {
        __int128 l = static_cast<__int128>(a.num) * b.den;
        __int128 r = static_cast<__int128>(b.num) * a.den;
        return l < r ? -1 : (l > r ? 1 : 0);
    }
    friend bool operator<(Rat a, Rat b) { return cmp(a, b) < 0; }
    friend bool operator<=(Rat a, Rat b) { return cmp(a, b) <= 0; }
    friend bool operator>(Rat a, Rat b) { return cmp(a, b) > 0; }
    friend bool operator>=(Rat a, Rat b) { return cmp(a, b) >= 0; }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
};

// Parses "3", "-1/4" or a plain decimal like "0.25" into an exact rational.
inline Rat parse_rat(const std::string& s) {
    require(!s.empty(), Err::ParseError, "empty rational");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            int64_t n = std::stoll(s.substr(0, slash));
            int64_t d = std::stoll(s.substr(slash + 1));
            return Rat(n, d);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rat(std::stoll(s));
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        require(frac.size() <= 15, Err::ParseError, "decimal too long: " + s);
        bool neg = !whole.empty() && whole[0] == '-';
        int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
        if (neg && w < 0) w = -w;
        int64_t scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        int64_t f = frac.empty() ? 0 : std::stoll(frac);
        int64_t n = w * scale + f;
        return Rat(neg ? -n : n, scale);
    } catch (const std::exception&) {
        fail(Err::ParseError, "bad rational: " + s);
    }
}

}  // namespace fca
