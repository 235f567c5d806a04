#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fca {

inline constexpr const char* kVersion = "0.1.0";

enum class Err {
    EmptyPointSet,
    NotSeparable,
    OriginInHull,
    OriginInNeighborSet,
    EmptySetMeansConstant,
    NotMonotoneFreezing,
    RadiusTooLarge,
    AlphabetMismatch,
    ExactnessViolated,
    NotStronglySubcritical,
    ObstacleVerificationFailed,
    BudgetExceeded,
    InvalidArgument,
    ParseError,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
    if (!cond) fail(code, what);
}

// Static partition of [0, n) over worker threads. Chunks are processed in
// index order within each worker, so any per-index output is deterministic.
inline void parallel_for(int64_t n, int threads, const std::function<void(int64_t, int64_t)>& body) {
    if (threads <= 1 || n < 2) {
        body(0, n);
        return;
    }
    int nt = static_cast<int>(std::min<int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    int64_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        int64_t lo = t * chunk;
        int64_t hi = std::min<int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fca
