#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fca/ftca.hpp"
#include "fca/window.hpp"

namespace fca {

// Injective map from the machine alphabet to n x n binary blocks: M is the
// all-1 block; every other state gets an outer ring of 1s, an inner ring of
// 0s, and its index written row-major into the (n-4)^2 payload.
struct BlockCode {
    int n = 7;
    FTAlphabet alphabet;

    static BlockCode for_alphabet(const FTAlphabet& a, int n);

    int payload_bits() const { return (n - 4) * (n - 4); }
    void encode_state(uint8_t q, Window& out, int x0, int y0) const;
    // nullopt when the block is not a codeword
    std::optional<uint8_t> decode_block(const Window& w, int x0, int y0) const;
};

Window block_encode(const BlockCode& code, const Window& coarse);

struct DecodedWindow {
    Window coarse;              // alphabet Q_F; cells with valid[i] == 0 hold M arbitrarily
    std::vector<uint8_t> valid; // per coarse cell
};

DecodedWindow block_decode(const BlockCode& code, const Window& fine);

// Binary kernel simulating the compiled machine checker on encoded
// configurations: cells outside a fully valid 3x3 block context turn 1,
// valid contexts follow the decoded rule.
RuleKernel gt_kernel(const BlockCode& code, const CompiledFT& ft);

}  // namespace fca
