#pragma once

#include <utility>
#include <vector>

#include "ptraj/phase_correlation.hpp"

namespace ptraj {

// Per-pair movement classes. Sign convention: a left vehicle turn sweeps the
// scene rightward in the image, giving positive dx.
enum class MotionClass { Forward, Left, Right };

struct ChainConfig {
    int threshold = 30;            // pixels; forward band is (-threshold, threshold)
    bool invert_turn_sign = false; // swaps the Left/Right reading of dx
};

// Heading codes: 0 = left/west, 1 = forward/north, 2 = right/east, 3 = reverse/south.
struct ChainState {
    int iscc = 1;
    bool in_turn = false;
};

// One output row per frame pair. mscc: 0 left, 1 forward, 2 right, 3 no change.
struct ChainRecord {
    int pair_index = 0;
    int mscc = 1;
    int iscc = 1;
    int dx = 0;
};

MotionClass classify_motion(int dx, const ChainConfig& config);

// 90-degree counterclockwise heading rotation: 1 -> 0 -> 3 -> 2 -> 1.
int rotate_left(int iscc);

// Clockwise rotation, the inverse of rotate_left.
int rotate_right(int iscc);

// One state-machine transition. A turn registers on its rising edge only;
// while in_turn, everything above threshold keeps mscc=3 until a forward
// pair re-arms detection.
std::pair<ChainState, ChainRecord> step(ChainState state, int dx, int pair_index,
                                        const ChainConfig& config);

// Sequential fold; the first record is forced to (mscc=1, iscc=1).
std::vector<ChainRecord> fold_chain(const std::vector<ShiftEstimate>& shifts,
                                    const ChainConfig& config);

// Same fold over bare x-shifts with pair indices first_pair_index, +1, ...
std::vector<ChainRecord> fold_chain_dx(const std::vector<int>& dxs, int first_pair_index,
                                       const ChainConfig& config);

}  // namespace ptraj
