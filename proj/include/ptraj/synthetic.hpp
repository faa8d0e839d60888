#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ptraj/chain_code.hpp"
#include "ptraj/frame_ingest.hpp"

namespace ptraj {

// One scripted move: 'F' is a single forward pair, 'L'/'R' a turn excursion
// lasting `length` pairs.
struct DriveMove {
    char kind = 'F';
    int length = 1;
};

struct DriveScript {
    std::vector<DriveMove> moves;
    int forward_dx_bound = 8;  // |dx| of forward pairs stays at or below this
    int turn_dx = 80;          // |dx| of turn pairs
    double noise_sigma = 0.0;  // luminance std-dev, clipped to [0,1]
    std::uint64_t seed = 0;
};

// Parses whitespace-separated tokens F, L, R, L(k), R(k) with k >= 1.
// Throws Error("script-parse-error") naming the offending token.
std::vector<DriveMove> parse_script(const std::string& text);

// Normal form of a move list, e.g. "F L(3) F".
std::string format_script(const std::vector<DriveMove>& moves);

// Reproducible smooth random texture in [0,1] with no spectral nulls.
Frame textured_base(int width, int height, std::uint64_t seed);

// g(x,y) = f((x+a) mod W, (y+b) mod H). The sign convention is fixed so that
// estimate_shift(f, circular_shift(f, a, b)) returns exactly (a, b).
Frame circular_shift(const Frame& frame, int a, int b);

struct SequenceTruth {
    std::vector<Frame> frames;
    std::vector<std::pair<int, int>> shifts;  // ground truth per consecutive pair
};

// frames[i+1] = circular_shift(frames[i], shifts[i]) on a clean chain, with
// fresh clipped Gaussian noise per emitted frame when noise_sigma > 0.
SequenceTruth shifted_sequence(const Frame& base, const std::vector<std::pair<int, int>>& shifts,
                               double noise_sigma, std::uint64_t seed);

struct ScriptTruth {
    std::vector<Frame> frames;
    std::vector<std::pair<int, int>> shifts;
    std::vector<ChainRecord> chain;  // from the independent table-driven oracle
};

// Realizes a drive script as frames plus ground-truth shifts and chain. The
// truth chain comes from a second, independently written implementation of
// the rising-edge semantics (classified from script tokens, not dx values).
ScriptTruth script_to_frames(const DriveScript& script, const Frame& base);

}  // namespace ptraj
