#include "ptraj/chain_code.hpp"

#include <cstdlib>

#include "ptraj/errors.hpp"

namespace ptraj {

namespace {

void validate(const ChainConfig& config) {
    if (config.threshold < 1) {
        throw Error(ErrorCategory::Usage, "invalid-threshold", "threshold must be >= 1");
    }
}

}  // namespace

MotionClass classify_motion(int dx, const ChainConfig& config) {
    validate(config);
    if (std::abs(dx) < config.threshold) {
        return MotionClass::Forward;
    }
    const bool left = dx >= config.threshold;
    if (config.invert_turn_sign) {
        return left ? MotionClass::Right : MotionClass::Left;
    }
    return left ? MotionClass::Left : MotionClass::Right;
}

int rotate_left(int iscc) {
    return (iscc + 3) % 4;
}

int rotate_right(int iscc) {
    return (iscc + 1) % 4;
}

std::pair<ChainState, ChainRecord> step(ChainState state, int dx, int pair_index,
                                        const ChainConfig& config) {
    const MotionClass motion = classify_motion(dx, config);
    ChainRecord record;
    record.pair_index = pair_index;
    record.dx = dx;

    if (motion == MotionClass::Forward) {
        // Forward keeps the heading and re-arms turn detection.
        record.mscc = 1;
        state.in_turn = false;
    } else if (state.in_turn) {
        // Still inside an excursion: no change, even if the sign flipped.
        record.mscc = 3;
    } else {
        if (motion == MotionClass::Left) {
            state.iscc = rotate_left(state.iscc);
            record.mscc = 0;
        } else {
            state.iscc = rotate_right(state.iscc);
            record.mscc = 2;
        }
        state.in_turn = true;
    }
    record.iscc = state.iscc;
    return {state, record};
}

std::vector<ChainRecord> fold_chain_dx(const std::vector<int>& dxs, int first_pair_index,
                                       const ChainConfig& config) {
    validate(config);
    if (dxs.empty()) {
        throw Error(ErrorCategory::Data, "empty-sequence", "no shifts to fold");
    }
    std::vector<ChainRecord> records;
    records.reserve(dxs.size());

    // The first pair is forward by definition, whatever dx was measured.
    ChainState state;
    ChainRecord first;
    first.pair_index = first_pair_index;
    first.mscc = 1;
    first.iscc = state.iscc;
    first.dx = dxs.front();
    records.push_back(first);

    for (std::size_t i = 1; i < dxs.size(); ++i) {
        auto [next, record] = step(state, dxs[i], first_pair_index + static_cast<int>(i), config);
        state = next;
        records.push_back(record);
    }
    return records;
}

std::vector<ChainRecord> fold_chain(const std::vector<ShiftEstimate>& shifts,
                                    const ChainConfig& config) {
    if (shifts.empty()) {
        throw Error(ErrorCategory::Data, "empty-sequence", "no shifts to fold");
    }
    std::vector<int> dxs;
    dxs.reserve(shifts.size());
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (i > 0 && shifts[i].pair_index != shifts[i - 1].pair_index + 1) {
            throw Error(ErrorCategory::Data, "invalid-argument",
                        "shift estimates must be ordered and gap-free by pair_index");
        }
        dxs.push_back(shifts[i].dx);
    }
    return fold_chain_dx(dxs, shifts.front().pair_index, config);
}

}  // namespace ptraj
