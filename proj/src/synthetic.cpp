#include "ptraj/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ptraj/errors.hpp"

namespace ptraj {

namespace {

// Distribution mappings are hand-rolled on top of mt19937_64 so generated
// data is bit-identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

double gaussian(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0,1], keeps log finite
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Circular 3-tap blur per axis. The taps are chosen without spectral nulls
// (0.6 + 0.4*cos(theta) > 0 everywhere) so every DFT coefficient of the
// texture stays well above the cross-power eps guard.
void blur_pass(Frame& frame) {
    const int w = frame.width, h = frame.height;
    std::vector<double> tmp(frame.pixels.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double left = frame.at((x + w - 1) % w, y);
            const double right = frame.at((x + 1) % w, y);
            tmp[static_cast<std::size_t>(y) * w + x] = 0.2 * left + 0.6 * frame.at(x, y) + 0.2 * right;
        }
    }
    frame.pixels.swap(tmp);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double up = frame.at(x, (y + h - 1) % h);
            const double down = frame.at(x, (y + 1) % h);
            tmp[static_cast<std::size_t>(y) * w + x] = 0.2 * up + 0.6 * frame.at(x, y) + 0.2 * down;
        }
    }
    frame.pixels.swap(tmp);
}

void add_clipped_noise(Frame& frame, double sigma, std::mt19937_64& rng) {
    for (double& v : frame.pixels) {
        v = std::clamp(v + sigma * gaussian(rng), 0.0, 1.0);
    }
}

}  // namespace

Frame textured_base(int width, int height, std::uint64_t seed) {
    if (width < 32 || height < 32) {
        throw Error(ErrorCategory::Data, "frame-too-small", "textured base needs at least 32x32");
    }
    std::mt19937_64 rng(seed);
    Frame frame;
    frame.width = width;
    frame.height = height;
    frame.pixels.resize(static_cast<std::size_t>(width) * height);
    for (double& v : frame.pixels) v = uniform01(rng);
    blur_pass(frame);
    blur_pass(frame);
    const auto [lo_it, hi_it] = std::minmax_element(frame.pixels.begin(), frame.pixels.end());
    const double lo = *lo_it, span = *hi_it - *lo_it;
    if (span > 0.0) {
        for (double& v : frame.pixels) v = (v - lo) / span;
    }
    return frame;
}

Frame circular_shift(const Frame& frame, int a, int b) {
    const int w = frame.width, h = frame.height;
    const int ma = ((a % w) + w) % w;
    const int mb = ((b % h) + h) % h;
    Frame out;
    out.width = w;
    out.height = h;
    out.index = frame.index;
    out.pixels.resize(frame.pixels.size());
    for (int y = 0; y < h; ++y) {
        const int sy = (y + mb) % h;
        for (int x = 0; x < w; ++x) {
            out.at(x, y) = frame.at((x + ma) % w, sy);
        }
    }
    return out;
}

SequenceTruth shifted_sequence(const Frame& base, const std::vector<std::pair<int, int>>& shifts,
                               double noise_sigma, std::uint64_t seed) {
    if (noise_sigma < 0.0 || noise_sigma > 0.5) {
        throw Error(ErrorCategory::Data, "invalid-argument", "noise sigma must be in [0, 0.5]");
    }
    for (const auto& [a, b] : shifts) {
        if (2 * std::abs(a) >= base.width || 2 * std::abs(b) >= base.height) {
            throw Error(ErrorCategory::Data, "invalid-shift",
                        "(" + std::to_string(a) + "," + std::to_string(b) +
                            ") out of range for " + std::to_string(base.width) + "x" +
                            std::to_string(base.height));
        }
    }
    SequenceTruth out;
    out.shifts = shifts;
    out.frames.reserve(shifts.size() + 1);

    std::mt19937_64 rng(seed);
    Frame clean = base;
    clean.index = 0;
    for (std::size_t i = 0; i <= shifts.size(); ++i) {
        Frame emitted = clean;
        emitted.index = static_cast<int>(i);
        if (noise_sigma > 0.0) {
            add_clipped_noise(emitted, noise_sigma, rng);
        }
        out.frames.push_back(std::move(emitted));
        if (i < shifts.size()) {
            clean = circular_shift(clean, shifts[i].first, shifts[i].second);
        }
    }
    return out;
}

std::vector<DriveMove> parse_script(const std::string& text) {
    std::vector<DriveMove> moves;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        DriveMove move;
        move.kind = token[0];
        if (move.kind != 'F' && move.kind != 'L' && move.kind != 'R') {
            throw Error(ErrorCategory::Data, "script-parse-error", "bad token '" + token + "'");
        }
        if (token.size() == 1) {
            move.length = 1;
        } else {
            if (move.kind == 'F' || token.size() < 4 || token[1] != '(' || token.back() != ')') {
                throw Error(ErrorCategory::Data, "script-parse-error", "bad token '" + token + "'");
            }
            const std::string digits = token.substr(2, token.size() - 3);
            if (digits.empty() ||
                !std::all_of(digits.begin(), digits.end(),
                             [](unsigned char c) { return std::isdigit(c); }) ||
                digits.size() > 6) {
                throw Error(ErrorCategory::Data, "script-parse-error", "bad token '" + token + "'");
            }
            move.length = std::stoi(digits);
            if (move.length < 1) {
                throw Error(ErrorCategory::Data, "script-parse-error",
                            "bad token '" + token + "' (k must be >= 1)");
            }
        }
        moves.push_back(move);
    }
    return moves;
}

std::string format_script(const std::vector<DriveMove>& moves) {
    std::string out;
    for (const DriveMove& move : moves) {
        if (!out.empty()) out.push_back(' ');
        out.push_back(move.kind);
        if (move.kind != 'F' && move.length != 1) {
            out += "(" + std::to_string(move.length) + ")";
        }
    }
    return out;
}

namespace {

// Independent realization of the dynamic chain code used as a cross-check
// oracle. Table-driven over script motion kinds; shares no code with
// chain_code.cpp and never looks at dx values.
std::vector<ChainRecord> oracle_chain(const std::vector<char>& kinds, const std::vector<int>& dxs) {
    static const int kLeftOf[4] = {3, 0, 1, 2};
    static const int kRightOf[4] = {1, 2, 3, 0};

    std::vector<ChainRecord> records;
    records.reserve(kinds.size());
    int heading = 1;
    bool skipping = false;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        ChainRecord rec;
        rec.pair_index = static_cast<int>(i);
        rec.dx = dxs[i];
        if (i == 0) {
            // First pair is forward by definition.
            rec.mscc = 1;
            skipping = false;
        } else if (kinds[i] == 'F') {
            rec.mscc = 1;
            skipping = false;
        } else if (skipping) {
            rec.mscc = 3;
        } else if (kinds[i] == 'L') {
            heading = kLeftOf[heading];
            rec.mscc = 0;
            skipping = true;
        } else {
            heading = kRightOf[heading];
            rec.mscc = 2;
            skipping = true;
        }
        rec.iscc = heading;
        records.push_back(rec);
    }
    return records;
}

}  // namespace

ScriptTruth script_to_frames(const DriveScript& script, const Frame& base) {
    if (script.moves.empty()) {
        throw Error(ErrorCategory::Data, "empty-sequence", "script has no moves");
    }
    if (script.turn_dx <= script.forward_dx_bound) {
        throw Error(ErrorCategory::Data, "invalid-argument",
                    "turn_dx must exceed forward_dx_bound");
    }
    if (2 * script.turn_dx >= base.width) {
        throw Error(ErrorCategory::Data, "invalid-shift",
                    "turn_dx " + std::to_string(script.turn_dx) + " too large for width " +
                        std::to_string(base.width));
    }

    // Flatten moves to one motion kind per frame pair, then draw shifts.
    std::vector<char> kinds;
    for (const DriveMove& move : script.moves) {
        if (move.kind == 'F' && move.length != 1) {
            throw Error(ErrorCategory::Data, "script-parse-error", "F takes no length");
        }
        if (move.length < 1) {
            throw Error(ErrorCategory::Data, "script-parse-error", "excursion length must be >= 1");
        }
        for (int i = 0; i < move.length; ++i) kinds.push_back(move.kind);
    }

    std::mt19937_64 rng(script.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::pair<int, int>> shifts;
    std::vector<int> dxs;
    shifts.reserve(kinds.size());
    for (char kind : kinds) {
        int dx;
        if (kind == 'F') {
            dx = uniform_int(rng, -script.forward_dx_bound, script.forward_dx_bound);
        } else {
            dx = kind == 'L' ? script.turn_dx : -script.turn_dx;
        }
        const int dy = uniform_int(rng, -2, 2);
        shifts.emplace_back(dx, dy);
        dxs.push_back(dx);
    }

    ScriptTruth out;
    out.chain = oracle_chain(kinds, dxs);
    SequenceTruth seq = shifted_sequence(base, shifts, script.noise_sigma, script.seed + 1);
    out.frames = std::move(seq.frames);
    out.shifts = std::move(seq.shifts);
    return out;
}

}  // namespace ptraj
