#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ptraj {

enum class WindowKind { None, Hann };

// Single grayscale frame: row-major luminance values in [0,1].
struct Frame {
    int width = 0;
    int height = 0;
    int index = 0;
    std::vector<double> pixels;

    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    bool same_dims(const Frame& other) const {
        return width == other.width && height == other.height;
    }
};

struct IngestOptions {
    int downscale_factor = 1;
};

// BT.601 luminance from 8-bit channel values, clamped to [0,1].
double luminance_bt601(double r, double g, double b);

// Block-mean reduction by an integer factor; factor 1 is the identity.
Frame downscale(const Frame& frame, int factor);

// Separable Hann weighting (or the identity for WindowKind::None).
Frame apply_window(const Frame& frame, WindowKind kind);

// Load every PGM/PNG under a directory (or matching a glob pattern) in
// lexicographic order, converted to luminance and downscaled per options.
std::vector<Frame> load_sequence(const std::string& source, const IngestOptions& options = {});

WindowKind parse_window_kind(const std::string& name);
const char* window_kind_name(WindowKind kind);

}  // namespace ptraj
