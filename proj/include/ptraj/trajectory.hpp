#pragma once

#include <array>
#include <string>
#include <vector>

#include "ptraj/chain_code.hpp"

namespace ptraj {

// Ordered 2D trajectory points: unit grid steps before normalization,
// [0,1]^2 after.
struct Polyline {
    std::vector<std::array<double, 2>> points;
};

struct TrajectoryMetrics {
    double chain_accuracy = 0.0;     // fraction of positions with equal (mscc, iscc)
    double endpoint_error = 0.0;     // distance between normalized endpoints
    int heading_edit_distance = 0;   // Levenshtein over ISCC digit strings
    bool length_mismatch = false;    // chains differed in length; metrics use the overlap
};

struct SvgOptions {
    double stroke_width = 2.0;
    int canvas_px = 640;
};

// Start at the origin; each mscc=1 record advances one unit step along its
// record's heading (1 up, 0 left, 2 right, 3 down). Turn and skip records
// advance nothing.
Polyline chain_to_points(const std::vector<ChainRecord>& records);

// Translate the minimum corner to the origin and divide both axes by
// max(extent_x, extent_y, 1). Uniform scale, aspect preserved, idempotent.
Polyline normalize(const Polyline& poly);

TrajectoryMetrics compare(const std::vector<ChainRecord>& predicted, const Polyline& predicted_poly,
                          const std::vector<ChainRecord>& truth, const Polyline& truth_poly);

// SVG 1.1 document with one path (collinear runs merged, closed with Z when
// the trace returns to its start), y flipped so forward renders upward, and
// a start marker. Byte-deterministic for fixed inputs.
std::string render_svg(const Polyline& poly, const SvgOptions& options = {});

// ISCC digits of a chain, e.g. "1100".
std::string heading_string(const std::vector<ChainRecord>& records);

}  // namespace ptraj
