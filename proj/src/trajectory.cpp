#include "ptraj/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ptraj/errors.hpp"

namespace ptraj {

namespace {

// Unit step for each heading; forward (1) points up in the grid frame.
std::array<double, 2> heading_step(int iscc) {
    switch (iscc) {
        case 0: return {-1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        int prev_diag = row[0];
        row[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int del = row[j] + 1;
            const int ins = row[j - 1] + 1;
            const int sub = prev_diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            prev_diag = row[j];
            row[j] = std::min({del, ins, sub});
        }
    }
    return row[b.size()];
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string heading_string(const std::vector<ChainRecord>& records) {
    std::string s;
    s.reserve(records.size());
    for (const ChainRecord& r : records) s.push_back(static_cast<char>('0' + r.iscc));
    return s;
}

Polyline chain_to_points(const std::vector<ChainRecord>& records) {
    Polyline poly;
    poly.points.push_back({0.0, 0.0});
    for (const ChainRecord& r : records) {
        if (r.mscc != 1) continue;  // turns and skips advance nothing
        const auto step = heading_step(r.iscc);
        const auto& last = poly.points.back();
        poly.points.push_back({last[0] + step[0], last[1] + step[1]});
    }
    return poly;
}

Polyline normalize(const Polyline& poly) {
    if (poly.points.empty()) {
        throw Error(ErrorCategory::Data, "empty-sequence", "cannot normalize an empty polyline");
    }
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -min_x;
    double max_y = -min_y;
    for (const auto& p : poly.points) {
        min_x = std::min(min_x, p[0]);
        max_x = std::max(max_x, p[0]);
        min_y = std::min(min_y, p[1]);
        max_y = std::max(max_y, p[1]);
    }
    const double scale = 1.0 / std::max({max_x - min_x, max_y - min_y, 1.0});
    Polyline out;
    out.points.reserve(poly.points.size());
    for (const auto& p : poly.points) {
        out.points.push_back({(p[0] - min_x) * scale, (p[1] - min_y) * scale});
    }
    return out;
}

TrajectoryMetrics compare(const std::vector<ChainRecord>& predicted, const Polyline& predicted_poly,
                          const std::vector<ChainRecord>& truth, const Polyline& truth_poly) {
    const std::size_t overlap = std::min(predicted.size(), truth.size());
    if (overlap == 0) {
        throw Error(ErrorCategory::Data, "comparison-undefined",
                    "need at least one chain record on each side");
    }
    TrajectoryMetrics metrics;
    metrics.length_mismatch = predicted.size() != truth.size();

    std::size_t equal = 0;
    for (std::size_t i = 0; i < overlap; ++i) {
        if (predicted[i].mscc == truth[i].mscc && predicted[i].iscc == truth[i].iscc) ++equal;
    }
    metrics.chain_accuracy = static_cast<double>(equal) / static_cast<double>(overlap);

    const Polyline np = normalize(predicted_poly);
    const Polyline nt = normalize(truth_poly);
    const auto& pe = np.points.back();
    const auto& te = nt.points.back();
    metrics.endpoint_error = std::hypot(pe[0] - te[0], pe[1] - te[1]);

    metrics.heading_edit_distance = levenshtein(heading_string(predicted), heading_string(truth));
    return metrics;
}

std::string render_svg(const Polyline& poly, const SvgOptions& options) {
    if (poly.points.empty()) {
        throw Error(ErrorCategory::Data, "empty-sequence", "cannot render an empty polyline");
    }
    const double canvas = options.canvas_px;
    const double margin = 0.05 * canvas;
    const double inner = canvas - 2.0 * margin;
    auto px = [&](const std::array<double, 2>& p) -> std::array<double, 2> {
        // y flipped: forward (grid +y) renders upward on the canvas.
        return {margin + p[0] * inner, margin + (1.0 - p[1]) * inner};
    };

    // Merge collinear runs so a straight drive is one segment; keep points
    // where the direction reverses.
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : poly.points) {
        if (pts.size() >= 2) {
            const auto& a = pts[pts.size() - 2];
            const auto& b = pts.back();
            const double ux = b[0] - a[0], uy = b[1] - a[1];
            const double vx = p[0] - b[0], vy = p[1] - b[1];
            const double cross = ux * vy - uy * vx;
            const double dot = ux * vx + uy * vy;
            if (std::abs(cross) <= 1e-12 && dot > 0.0) {
                pts.back() = p;
                continue;
            }
        }
        pts.push_back(p);
    }

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(options.canvas_px) + "\" height=\"" + std::to_string(options.canvas_px) +
           "\" viewBox=\"0 0 " + std::to_string(options.canvas_px) + " " +
           std::to_string(options.canvas_px) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (pts.size() >= 2) {
        const bool closed = pts.size() >= 3 && pts.front() == pts.back();
        const std::size_t last = closed ? pts.size() - 1 : pts.size();
        std::string d;
        for (std::size_t i = 0; i < last; ++i) {
            const auto q = px(pts[i]);
            d += (i == 0 ? "M " : " L ") + fmt(q[0]) + " " + fmt(q[1]);
        }
        if (closed) d += " Z";
        svg += "  <path d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
               fmt(options.stroke_width) + "\" stroke-linejoin=\"round\"/>\n";
    }

    const auto start = px(poly.points.front());
    svg += "  <circle cx=\"" + fmt(start[0]) + "\" cy=\"" + fmt(start[1]) + "\" r=\"" +
           fmt(std::max(2.0 * options.stroke_width, 4.0)) + "\" fill=\"#d33\"/>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace ptraj
