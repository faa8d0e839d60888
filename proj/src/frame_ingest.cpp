#include "ptraj/frame_ingest.hpp"

#include <glob.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "ptraj/errors.hpp"
#include "ptraj/image_io.hpp"

namespace fs = std::filesystem;

namespace ptraj {

double luminance_bt601(double r, double g, double b) {
    double y = (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
    return std::clamp(y, 0.0, 1.0);
}

Frame downscale(const Frame& frame, int factor) {
    if (factor < 1) {
        throw Error(ErrorCategory::Data, "downscale-too-aggressive", "factor must be >= 1");
    }
    if (factor == 1) {
        return frame;
    }
    if (frame.width < 8 * factor || frame.height < 8 * factor) {
        throw Error(ErrorCategory::Data, "downscale-too-aggressive",
                    "frame " + std::to_string(frame.width) + "x" + std::to_string(frame.height) +
                        " too small for factor " + std::to_string(factor));
    }
    Frame out;
    out.width = frame.width / factor;
    out.height = frame.height / factor;
    out.index = frame.index;
    out.pixels.resize(static_cast<std::size_t>(out.width) * out.height);
    const double inv_block = 1.0 / (static_cast<double>(factor) * factor);
    for (int oy = 0; oy < out.height; ++oy) {
        for (int ox = 0; ox < out.width; ++ox) {
            double sum = 0.0;
            for (int dy = 0; dy < factor; ++dy) {
                for (int dx = 0; dx < factor; ++dx) {
                    sum += frame.at(ox * factor + dx, oy * factor + dy);
                }
            }
            out.at(ox, oy) = sum * inv_block;
        }
    }
    return out;
}

Frame apply_window(const Frame& frame, WindowKind kind) {
    if (kind == WindowKind::None) {
        return frame;
    }
    auto hann = [](int n) {
        std::vector<double> w(static_cast<std::size_t>(n));
        if (n == 1) {
            w[0] = 1.0;
            return w;
        }
        for (int i = 0; i < n; ++i) {
            w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
        }
        return w;
    };
    const std::vector<double> wx = hann(frame.width);
    const std::vector<double> wy = hann(frame.height);
    Frame out = frame;
    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            out.at(x, y) = frame.at(x, y) * wx[x] * wy[y];
        }
    }
    return out;
}

namespace {

bool image_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".pgm" || ext == ".png";
}

std::vector<std::string> expand_source(const std::string& source) {
    std::vector<std::string> paths;
    std::error_code ec;
    if (fs::is_directory(source, ec)) {
        for (const auto& entry : fs::directory_iterator(source)) {
            if (entry.is_regular_file() && image_extension(entry.path())) {
                paths.push_back(entry.path().string());
            }
        }
    } else {
        glob_t results{};
        int rc = ::glob(source.c_str(), 0, nullptr, &results);
        if (rc == 0) {
            for (std::size_t i = 0; i < results.gl_pathc; ++i) {
                std::string p = results.gl_pathv[i];
                if (fs::is_regular_file(p, ec)) {
                    paths.push_back(std::move(p));
                }
            }
        }
        globfree(&results);
        if (rc != 0) {
            throw Error(ErrorCategory::Data, "ingest-failure",
                        source + ": no such directory and no files match");
        }
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

}  // namespace

std::vector<Frame> load_sequence(const std::string& source, const IngestOptions& options) {
    std::vector<std::string> paths = expand_source(source);
    if (paths.size() < 2) {
        throw Error(ErrorCategory::Data, "sequence-too-short",
                    "need at least 2 frames, found " + std::to_string(paths.size()) + " in " +
                        source);
    }
    std::vector<Frame> frames;
    frames.reserve(paths.size());
    for (const std::string& path : paths) {
        Frame frame = read_image(path);
        frame = downscale(frame, options.downscale_factor);
        frame.index = static_cast<int>(frames.size());
        if (!frames.empty() && !frame.same_dims(frames.front())) {
            throw Error(ErrorCategory::Data, "inconsistent-dimensions",
                        path + " is " + std::to_string(frame.width) + "x" +
                            std::to_string(frame.height) + ", expected " +
                            std::to_string(frames.front().width) + "x" +
                            std::to_string(frames.front().height));
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

WindowKind parse_window_kind(const std::string& name) {
    if (name == "none") return WindowKind::None;
    if (name == "hann") return WindowKind::Hann;
    throw Error(ErrorCategory::Usage, "invalid-window", "unknown window kind '" + name + "'");
}

const char* window_kind_name(WindowKind kind) {
    return kind == WindowKind::Hann ? "hann" : "none";
}

}  // namespace ptraj
