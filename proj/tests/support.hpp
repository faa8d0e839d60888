#pragma once

// Test-only reference implementations and fixtures. The DFT oracle here is a
// deliberately naive O(N^2) double sum sharing no code with the library's
// transform path.

#include <png.h>
#include <stdlib.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ptraj/frame_ingest.hpp"
#include "ptraj/phase_correlation.hpp"

namespace testsupport {

inline std::vector<std::complex<double>> dft2_direct(const ptraj::Frame& f) {
    const int w = f.width, h = f.height;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(w) * h);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            std::complex<double> sum = 0.0;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double angle = -2.0 * std::numbers::pi *
                                         (static_cast<double>(u) * x / w +
                                          static_cast<double>(v) * y / h);
                    sum += f.at(x, y) * std::complex<double>(std::cos(angle), std::sin(angle));
                }
            }
            out[static_cast<std::size_t>(v) * w + u] = sum;
        }
    }
    return out;
}

// Whole reference route: direct DFTs, own normalization, direct inverse.
inline ptraj::Surface surface_direct(const ptraj::Frame& a, const ptraj::Frame& b, double eps) {
    const int w = a.width, h = a.height;
    const auto ga = dft2_direct(a);
    const auto gb = dft2_direct(b);
    std::vector<std::complex<double>> r(ga.size());
    for (std::size_t i = 0; i < ga.size(); ++i) {
        const std::complex<double> x = ga[i] * std::conj(gb[i]);
        const double mag = std::abs(x);
        r[i] = x / (mag < eps ? eps : mag);
    }
    ptraj::Surface surface;
    surface.width = w;
    surface.height = h;
    surface.values.resize(r.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::complex<double> sum = 0.0;
            for (int v = 0; v < h; ++v) {
                for (int u = 0; u < w; ++u) {
                    const double angle = 2.0 * std::numbers::pi *
                                         (static_cast<double>(u) * x / w +
                                          static_cast<double>(v) * y / h);
                    sum += r[static_cast<std::size_t>(v) * w + u] *
                           std::complex<double>(std::cos(angle), std::sin(angle));
                }
            }
            surface.values[static_cast<std::size_t>(y) * w + x] =
                sum.real() / (static_cast<double>(w) * h);
        }
    }
    return surface;
}

struct PeakRef {
    int dx = 0;
    int dy = 0;
    double value = 0.0;
};

inline PeakRef peak_direct(const ptraj::Surface& surface) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < surface.values.size(); ++i) {
        if (surface.values[i] > surface.values[best]) best = i;
    }
    PeakRef ref;
    const int px = static_cast<int>(best % surface.width);
    const int py = static_cast<int>(best / surface.width);
    ref.dx = px < (surface.width + 1) / 2 ? px : px - surface.width;
    ref.dy = py < (surface.height + 1) / 2 ? py : py - surface.height;
    ref.value = surface.values[best];
    return ref;
}

inline ptraj::Frame random_frame(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ptraj::Frame f;
    f.width = w;
    f.height = h;
    f.pixels.resize(static_cast<std::size_t>(w) * h);
    for (double& v : f.pixels) {
        v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    return f;
}

class TempDir {
public:
    TempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "ptraj_test_XXXXXX").string();
        if (!mkdtemp(tmpl.data())) {
            std::perror("mkdtemp");
            std::abort();
        }
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string sub(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_png(const std::string& path, int w, int h, int color_type, int depth,
                      const std::vector<unsigned char>& row_template) {
    std::FILE* file = std::fopen(path.c_str(), "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    png_init_io(png, file);
    png_set_IHDR(png, info, w, h, depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < h; ++y) {
        png_write_row(png, const_cast<png_bytep>(row_template.data()));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
}

inline void write_rgb_png(const std::string& path, int w, int h, unsigned char r, unsigned char g,
                          unsigned char b) {
    std::vector<unsigned char> row(static_cast<std::size_t>(w) * 3);
    for (int x = 0; x < w; ++x) {
        row[3 * x] = r;
        row[3 * x + 1] = g;
        row[3 * x + 2] = b;
    }
    write_png(path, w, h, PNG_COLOR_TYPE_RGB, 8, row);
}

inline void write_gray_png(const std::string& path, int w, int h, unsigned value, int depth) {
    std::vector<unsigned char> row;
    for (int x = 0; x < w; ++x) {
        if (depth == 16) {
            row.push_back(static_cast<unsigned char>(value >> 8));
            row.push_back(static_cast<unsigned char>(value & 0xff));
        } else {
            row.push_back(static_cast<unsigned char>(value));
        }
    }
    write_png(path, w, h, PNG_COLOR_TYPE_GRAY, depth, row);
}

}  // namespace testsupport
