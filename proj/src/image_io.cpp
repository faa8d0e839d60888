#include "ptraj/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "ptraj/errors.hpp"

namespace ptraj {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw Error(ErrorCategory::Data, "ingest-failure", path + ": " + why);
}

// Skips PGM whitespace and '#' comment lines, then reads one unsigned value.
int read_pgm_int(std::istream& in) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) return -1;
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 30) return -1;
        c = in.get();
    }
    return value;
}

Frame read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5') fail(path, "not a binary PGM (P5)");
    const int width = read_pgm_int(in);
    const int height = read_pgm_int(in);
    const int maxval = read_pgm_int(in);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) fail(path, "bad PGM header");

    const std::size_t count = static_cast<std::size_t>(width) * height;
    const bool wide = maxval > 255;
    std::vector<unsigned char> raw(count * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) fail(path, "truncated pixel data");

    Frame frame;
    frame.width = width;
    frame.height = height;
    frame.pixels.resize(count);
    const double scale = 1.0 / maxval;
    if (wide) {
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned v = (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
            frame.pixels[i] = std::min(1.0, v * scale);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            frame.pixels[i] = std::min(1.0, raw[i] * scale);
        }
    }
    return frame;
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* file = nullptr;

    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (file) std::fclose(file);
    }
};

Frame read_png(const std::string& path) {
    PngReader r;
    r.file = std::fopen(path.c_str(), "rb");
    if (!r.file) fail(path, "cannot open file");

    unsigned char header[8];
    if (std::fread(header, 1, 8, r.file) != 8 || png_sig_cmp(header, 0, 8)) {
        fail(path, "not a PNG file");
    }
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) fail(path, "libpng init failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(r.png))) {
        fail(path, "corrupt PNG data");
    }
    png_init_io(r.png, r.file);
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    const png_byte color_type = png_get_color_type(r.png, r.info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(r.png, r.info) < 8) {
        png_set_expand_gray_1_2_4_to_8(r.png);
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(r.png);
    png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    const png_uint_32 width = png_get_image_width(r.png, r.info);
    const png_uint_32 height = png_get_image_height(r.png, r.info);
    const int depth = png_get_bit_depth(r.png, r.info);
    const int channels = png_get_channels(r.png, r.info);
    if ((depth != 8 && depth != 16) || (channels != 1 && channels != 3)) {
        fail(path, "unsupported PNG layout (need gray or RGB, 8/16-bit)");
    }

    const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);
    std::vector<unsigned char> data(rowbytes * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = data.data() + y * rowbytes;
    png_read_image(r.png, rows.data());

    Frame frame;
    frame.width = static_cast<int>(width);
    frame.height = static_cast<int>(height);
    frame.pixels.resize(static_cast<std::size_t>(width) * height);
    const double maxval = depth == 16 ? 65535.0 : 255.0;

    auto sample = [&](const unsigned char* p, int c) -> double {
        if (depth == 16) {
            return (static_cast<unsigned>(p[2 * c]) << 8) | p[2 * c + 1];  // network order
        }
        return p[c];
    };
    const int bytes_per_px = channels * (depth / 8);
    for (png_uint_32 y = 0; y < height; ++y) {
        const unsigned char* row = rows[y];
        for (png_uint_32 x = 0; x < width; ++x) {
            const unsigned char* px = row + x * bytes_per_px;
            double lum;
            if (channels == 1) {
                lum = sample(px, 0) / maxval;
            } else {
                lum = (0.299 * sample(px, 0) + 0.587 * sample(px, 1) + 0.114 * sample(px, 2)) /
                      maxval;
            }
            frame.pixels[static_cast<std::size_t>(y) * width + x] = std::clamp(lum, 0.0, 1.0);
        }
    }
    return frame;
}

}  // namespace

Frame read_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) fail(path, "cannot open file");
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();
    if (magic[0] == 'P' && magic[1] == '5') return read_pgm(path);
    if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') return read_png(path);
    fail(path, "unrecognized image format");
}

void write_pgm16(const std::string& path, const Frame& frame) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCategory::Data, "ingest-failure", path + ": cannot write file");
    }
    out << "P5\n" << frame.width << " " << frame.height << "\n65535\n";
    std::vector<unsigned char> raw(frame.pixels.size() * 2);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        const double v = std::clamp(frame.pixels[i], 0.0, 1.0);
        const unsigned q = static_cast<unsigned>(std::lround(v * 65535.0));
        raw[2 * i] = static_cast<unsigned char>(q >> 8);
        raw[2 * i + 1] = static_cast<unsigned char>(q & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw Error(ErrorCategory::Data, "ingest-failure", path + ": write failed");
    }
}

}  // namespace ptraj
