#pragma once

#include <string>

#include "ptraj/frame_ingest.hpp"

namespace ptraj {

// Reads a binary PGM (P5, 8- or 16-bit) or PNG (gray or RGB, 8- or 16-bit)
// into a luminance frame. Throws Error("ingest-failure") naming the file on
// anything unreadable or corrupt.
Frame read_image(const std::string& path);

// Writes a frame as a 16-bit binary PGM (maxval 65535, big-endian samples).
void write_pgm16(const std::string& path, const Frame& frame);

}  // namespace ptraj
