#pragma once

#include <iosfwd>
#include <string>

#include "mckba/bitcodec.hpp"

namespace mckba {

// Binary PGM (P5, maxval 255). The writer emits "P5\n<w> <h>\n255\n" followed
// by raster-order bytes; the reader accepts arbitrary whitespace and
// '#'-comments in the header. Anything else throws parse_error.
Image read_pgm(std::istream& in);
Image read_pgm_file(const std::string& path);
void write_pgm(const Image& image, std::ostream& out);
void write_pgm_file(const Image& image, const std::string& path);

// Headerless 8-bit row-major dumps, one byte per pixel.
Image read_raw_file(const std::string& path, int width, int height);
void write_raw_file(const Image& image, const std::string& path);

}  // namespace mckba
