#include "mckba/imageio.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "mckba/errors.hpp"

namespace mckba {

namespace {

// Skips whitespace and '#'-to-end-of-line comments, then reads one
// non-negative decimal token.
long read_header_number(std::istream& in, const char* what) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) throw Error(errc::parse_error, std::string("PGM header ended before ") + what);
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  long value = 0;
  if (!(in >> value) || value < 0)
    throw Error(errc::parse_error, std::string("bad PGM ") + what);
  return value;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::parse_error, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::parse_error, "cannot write " + path);
  return out;
}

}  // namespace

Image read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5')
    throw Error(errc::parse_error, "not a binary PGM (P5) file");

  const long width = read_header_number(in, "width");
  const long height = read_header_number(in, "height");
  const long maxval = read_header_number(in, "maxval");
  if (width <= 0 || height <= 0 || width > 1000000 || height > 1000000)
    throw Error(errc::parse_error, "PGM dimensions out of range");
  if (maxval != 255)
    throw Error(errc::parse_error,
                "only maxval 255 is supported, got " + std::to_string(maxval));
  in.get();  // single whitespace separating header from raster

  Image image;
  image.width = static_cast<int>(width);
  image.height = static_cast<int>(height);
  image.pixels.resize(static_cast<size_t>(width) * static_cast<size_t>(height));
  in.read(reinterpret_cast<char*>(image.pixels.data()),
          static_cast<std::streamsize>(image.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels.size()))
    throw Error(errc::parse_error, "PGM raster data truncated");
  return image;
}

Image read_pgm_file(const std::string& path) {
  auto in = open_in(path);
  return read_pgm(in);
}

void write_pgm(const Image& image, std::ostream& out) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm_file(const Image& image, const std::string& path) {
  auto out = open_out(path);
  write_pgm(image, out);
  if (!out) throw Error(errc::parse_error, "failed writing " + path);
}

Image read_raw_file(const std::string& path, int width, int height) {
  if (width <= 0 || height <= 0)
    throw Error(errc::bad_dimensions, "raw dimensions must be positive");
  auto in = open_in(path);
  Image image;
  image.width = width;
  image.height = height;
  image.pixels.resize(static_cast<size_t>(width) * static_cast<size_t>(height));
  in.read(reinterpret_cast<char*>(image.pixels.data()),
          static_cast<std::streamsize>(image.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels.size()))
    throw Error(errc::parse_error, "raw file shorter than width*height");
  return image;
}

void write_raw_file(const Image& image, const std::string& path) {
  auto out = open_out(path);
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error(errc::parse_error, "failed writing " + path);
}

}  // namespace mckba
