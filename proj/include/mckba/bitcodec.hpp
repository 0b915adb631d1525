#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mckba {

// 8-bit gray-scale image in raster order (row-major, one byte per pixel).
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  size_t pixel_count() const { return pixels.size(); }
  bool operator==(const Image&) const = default;
};

// Sequence of n-bit elements carved from the image bit stream. Bit l of the
// stream is bit (l mod 8) of pixel floor(l/8) (LSB-first within a pixel);
// element i packs stream bits n*i .. n*i+n-1 with bit j weighted 2^j.
// The tail is zero-padded to a whole element; pad_bits records how many.
struct ElementSeq {
  int n = 0;
  std::vector<uint64_t> elements;
  int pad_bits = 0;

  bool operator==(const ElementSeq&) const = default;
};

// All-ones mask for n-bit values, n in [1, 64].
inline uint64_t element_mask(int n) {
  return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
}

// Packs the image into n-bit elements. Throws empty_image / bad_block_width.
ElementSeq image_to_elements(const Image& image, int n);

// Exact inverse of image_to_elements for the given dimensions; padding bits
// are dropped. Throws length_mismatch when the element bit count minus
// pad_bits does not equal 8*width*height.
Image elements_to_image(const ElementSeq& seq, int width, int height);

}  // namespace mckba
