#include "mckba/bitcodec.hpp"

#include "mckba/errors.hpp"

namespace mckba {

ElementSeq image_to_elements(const Image& image, int n) {
  if (n < 1 || n > 64)
    throw Error(errc::bad_block_width,
                "block width must be in [1, 64], got " + std::to_string(n));
  if (image.width <= 0 || image.height <= 0 || image.pixels.empty())
    throw Error(errc::empty_image, "image has no pixels");
  if (image.pixels.size() !=
      static_cast<size_t>(image.width) * static_cast<size_t>(image.height))
    throw Error(errc::length_mismatch, "pixel count does not match dimensions");

  const size_t total_bits = image.pixels.size() * 8;
  const size_t element_count = (total_bits + n - 1) / n;

  ElementSeq seq;
  seq.n = n;
  seq.pad_bits = static_cast<int>(element_count * n - total_bits);
  seq.elements.assign(element_count, 0);

  for (size_t l = 0; l < total_bits; ++l) {
    const uint64_t bit = (image.pixels[l >> 3] >> (l & 7)) & 1;
    seq.elements[l / n] |= bit << (l % n);
  }
  return seq;
}

Image elements_to_image(const ElementSeq& seq, int width, int height) {
  if (width <= 0 || height <= 0)
    throw Error(errc::empty_image, "target dimensions are empty");
  const size_t total_bits =
      static_cast<size_t>(width) * static_cast<size_t>(height) * 8;
  const size_t have_bits = seq.elements.size() * static_cast<size_t>(seq.n);
  if (have_bits < total_bits || have_bits - total_bits != static_cast<size_t>(seq.pad_bits))
    throw Error(errc::length_mismatch,
                "element sequence carries " + std::to_string(have_bits) +
                    " bits, image needs " + std::to_string(total_bits) +
                    " plus " + std::to_string(seq.pad_bits) + " pad bits");

  Image image;
  image.width = width;
  image.height = height;
  image.pixels.assign(total_bits / 8, 0);
  for (size_t l = 0; l < total_bits; ++l) {
    const uint8_t bit = (seq.elements[l / seq.n] >> (l % seq.n)) & 1;
    image.pixels[l >> 3] |= static_cast<uint8_t>(bit << (l & 7));
  }
  return image;
}

}  // namespace mckba
