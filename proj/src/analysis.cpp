#include "mckba/analysis.hpp"

#include <bit>
#include <stdexcept>

#include "mckba/errors.hpp"

namespace mckba {

namespace {

void collect_changes(const ElementSeq& a, const ElementSeq& b,
                     std::vector<BitLocation>& out) {
  for (size_t i = 0; i < a.elements.size(); ++i) {
    uint64_t diff = a.elements[i] ^ b.elements[i];
    while (diff) {
      const int bit = std::countr_zero(diff);
      out.push_back({i, bit});
      diff &= diff - 1;
    }
  }
}

}  // namespace

DiffusionReport plaintext_diffusion(const SecretKey& key,
                                    const ControlSeq& codes,
                                    const ElementSeq& plain, size_t element,
                                    int bit) {
  if (element >= plain.elements.size() || bit < 0 || bit >= plain.n)
    throw Error(errc::length_mismatch, "flip position out of range");

  ElementSeq flipped = plain;
  flipped.elements[element] ^= uint64_t{1} << bit;

  const ElementSeq base_c = encrypt_elements(plain, key, codes);
  const ElementSeq flip_c = encrypt_elements(flipped, key, codes);

  DiffusionReport report;
  report.flipped = {element, bit};
  collect_changes(base_c, flip_c, report.changed);
  report.count = report.changed.size();

  for (const auto& loc : report.changed)
    if (loc.element != element || loc.bit < bit)
      throw std::logic_error(
          "diffusion confinement violated: change escaped the flipped span");
  return report;
}

KeyDiffusionStats key_diffusion(const SecretKey& key, const ControlSeq& codes,
                                const ElementSeq& plain, bool flip_key1,
                                int bit) {
  if (bit < 0 || bit >= key.n)
    throw Error(errc::length_mismatch, "key bit out of range");

  SecretKey flipped = key;
  (flip_key1 ? flipped.key1 : flipped.key2) ^= uint64_t{1} << bit;

  const ElementSeq base_c = encrypt_elements(plain, key, codes);
  const ElementSeq flip_c = encrypt_elements(plain, flipped, codes);

  KeyDiffusionStats stats;
  stats.flipped_key1 = flip_key1;
  stats.flipped_bit = bit;
  stats.per_element_changed.reserve(plain.elements.size());
  for (size_t i = 0; i < plain.elements.size(); ++i) {
    const int changed =
        std::popcount(base_c.elements[i] ^ flip_c.elements[i]);
    stats.per_element_changed.push_back(changed);
    stats.histogram[changed]++;
    stats.total_changed += static_cast<size_t>(changed);
  }
  return stats;
}

MonobitStats monobit_stats(const ControlSeq& codes) {
  if (codes.bits.size() < 1024)
    throw Error(errc::insufficient_data,
                "monobit statistic needs at least 1024 bits, got " +
                    std::to_string(codes.bits.size()));
  MonobitStats stats;
  stats.bit_count = codes.bits.size();
  for (uint8_t b : codes.bits) stats.ones += b;
  stats.ones_fraction =
      static_cast<double>(stats.ones) / static_cast<double>(stats.bit_count);
  const double diff = 2.0 * static_cast<double>(stats.ones) -
                      static_cast<double>(stats.bit_count);
  stats.chi_square = diff * diff / static_cast<double>(stats.bit_count);
  return stats;
}

}  // namespace mckba
