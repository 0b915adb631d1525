#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "mckba/bitcodec.hpp"
#include "mckba/chaos.hpp"
#include "mckba/cipher.hpp"

namespace mckba {

struct BitLocation {
  size_t element = 0;
  int bit = 0;
  bool operator==(const BitLocation&) const = default;
};

// Which cipher bits move when one plain bit is flipped.
struct DiffusionReport {
  BitLocation flipped;
  std::vector<BitLocation> changed;
  size_t count = 0;
};

// Flips bit `bit` of element `element` of the plain sequence, encrypts both
// versions and reports every differing cipher bit. The changes always stay
// inside the flipped element at positions >= bit (modular addition only
// carries upward, the xor stage is bitwise); that confinement is asserted.
DiffusionReport plaintext_diffusion(const SecretKey& key,
                                    const ControlSeq& codes,
                                    const ElementSeq& plain, size_t element,
                                    int bit);

// Effect of flipping one sub-key bit, measured rather than asserted: carry
// propagation can change more than one cipher bit per element.
struct KeyDiffusionStats {
  bool flipped_key1 = false;
  int flipped_bit = 0;
  std::vector<int> per_element_changed;
  std::map<int, size_t> histogram;  // changed-bit count -> element count
  size_t total_changed = 0;
};

KeyDiffusionStats key_diffusion(const SecretKey& key, const ControlSeq& codes,
                                const ElementSeq& plain, bool flip_key1,
                                int bit);

struct MonobitStats {
  size_t bit_count = 0;
  size_t ones = 0;
  double ones_fraction = 0.0;
  double chi_square = 0.0;  // (ones - zeros)^2 / total, 1 dof vs fair coin
};

// Balance of the PRBS bits. Throws insufficient_data below 1024 bits.
MonobitStats monobit_stats(const ControlSeq& codes);

}  // namespace mckba
