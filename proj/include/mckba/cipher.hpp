#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mckba/bitcodec.hpp"
#include "mckba/chaos.hpp"

namespace mckba {

// The cipher's secret key. Valid keys satisfy
//   popcount(key1 ^ key2) == ceil(n/2)
// and key1 != key2 on the low n-1 bits. `canonical` marks a key whose top
// bits were zeroed by the attack (the cipher is insensitive to them); for
// such keys validation checks that some completion of the top bits could
// satisfy the popcount constraint instead of the constraint itself.
struct SecretKey {
  int n = 0;
  uint64_t key1 = 0;
  uint64_t key2 = 0;
  FixedState x0;
  bool canonical = false;

  bool operator==(const SecretKey&) const = default;
};

// Deterministic key generation; the same (n, seed) always yields the same
// key. Throws bad_block_width for n < 4.
SecretKey keygen(int n, uint64_t seed);

// Returns a description of each violated key invariant; empty means ok.
std::vector<std::string> validate_key(const SecretKey& key);

// Element-wise encryption per the four-branch rule:
//   B=3: (J + key1) ^ key1      B=2: xnor((J + key1), key1)
//   B=1: (J + key2) ^ key2      B=0: xnor((J + key2), key2)
// with addition mod 2^n and xnor within the n-bit window. Invariant-violating
// keys are accepted here (the attack never sees key invariants); only the
// image-level API validates. Throws length_mismatch when codes are shorter
// than the element sequence.
ElementSeq encrypt_elements(const ElementSeq& plain, const SecretKey& key,
                            const ControlSeq& codes);

// Exact inverse of encrypt_elements under the same key and codes.
ElementSeq decrypt_elements(const ElementSeq& cipher, const SecretKey& key,
                            const ControlSeq& codes);

// Chaotic states needed to drive element_count elements (2 bits each,
// 32 bits per state, rounded up).
size_t state_count_for(size_t element_count);

// Runs the Logistic orbit from key.x0 and derives the control codes for
// element_count elements.
ControlSeq control_codes_for(const SecretKey& key, size_t element_count);

// Full pipeline: image -> elements -> encrypt -> image. Rejects invalid keys
// (invalid_key). decrypt_image(encrypt_image(im)) == im for any block width.
Image encrypt_image(const Image& image, const SecretKey& key);
Image decrypt_image(const Image& image, const SecretKey& key);

}  // namespace mckba
