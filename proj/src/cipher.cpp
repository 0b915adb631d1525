#include "mckba/cipher.hpp"

#include <bit>

#include "mckba/errors.hpp"
#include "mckba/rng.hpp"

namespace mckba {

namespace {

uint64_t encrypt_one(uint64_t j, uint64_t key1, uint64_t key2, int code,
                     uint64_t mask) {
  const uint64_t key = (code & 2) ? key1 : key2;
  const uint64_t sum = (j + key) & mask;
  // codes 3 and 1 xor with the key, codes 2 and 0 xnor (xor with ~key).
  return (code & 1) ? (sum ^ key) : (sum ^ key ^ mask);
}

uint64_t decrypt_one(uint64_t jp, uint64_t key1, uint64_t key2, int code,
                     uint64_t mask) {
  const uint64_t key = (code & 2) ? key1 : key2;
  const uint64_t sum = (code & 1) ? (jp ^ key) : (jp ^ key ^ mask);
  return (sum - key) & mask;
}

}  // namespace

SecretKey keygen(int n, uint64_t seed) {
  if (n < 4)
    throw Error(errc::bad_block_width,
                "key generation needs n >= 4, got " + std::to_string(n));

  SplitMix64 rng(seed);
  const uint64_t mask = element_mask(n);

  SecretKey key;
  key.n = n;
  key.key1 = rng.next() & mask;

  // Difference mask with exactly ceil(n/2) set bits: partial Fisher-Yates
  // over the bit positions. ceil(n/2) >= 2 guarantees at least one set bit
  // below n-1, so the low n-1 bits of the keys always differ.
  const int flips = (n + 1) / 2;
  int positions[64];
  for (int i = 0; i < n; ++i) positions[i] = i;
  uint64_t diff = 0;
  for (int i = 0; i < flips; ++i) {
    const int pick = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
    std::swap(positions[i], positions[pick]);
    diff |= uint64_t{1} << positions[i];
  }
  key.key2 = key.key1 ^ diff;

  uint32_t raw = static_cast<uint32_t>(rng.next());
  key.x0.raw = raw == 0 ? 1 : raw;  // x(0) must lie in (0,1)
  return key;
}

std::vector<std::string> validate_key(const SecretKey& key) {
  std::vector<std::string> violations;
  if (key.n < 1 || key.n > 64) {
    violations.push_back("block width " + std::to_string(key.n) +
                         " outside [1, 64]");
    return violations;
  }
  const uint64_t mask = element_mask(key.n);
  if (key.key1 > mask || key.key2 > mask)
    violations.push_back("sub-key exceeds 2^n - 1");

  const int want = (key.n + 1) / 2;
  const int got = std::popcount((key.key1 ^ key.key2) & mask);
  if (key.canonical) {
    // Top bits were zeroed by the attack; the constraint is satisfiable iff
    // restoring one or both top bits can reach the required popcount.
    const int low = std::popcount((key.key1 ^ key.key2) & (mask >> 1));
    if (low != want && low != want - 1)
      violations.push_back("no top-bit completion reaches popcount(key1^key2) = " +
                           std::to_string(want) + " (low bits give " +
                           std::to_string(low) + ")");
  } else if (got != want) {
    violations.push_back("popcount(key1^key2) = " + std::to_string(got) +
                         ", constraint requires " + std::to_string(want));
  }
  if (key.n >= 2 && ((key.key1 ^ key.key2) & (mask >> 1)) == 0)
    violations.push_back("key1 and key2 agree on the low n-1 bits");
  return violations;
}

ElementSeq encrypt_elements(const ElementSeq& plain, const SecretKey& key,
                            const ControlSeq& codes) {
  if (codes.codes.size() < plain.elements.size())
    throw Error(errc::length_mismatch,
                "control codes cover " + std::to_string(codes.codes.size()) +
                    " elements, sequence has " +
                    std::to_string(plain.elements.size()));
  const uint64_t mask = element_mask(plain.n);
  ElementSeq out = plain;
  for (size_t i = 0; i < out.elements.size(); ++i)
    out.elements[i] =
        encrypt_one(plain.elements[i], key.key1, key.key2, codes.codes[i], mask);
  return out;
}

ElementSeq decrypt_elements(const ElementSeq& cipher, const SecretKey& key,
                            const ControlSeq& codes) {
  if (codes.codes.size() < cipher.elements.size())
    throw Error(errc::length_mismatch,
                "control codes cover " + std::to_string(codes.codes.size()) +
                    " elements, sequence has " +
                    std::to_string(cipher.elements.size()));
  const uint64_t mask = element_mask(cipher.n);
  ElementSeq out = cipher;
  for (size_t i = 0; i < out.elements.size(); ++i)
    out.elements[i] =
        decrypt_one(cipher.elements[i], key.key1, key.key2, codes.codes[i], mask);
  return out;
}

size_t state_count_for(size_t element_count) {
  return (2 * element_count + 31) / 32;
}

ControlSeq control_codes_for(const SecretKey& key, size_t element_count) {
  const auto states = generate_states(key.x0, state_count_for(element_count));
  return states_to_prbs(states);
}

namespace {

void require_valid(const SecretKey& key) {
  auto violations = validate_key(key);
  if (!violations.empty()) {
    std::string what = "key rejected:";
    for (const auto& v : violations) what += " " + v + ";";
    throw Error(errc::invalid_key, what);
  }
}

}  // namespace

Image encrypt_image(const Image& image, const SecretKey& key) {
  require_valid(key);
  const ElementSeq plain = image_to_elements(image, key.n);
  const ControlSeq codes = control_codes_for(key, plain.elements.size());
  return elements_to_image(encrypt_elements(plain, key, codes), image.width,
                           image.height);
}

Image decrypt_image(const Image& image, const SecretKey& key) {
  require_valid(key);
  const ElementSeq cipher = image_to_elements(image, key.n);
  const ControlSeq codes = control_codes_for(key, cipher.elements.size());
  return elements_to_image(decrypt_elements(cipher, key, codes), image.width,
                           image.height);
}

}  // namespace mckba
