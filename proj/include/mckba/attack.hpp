#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mckba/bitcodec.hpp"

namespace mckba {

// One chosen-plaintext differential: ciphertext XOR y observed for the plain
// element pair (a, b) encrypted under the same unknown addend x, i.e.
// y = ((a + x) mod 2^n) ^ ((b + x) mod 2^n).
struct QueryObservation {
  uint64_t a = 0;
  uint64_t b = 0;
  uint64_t y = 0;
};

// Per-element (addend, xor-mask) pairs recovered by the differential attack.
// Addends are canonical: bit n-1 is always 0 (the differential cannot see it,
// and decryption does not need it).
struct EquivalentKey {
  struct Pair {
    uint64_t addend = 0;
    uint64_t mask = 0;
    bool operator==(const Pair&) const = default;
  };

  int n = 0;
  std::vector<Pair> pairs;

  bool operator==(const EquivalentKey&) const = default;
};

// The four constant element values v0..v3 whose 3-bit repeating patterns
// (digits 1, 7, 4, 6, LSB-first) make every bit of the addend solvable:
// vk = sum_{j=0}^{ceil(n/3)-1} digit_k * 8^j mod 2^n.
std::array<uint64_t, 4> chosen_element_values(int n);

// The four chosen plaintexts as constant element sequences of the given
// length (pad_bits 0; callers embedding them in images pick dimensions with
// 8*width*height divisible by n).
std::array<ElementSeq, 4> chosen_plain_sequences(int n, size_t element_count);

// Solves y = (a + x) ^ (b + x) (mod-2^n addition) for the low n-1 bits of x,
// proceeding bit by bit: at each position some observation must have
// a_i + 2*b_i + 4*ytilde_i in {1,2,4,7} with ytilde = y^a^b, which pins x_i
// from ytilde_{i+1} and the running carry. The three chosen_element_values
// query pairs guarantee coverage at every bit; other query sets may throw
// unresolvable_bit. For n == 1 returns 0 with no observations required.
uint64_t solve_modadd_xor(std::span<const QueryObservation> observations,
                          int n);

// ytilde_{i+1} as a function of (a_i, b_i, ytilde_i, x_i, c_i), tabulated.
// Matches the carry recursion c_{i+1} = maj(x_i, a_i, c_i) with the b-side
// carry c~_i = c_i ^ ytilde_i.
int table1_next(int a_i, int b_i, int ytilde_i, int x_i, int c_i);

// Runs solve_modadd_xor per element over the four chosen plain/cipher pairs
// and derives the xor mask from the J1 pair: mask_i = c1[i] ^ (p1[i] + addend).
// Sequences must share n and length (length_mismatch otherwise).
EquivalentKey recover_equivalent_key(const std::array<ElementSeq, 4>& plains,
                                     const std::array<ElementSeq, 4>& ciphers);

// Decrypts without the secret key: J(i) = ((J'(i) ^ mask_i) - addend_i)
// mod 2^n. The cipher may be shorter than the equivalent key, never longer.
ElementSeq equivalent_decrypt(const ElementSeq& cipher,
                              const EquivalentKey& ek);

// Verifies both top-bit invariance identities for one operand pair:
//   (a^x) - x == (a^x^H) - (x^H)  and  (a^~x) - x == (a^~(x^H)) - (x^H)
// with H = 2^(n-1), subtraction mod 2^n, complement within n bits. These are
// what make the canonical (top-bit-zero) addend decrypt exactly.
bool msb_invariance_check(uint64_t a, uint64_t x, int n);

}  // namespace mckba
