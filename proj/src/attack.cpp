#include "mckba/attack.hpp"

#include "mckba/errors.hpp"

namespace mckba {

namespace {

inline int bit_of(uint64_t v, int i) { return static_cast<int>((v >> i) & 1); }

inline int majority(int a, int b, int c) { return (a & b) ^ (a & c) ^ (b & c); }

// ytilde_{i+1} for (a_i, b_i, ytilde_i) indexed as 4a+2b+y, rows (x_i, c_i).
constexpr int kTable1[4][8] = {
    {0, 0, 0, 1, 0, 0, 0, 1},  // (x,c) = (0,0)
    {0, 0, 1, 0, 1, 1, 0, 1},  // (0,1)
    {0, 1, 1, 1, 1, 0, 0, 0},  // (1,0)
    {0, 1, 0, 0, 0, 1, 0, 0},  // (1,1)
};

}  // namespace

std::array<uint64_t, 4> chosen_element_values(int n) {
  if (n < 1 || n > 64)
    throw Error(errc::bad_block_width,
                "block width must be in [1, 64], got " + std::to_string(n));
  const uint64_t mask = element_mask(n);
  // Repeating 3-bit digits 1, 7, 4, 6 (LSB-first), truncated to n bits.
  constexpr uint64_t digits[4] = {1, 7, 4, 6};
  std::array<uint64_t, 4> values{};
  const int groups = (n + 2) / 3;
  for (int k = 0; k < 4; ++k) {
    uint64_t v = 0;
    for (int j = groups - 1; j >= 0; --j) v = (v << 3) | digits[k];
    values[k] = v & mask;
  }
  return values;
}

std::array<ElementSeq, 4> chosen_plain_sequences(int n, size_t element_count) {
  const auto values = chosen_element_values(n);
  std::array<ElementSeq, 4> sequences;
  for (int k = 0; k < 4; ++k) {
    sequences[k].n = n;
    sequences[k].pad_bits = 0;
    sequences[k].elements.assign(element_count, values[k]);
  }
  return sequences;
}

int table1_next(int a_i, int b_i, int ytilde_i, int x_i, int c_i) {
  return kTable1[2 * x_i + c_i][4 * a_i + 2 * b_i + ytilde_i];
}

uint64_t solve_modadd_xor(std::span<const QueryObservation> observations,
                          int n) {
  if (n < 1 || n > 64)
    throw Error(errc::bad_block_width,
                "block width must be in [1, 64], got " + std::to_string(n));
  if (n == 1) return 0;  // y == a ^ b regardless of x

  struct Tracked {
    uint64_t a, b, ytilde;
    int carry;  // carry of a + x at the current bit
  };
  std::vector<Tracked> tracked;
  tracked.reserve(observations.size());
  for (const auto& o : observations)
    tracked.push_back({o.a, o.b, o.y ^ o.a ^ o.b, 0});

  uint64_t x = 0;
  for (int i = 0; i + 1 < n; ++i) {
    int xi = -1;
    for (const auto& t : tracked) {
      const int ai = bit_of(t.a, i);
      const int bi = bit_of(t.b, i);
      const int yi = bit_of(t.ytilde, i);
      const int yi1 = bit_of(t.ytilde, i + 1);
      switch (ai + 2 * bi + 4 * yi) {
        case 4:  // (a,b,ytilde) = (0,0,1): ytilde_{i+1} = x_i
          xi = yi1;
          break;
        case 7:  // (1,1,1): ytilde_{i+1} = ~x_i
          xi = 1 - yi1;
          break;
        case 1:  // (1,0,0) and (0,1,0): ytilde_{i+1} = x_i ^ c_i
        case 2:
          xi = yi1 ^ t.carry;
          break;
        default:
          continue;
      }
      break;
    }
    if (xi < 0)
      throw Error(errc::unresolvable_bit,
                  "no observation determines bit " + std::to_string(i), i);
    x |= static_cast<uint64_t>(xi) << i;
    for (auto& t : tracked) t.carry = majority(xi, bit_of(t.a, i), t.carry);
  }
  return x;  // bit n-1 left at 0
}

EquivalentKey recover_equivalent_key(const std::array<ElementSeq, 4>& plains,
                                     const std::array<ElementSeq, 4>& ciphers) {
  const int n = plains[0].n;
  const size_t count = plains[0].elements.size();
  for (int k = 0; k < 4; ++k) {
    if (plains[k].n != n || ciphers[k].n != n)
      throw Error(errc::length_mismatch, "sequences disagree on block width");
    if (plains[k].elements.size() != count || ciphers[k].elements.size() != count)
      throw Error(errc::length_mismatch, "sequences disagree on element count");
  }
  const uint64_t mask = element_mask(n);

  EquivalentKey ek;
  ek.n = n;
  ek.pairs.resize(count);
  for (size_t i = 0; i < count; ++i) {
    const QueryObservation obs[3] = {
        {plains[0].elements[i], plains[1].elements[i],
         ciphers[0].elements[i] ^ ciphers[1].elements[i]},
        {plains[0].elements[i], plains[2].elements[i],
         ciphers[0].elements[i] ^ ciphers[2].elements[i]},
        {plains[3].elements[i], plains[2].elements[i],
         ciphers[3].elements[i] ^ ciphers[2].elements[i]},
    };
    uint64_t addend;
    try {
      addend = solve_modadd_xor(obs, n);
    } catch (const Error& e) {
      if (e.code() != errc::unresolvable_bit) throw;
      throw Error(errc::unresolvable_bit,
                  "element " + std::to_string(i) + ": " + e.what(),
                  static_cast<long>(i));
    }
    ek.pairs[i].addend = addend;
    ek.pairs[i].mask =
        ciphers[1].elements[i] ^ ((plains[1].elements[i] + addend) & mask);
  }
  return ek;
}

ElementSeq equivalent_decrypt(const ElementSeq& cipher,
                              const EquivalentKey& ek) {
  if (cipher.n != ek.n)
    throw Error(errc::length_mismatch, "block width disagrees with the key");
  if (cipher.elements.size() > ek.pairs.size())
    throw Error(errc::length_mismatch,
                "cipher has " + std::to_string(cipher.elements.size()) +
                    " elements, equivalent key only " +
                    std::to_string(ek.pairs.size()));
  const uint64_t mask = element_mask(ek.n);
  ElementSeq out = cipher;
  for (size_t i = 0; i < out.elements.size(); ++i)
    out.elements[i] =
        ((cipher.elements[i] ^ ek.pairs[i].mask) - ek.pairs[i].addend) & mask;
  return out;
}

bool msb_invariance_check(uint64_t a, uint64_t x, int n) {
  const uint64_t mask = element_mask(n);
  const uint64_t high = uint64_t{1} << (n - 1);
  a &= mask;
  x &= mask;
  const uint64_t lhs1 = ((a ^ x) - x) & mask;
  const uint64_t rhs1 = ((a ^ x ^ high) - (x ^ high)) & mask;
  const uint64_t lhs2 = ((a ^ x ^ mask) - x) & mask;
  const uint64_t rhs2 = ((a ^ ((x ^ high) ^ mask)) - (x ^ high)) & mask;
  return lhs1 == rhs1 && lhs2 == rhs2;
}

}  // namespace mckba
