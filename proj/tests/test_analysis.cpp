#include <bit>
#include <cmath>

#include "doctest.h"
#include "mckba/analysis.hpp"
#include "mckba/errors.hpp"
#include "mckba/rng.hpp"

using namespace mckba;

namespace {

ControlSeq fixed_codes(std::vector<uint8_t> codes) {
  ControlSeq seq;
  seq.codes = std::move(codes);
  for (uint8_t c : seq.codes) {
    seq.bits.push_back((c >> 1) & 1);
    seq.bits.push_back(c & 1);
  }
  return seq;
}

}  // namespace

TEST_CASE("plaintext diffusion: top-bit flip moves exactly one cipher bit") {
  const SecretKey key = keygen(8, 3);
  const ControlSeq codes = control_codes_for(key, 4);
  ElementSeq plain{8, {10, 20, 30, 40}, 0};

  const DiffusionReport r = plaintext_diffusion(key, codes, plain, 2, 7);
  CHECK(r.count == 1);
  REQUIRE(r.changed.size() == 1);
  CHECK(r.changed[0] == BitLocation{2, 7});
  CHECK(r.count == r.changed.size());
}

TEST_CASE("plaintext diffusion: carry chain from bit 0 of an all-ones element") {
  // Oracle: encrypt both versions directly and diff.
  SecretKey key{8, 1, 1, FixedState{1}};  // addend 1, element API
  const ControlSeq codes = fixed_codes({3});
  ElementSeq plain{8, {0xFF}, 0};

  const uint64_t base = encrypt_elements(plain, key, codes).elements[0];
  ElementSeq flipped_plain{8, {0xFE}, 0};
  const uint64_t other = encrypt_elements(flipped_plain, key, codes).elements[0];
  const int expected = std::popcount(base ^ other);
  CHECK(expected > 1);

  const DiffusionReport r = plaintext_diffusion(key, codes, plain, 0, 0);
  CHECK(static_cast<int>(r.count) == expected);
  for (const auto& loc : r.changed) REQUIRE(loc.element == 0);
}

TEST_CASE("plaintext diffusion: changed-bit count never exceeds n - m (exhaustive n <= 8)") {
  for (int n = 1; n <= 8; ++n) {
    const uint64_t mask = element_mask(n);
    SecretKey key{n, 0, 0, FixedState{1}};
    for (uint64_t k = 0; k <= mask; ++k) {
      key.key1 = k;
      key.key2 = (k * 7 + 3) & mask;
      for (int code = 0; code < 4; ++code) {
        const ControlSeq codes = fixed_codes({static_cast<uint8_t>(code)});
        for (uint64_t j = 0; j <= mask; ++j) {
          ElementSeq plain{n, {j}, 0};
          for (int m = 0; m < n; ++m) {
            const DiffusionReport r = plaintext_diffusion(key, codes, plain, 0, m);
            REQUIRE(r.count <= static_cast<size_t>(n - m));
            for (const auto& loc : r.changed) REQUIRE(loc.bit >= m);
          }
        }
      }
    }
  }
}

TEST_CASE("key diffusion: top-bit flips never change any output (exhaustive n <= 10)") {
  for (int n = 2; n <= 10; ++n) {
    const uint64_t mask = element_mask(n);
    for (uint64_t k = 0; k <= mask; ++k) {
      SecretKey key{n, k, (k * 5 + 1) & mask, FixedState{1}};
      const ControlSeq codes = fixed_codes({0, 1, 2, 3});
      ElementSeq plain{n, {k & mask, (k + 1) & mask, (k * 3) & mask, mask ^ k}, 0};
      for (bool which : {true, false}) {
        const KeyDiffusionStats stats =
            key_diffusion(key, codes, plain, which, n - 1);
        REQUIRE(stats.total_changed == 0);
      }
    }
  }
}

TEST_CASE("key diffusion: the n=2 single-bit example") {
  SecretKey key{2, 0, 0, FixedState{1}};
  const ControlSeq codes = fixed_codes({3});
  ElementSeq plain{2, {1}, 0};
  // key1 0 -> 1 under B=3: (1+0)^0 = 1 becomes (1+1)^1 = 3.
  const KeyDiffusionStats stats = key_diffusion(key, codes, plain, true, 0);
  CHECK(stats.total_changed == 1);
  CHECK(stats.per_element_changed == std::vector<int>{1});
  CHECK(stats.histogram.at(1) == 1);
}

TEST_CASE("key diffusion histogram stays small for random instances") {
  SplitMix64 rng(0xD1F0);
  size_t at_most_two = 0, total = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const SecretKey key = keygen(32, rng.next());
    const ControlSeq codes = control_codes_for(key, 64);
    ElementSeq plain{32, {}, 0};
    for (int i = 0; i < 64; ++i) plain.elements.push_back(rng.next() & element_mask(32));
    const int bit = static_cast<int>(rng.below(31));  // below the top bit
    const KeyDiffusionStats stats =
        key_diffusion(key, codes, plain, trial % 2 == 0, bit);
    for (const auto& [changed, count] : stats.histogram) {
      total += count;
      if (changed <= 2) at_most_two += count;
    }
  }
  // Report-style check: changes concentrate on 0..2 bits per element.
  CHECK(at_most_two * 10 >= total * 9);
}

TEST_CASE("monobit statistics on constructed inputs") {
  ControlSeq ones;
  ones.bits.assign(2048, 1);
  ones.codes = codes_from_bits(ones.bits);
  const MonobitStats all_ones = monobit_stats(ones);
  CHECK(all_ones.ones_fraction == 1.0);
  CHECK(all_ones.chi_square == doctest::Approx(2048.0));

  ControlSeq alternating;
  for (int i = 0; i < 2048; ++i) alternating.bits.push_back(i & 1);
  alternating.codes = codes_from_bits(alternating.bits);
  const MonobitStats alt = monobit_stats(alternating);
  CHECK(alt.ones_fraction == 0.5);
  CHECK(alt.chi_square == 0.0);

  ControlSeq tiny;
  tiny.bits.assign(1023, 0);
  try {
    monobit_stats(tiny);
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == errc::insufficient_data);
  }
}

TEST_CASE("logistic-derived PRBS is measurably unbalanced over 2^16 bits") {
  // 2048 states from the canonical initial condition give 65536 bits.
  const auto states = generate_states(FixedState{319684607u}, 2048);
  const ControlSeq seq = states_to_prbs(states);
  const MonobitStats stats = monobit_stats(seq);
  CHECK(stats.bit_count == 65536);

  const double three_sigma = 3.0 * 0.5 / std::sqrt(65536.0);
  CHECK(std::fabs(stats.ones_fraction - 0.5) > three_sigma);
  CHECK(stats.chi_square > 9.0);
}
