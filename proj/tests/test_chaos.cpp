#include <bit>
#include <cmath>

#include "doctest.h"
#include "mckba/chaos.hpp"
#include "mckba/errors.hpp"
#include "mckba/rng.hpp"

using namespace mckba;

namespace {

// Independent oracle for the fixed-point step: same quantization contract
// (floor of MU * raw * (2^32 - raw) / 2^60) evaluated without 128-bit
// arithmetic, by splitting the product into 32-bit halves.
uint32_t step_oracle(uint32_t raw) {
  const uint64_t prod = static_cast<uint64_t>(raw) * ((uint64_t{1} << 32) - raw);
  const uint64_t hi = kMuQ4_28 * (prod >> 32);        // < 2^60
  const uint64_t lo = kMuQ4_28 * (prod & 0xFFFFFFFFull);
  return static_cast<uint32_t>((hi + (lo >> 32)) >> 28);
}

}  // namespace

TEST_CASE("logistic_step fixed point at zero") {
  CHECK(logistic_step(FixedState{0}).raw == 0);
}

TEST_CASE("logistic_step at x=0.5 matches the closed form and 3.9/4") {
  const FixedState half{uint32_t{1} << 31};
  const uint32_t expected = static_cast<uint32_t>(
      (static_cast<uint64_t>(kMuQ4_28) << 30) >> 28);  // product term is exact
  const FixedState next = logistic_step(half);
  CHECK(next.raw == expected);
  CHECK(next.raw == step_oracle(half.raw));
  CHECK(std::fabs(next.value() - 0.975) < std::ldexp(1.0, -28));
}

TEST_CASE("logistic_step agrees with the independent oracle everywhere sampled") {
  CHECK(step_oracle(319684607u) == 1153969919u);
  CHECK(logistic_step(FixedState{319684607u}).raw == 1153969919u);

  SplitMix64 rng(0xC4A05);
  for (int i = 0; i < 20000; ++i) {
    const uint32_t raw = static_cast<uint32_t>(rng.next());
    REQUIRE(logistic_step(FixedState{raw}).raw == step_oracle(raw));
  }
}

TEST_CASE("generate_states starts at x0 and chains the step") {
  const FixedState x0{uint32_t{1} << 31};
  CHECK(generate_states(x0, 0).empty());

  const auto one = generate_states(x0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == x0);

  const auto three = generate_states(x0, 3);
  REQUIRE(three.size() == 3);
  CHECK(three[0] == x0);
  CHECK(three[1] == logistic_step(x0));
  CHECK(three[2] == logistic_step(logistic_step(x0)));
}

TEST_CASE("states_to_prbs emits bits MSB-first") {
  const FixedState half{uint32_t{1} << 31};  // 0.5 = .100...0
  const ControlSeq seq = states_to_prbs(std::vector<FixedState>{half});
  REQUIRE(seq.bits.size() == 32);
  CHECK(seq.bits[0] == 1);
  for (size_t i = 1; i < 32; ++i) REQUIRE(seq.bits[i] == 0);

  const ControlSeq tiny = states_to_prbs(std::vector<FixedState>{FixedState{1}});
  REQUIRE(tiny.bits.size() == 32);
  for (size_t i = 0; i < 31; ++i) REQUIRE(tiny.bits[i] == 0);
  CHECK(tiny.bits[31] == 1);
}

TEST_CASE("control codes follow B(i) = 2 b(2i) + b(2i+1)") {
  // 0.5 state gives bits 1,0,1,1,... when we patch in a second state.
  ControlSeq seq;
  seq.bits = {1, 0, 1, 1};
  seq.codes = codes_from_bits(seq.bits);
  REQUIRE(seq.codes.size() == 2);
  CHECK(seq.codes[0] == 2);
  CHECK(seq.codes[1] == 3);
}

TEST_CASE("prbs pack/unpack round trips") {
  SplitMix64 rng(0x9AC4);
  std::vector<FixedState> states;
  for (int i = 0; i < 17; ++i)
    states.push_back(FixedState{static_cast<uint32_t>(rng.next())});

  const ControlSeq seq = states_to_prbs(states);
  CHECK(seq.bits.size() == 32 * states.size());
  CHECK(seq.codes.size() == 16 * states.size());
  CHECK(bits_to_states(seq.bits) == states);

  // Converse on a 32-aligned random bit string.
  std::vector<uint8_t> bits(32 * 5);
  for (auto& b : bits) b = static_cast<uint8_t>(rng.next() & 1);
  CHECK(states_to_prbs(bits_to_states(bits)).bits == bits);

  std::vector<uint8_t> ragged(33, 0);
  try {
    bits_to_states(ragged);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == errc::length_mismatch);
  }
}

TEST_CASE("mu_consistent accepts genuine pairs and rejects the obvious impostor") {
  // (0.5, 0.5): mu~ = 2.0, m = 1, bound = 2^4/2^32.
  const FixedState half{uint32_t{1} << 31};
  const MuConsistency mc = mu_consistent(half, half);
  CHECK(mc.mu_estimate == doctest::Approx(2.0));
  CHECK(mc.m == 1);
  CHECK(mc.bound == std::ldexp(1.0, 4 - 32));
  CHECK_FALSE(mc.consistent);

  SplitMix64 rng(0x3317);
  int genuine_checked = 0;
  while (genuine_checked < 2000) {
    FixedState x{static_cast<uint32_t>(rng.next())};
    if (x.raw == 0) continue;
    const FixedState x1 = logistic_step(x);
    if (x1.raw < (uint32_t{1} << 24)) continue;  // keep x(k+1) >= 2^-8
    const MuConsistency genuine = mu_consistent(x, x1);
    REQUIRE(genuine.consistent);
    ++genuine_checked;
  }

  try {
    mu_consistent(FixedState{0}, half);
    FAIL("expected DegenerateState");
  } catch (const Error& e) {
    CHECK(e.code() == errc::degenerate_state);
  }
}

TEST_CASE("random unrelated pairs almost never pass the mu test") {
  SplitMix64 rng(0x600D);
  const int samples = 200000;
  int accepts = 0;
  for (int i = 0; i < samples; ++i) {
    const FixedState a{static_cast<uint32_t>(rng.next())};
    const FixedState b{static_cast<uint32_t>(rng.next())};
    if (a.raw == 0 || b.raw == 0) continue;
    if (mu_consistent(a, b).consistent) ++accepts;
  }
  // Expected acceptance scale is ~2^(m+4)/(3.9*2^32) per pair; even 10x that
  // stays far below this ceiling.
  CHECK(accepts <= samples / 10000);
}
