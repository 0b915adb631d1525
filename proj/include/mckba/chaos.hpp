#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mckba {

// Q0.32 fixed-point state of the Logistic map: value = raw / 2^32 in [0, 1).
struct FixedState {
  uint32_t raw = 0;

  double value() const { return raw / 4294967296.0; }
  bool operator==(const FixedState&) const = default;
};

// mu = 3.9 in Q4.28.
inline constexpr uint32_t kMuQ4_28 = 1046898278u;

// One iteration x -> mu * x * (1 - x), computed as the floor of the exact
// integer product MU * raw * (2^32 - raw) / 2^60. A single truncation keeps
// the quantization error below one Q0.32 unit plus the mu rounding, which is
// what the mu-consistency bound of mu_consistent requires; chaining two
// truncated multiplies is too lossy for it. Result never overflows 32 bits
// (3.9/4 < 1) and never reaches 0 from a nonzero state.
FixedState logistic_step(FixedState x);

// Orbit [x0, f(x0), f^2(x0), ...] of length count; starts at x0 itself.
std::vector<FixedState> generate_states(FixedState x0, size_t count);

// PRBS bits b(l) and the 2-bit control codes B(i) = 2*b(2i) + b(2i+1)
// driving the cipher's branch selection.
struct ControlSeq {
  std::vector<uint8_t> bits;   // each 0 or 1
  std::vector<uint8_t> codes;  // each in {0,1,2,3}

  bool operator==(const ControlSeq&) const = default;
};

// Unrolls states into bits MSB-first (b(32i+j-1) is bit 32-j of raw(i),
// j = 1..32) and derives the control codes.
ControlSeq states_to_prbs(std::span<const FixedState> states);

// Inverse repacking; bit count must be a multiple of 32 (length_mismatch).
std::vector<FixedState> bits_to_states(std::span<const uint8_t> bits);

// Recomputes codes[i] = 2*bits[2i] + bits[2i+1] for an arbitrary bit string
// (trailing odd bit ignored).
std::vector<uint8_t> codes_from_bits(std::span<const uint8_t> bits);

struct MuConsistency {
  bool consistent = false;
  double mu_estimate = 0.0;
  double bound = 0.0;
  int m = 0;  // smallest m with x(k+1) >= 2^-m
};

// Tests whether (xk, xk1) fit x(k+1) = 3.9 * x(k) * (1 - x(k)) within the
// fixed-point error bound 2^(m+3)/2^32. Throws degenerate_state when
// xk.raw == 0 (so x*(1-x) == 0) or xk1.raw == 0.
MuConsistency mu_consistent(FixedState xk, FixedState xk1);

}  // namespace mckba
