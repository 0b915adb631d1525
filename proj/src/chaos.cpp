#include "mckba/chaos.hpp"

#include <bit>
#include <cmath>

#include "mckba/errors.hpp"

namespace mckba {

FixedState logistic_step(FixedState x) {
  const uint64_t r = x.raw;
  const uint64_t prod = r * ((uint64_t{1} << 32) - r);  // <= 2^62
  const unsigned __int128 scaled = static_cast<unsigned __int128>(prod) * kMuQ4_28;
  return FixedState{static_cast<uint32_t>(scaled >> 60)};
}

std::vector<FixedState> generate_states(FixedState x0, size_t count) {
  std::vector<FixedState> states;
  states.reserve(count);
  FixedState x = x0;
  for (size_t i = 0; i < count; ++i) {
    states.push_back(x);
    x = logistic_step(x);
  }
  return states;
}

ControlSeq states_to_prbs(std::span<const FixedState> states) {
  ControlSeq seq;
  seq.bits.reserve(states.size() * 32);
  for (const FixedState& s : states)
    for (int j = 31; j >= 0; --j)
      seq.bits.push_back(static_cast<uint8_t>((s.raw >> j) & 1));
  seq.codes = codes_from_bits(seq.bits);
  return seq;
}

std::vector<FixedState> bits_to_states(std::span<const uint8_t> bits) {
  if (bits.size() % 32 != 0)
    throw Error(errc::length_mismatch,
                "bit count " + std::to_string(bits.size()) +
                    " is not a multiple of 32");
  std::vector<FixedState> states(bits.size() / 32);
  for (size_t i = 0; i < states.size(); ++i) {
    uint32_t raw = 0;
    for (int j = 0; j < 32; ++j) raw = (raw << 1) | bits[32 * i + j];
    states[i].raw = raw;
  }
  return states;
}

std::vector<uint8_t> codes_from_bits(std::span<const uint8_t> bits) {
  std::vector<uint8_t> codes(bits.size() / 2);
  for (size_t i = 0; i < codes.size(); ++i)
    codes[i] = static_cast<uint8_t>(2 * bits[2 * i] + bits[2 * i + 1]);
  return codes;
}

MuConsistency mu_consistent(FixedState xk, FixedState xk1) {
  if (xk.raw == 0 || xk1.raw == 0)
    throw Error(errc::degenerate_state, "x(k)*(1-x(k)) or x(k+1) is zero");

  MuConsistency result;
  // minimal m with x(k+1) >= 2^-m: position of the leading one.
  result.m = 33 - std::bit_width(xk1.raw);
  result.bound = std::ldexp(1.0, result.m + 3 - 32);
  const double denom = xk.value() * (1.0 - xk.value());
  result.mu_estimate = xk1.value() / denom;
  result.consistent = std::fabs(result.mu_estimate - 3.9) <= result.bound;
  return result;
}

}  // namespace mckba
