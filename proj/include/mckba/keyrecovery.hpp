#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mckba/attack.hpp"
#include "mckba/chaos.hpp"
#include "mckba/cipher.hpp"

namespace mckba {

// mu-consistency evidence for one consecutive state pair.
struct PairEvidence {
  size_t state_index = 0;  // k of the pair (x(k), x(k+1))
  double mu_estimate = 0.0;
  double bound = 0.0;
  bool consistent = false;
};

// One of the two candidate assignments of the distinct addends to
// (key1, key2), with the control bits and repacked states it implies.
struct KeyHypothesis {
  uint64_t key1_addend = 0;
  uint64_t key2_addend = 0;
  std::vector<uint8_t> bits;      // reconstructed PRBS, 2 per element
  std::vector<FixedState> states; // bits repacked 32 at a time
  std::vector<PairEvidence> evidence;
  bool passed = false;
};

// The exactly-two distinct addend values of the equivalent key. Throws
// ambiguous_key_usage when only one branch family was ever taken and
// corrupt_equivalent_key when three or more values appear.
std::pair<uint64_t, uint64_t> distinct_addends(const EquivalentKey& ek);

// Builds both hypotheses from the parity sieve and the addend sieve:
// b(2i+1) = 1 iff J1'(i) is odd (J1's per-element value is odd, so XOR
// branches give odd ciphertext elements and XNOR branches even ones);
// b(2i) = 1 iff addend_i is the hypothesised key1. The sibling hypothesis
// flips every even-position bit.
std::array<KeyHypothesis, 2> derive_control_hypotheses(
    const EquivalentKey& ek, const ElementSeq& cipher_of_j1, uint64_t ka,
    uint64_t kb);

// Runs mu_consistent on the first pairs_to_check valid consecutive state
// pairs of each hypothesis (pairs with a zero state are skipped) and returns
// the index of the one whose pairs all pass. Fills evidence and passed on
// both. Throws insufficient_data when a hypothesis has fewer than 4 states
// and undecidable_hypothesis when both or neither pass.
size_t select_hypothesis(std::array<KeyHypothesis, 2>& hypotheses,
                         int pairs_to_check = 3);

struct RecoveredKey {
  SecretKey key;                      // canonical: top bits of key1/key2 are 0
  std::vector<uint8_t> control_codes; // full reconstructed B sequence
  std::array<KeyHypothesis, 2> hypotheses;
  size_t chosen_hypothesis = 0;
};

// Full pipeline from the four chosen plain/cipher pairs to the secret key:
// equivalent key -> distinct addends -> hypothesis pair -> orbit-consistency
// selection. key1/key2 are exact on their low n-1 bits; x0 is exact.
// Requires at least 64 elements so at least 4 states exist.
RecoveredKey recover_secret_key(const std::array<ElementSeq, 4>& plains,
                                const std::array<ElementSeq, 4>& ciphers,
                                int pairs_to_check = 3);

}  // namespace mckba
