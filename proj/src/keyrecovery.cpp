#include "mckba/keyrecovery.hpp"

#include <sstream>

#include "mckba/errors.hpp"

namespace mckba {

std::pair<uint64_t, uint64_t> distinct_addends(const EquivalentKey& ek) {
  if (ek.pairs.empty())
    throw Error(errc::corrupt_equivalent_key, "equivalent key is empty");

  const uint64_t first = ek.pairs[0].addend;
  uint64_t second = first;
  for (const auto& p : ek.pairs) {
    if (p.addend == first) continue;
    if (second == first) {
      second = p.addend;
    } else if (p.addend != second) {
      throw Error(errc::corrupt_equivalent_key,
                  "three or more distinct addend values");
    }
  }
  if (second == first)
    throw Error(errc::ambiguous_key_usage,
                "only one addend value observed; both cipher branches were "
                "never taken (retry with more elements)");
  return {first, second};
}

std::array<KeyHypothesis, 2> derive_control_hypotheses(
    const EquivalentKey& ek, const ElementSeq& cipher_of_j1, uint64_t ka,
    uint64_t kb) {
  if (cipher_of_j1.elements.size() != ek.pairs.size() || cipher_of_j1.n != ek.n)
    throw Error(errc::length_mismatch,
                "J1 ciphertext does not match the equivalent key");

  std::array<KeyHypothesis, 2> hypotheses;
  hypotheses[0].key1_addend = ka;
  hypotheses[0].key2_addend = kb;
  hypotheses[1].key1_addend = kb;
  hypotheses[1].key2_addend = ka;
  for (auto& h : hypotheses) h.bits.reserve(2 * ek.pairs.size());

  for (size_t i = 0; i < ek.pairs.size(); ++i) {
    const uint64_t addend = ek.pairs[i].addend;
    if (addend != ka && addend != kb)
      throw Error(errc::corrupt_equivalent_key,
                  "element " + std::to_string(i) +
                      " addend matches neither sub-key",
                  static_cast<long>(i));
    // J1's elements are odd, so odd J1'(i) means an XOR branch (B odd) and
    // even means XNOR; the branch family (which sub-key) is the even bit.
    const uint8_t odd_bit = cipher_of_j1.elements[i] & 1;
    const uint8_t used_ka = addend == ka ? 1 : 0;
    hypotheses[0].bits.push_back(used_ka);
    hypotheses[0].bits.push_back(odd_bit);
    hypotheses[1].bits.push_back(static_cast<uint8_t>(1 - used_ka));
    hypotheses[1].bits.push_back(odd_bit);
  }

  for (auto& h : hypotheses) {
    const size_t whole = (h.bits.size() / 32) * 32;
    h.states = bits_to_states(std::span(h.bits.data(), whole));
  }
  return hypotheses;
}

size_t select_hypothesis(std::array<KeyHypothesis, 2>& hypotheses,
                         int pairs_to_check) {
  for (auto& h : hypotheses) {
    if (h.states.size() < 4)
      throw Error(errc::insufficient_data,
                  "hypothesis has " + std::to_string(h.states.size()) +
                      " states, need at least 4");
    h.evidence.clear();
    bool all_consistent = true;
    for (size_t k = 0; k + 1 < h.states.size() &&
                       h.evidence.size() < static_cast<size_t>(pairs_to_check);
         ++k) {
      if (h.states[k].raw == 0 || h.states[k + 1].raw == 0) continue;  // skip
      const MuConsistency mc = mu_consistent(h.states[k], h.states[k + 1]);
      h.evidence.push_back({k, mc.mu_estimate, mc.bound, mc.consistent});
      all_consistent = all_consistent && mc.consistent;
    }
    h.passed = !h.evidence.empty() && all_consistent;
  }

  if (hypotheses[0].passed == hypotheses[1].passed) {
    std::ostringstream what;
    what << "hypotheses are " << (hypotheses[0].passed ? "both" : "neither")
         << " orbit-consistent; mu estimates:";
    for (const auto& h : hypotheses)
      for (const auto& e : h.evidence) what << ' ' << e.mu_estimate;
    throw Error(errc::undecidable_hypothesis, what.str());
  }
  return hypotheses[0].passed ? 0 : 1;
}

RecoveredKey recover_secret_key(const std::array<ElementSeq, 4>& plains,
                                const std::array<ElementSeq, 4>& ciphers,
                                int pairs_to_check) {
  if (plains[0].elements.size() < 64)
    throw Error(errc::insufficient_data,
                "need at least 64 elements to form 4 chaotic states");

  const EquivalentKey ek = recover_equivalent_key(plains, ciphers);
  const auto [ka, kb] = distinct_addends(ek);

  RecoveredKey rec;
  rec.hypotheses = derive_control_hypotheses(ek, ciphers[1], ka, kb);
  rec.chosen_hypothesis = select_hypothesis(rec.hypotheses, pairs_to_check);

  const KeyHypothesis& chosen = rec.hypotheses[rec.chosen_hypothesis];
  rec.key.n = ek.n;
  rec.key.key1 = chosen.key1_addend;
  rec.key.key2 = chosen.key2_addend;
  rec.key.x0 = chosen.states[0];
  rec.key.canonical = true;
  rec.control_codes = codes_from_bits(chosen.bits);
  return rec;
}

}  // namespace mckba
