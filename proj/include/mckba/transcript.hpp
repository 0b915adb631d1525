#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mckba/attack.hpp"
#include "mckba/keyrecovery.hpp"

#include "json.hpp"

namespace mckba {

// Audit record of an attack run: chosen plaintexts, recovered equivalent key
// (chunked hex so files stay reviewable), hypothesis-selection evidence and
// the recovered secret key. Timings are optional so that default transcripts
// are byte-reproducible.
struct AttackTranscript {
  int n = 0;
  int width = 0;
  int height = 0;
  uint64_t element_count = 0;
  std::array<std::string, 4> chosen_values_hex{};
  std::vector<std::vector<int>> chosen_pixel_patterns;  // one row per image

  EquivalentKey equivalent_key;
  uint64_t chunk_size = 512;

  struct HypothesisRecord {
    std::string key1_addend_hex;
    std::string key2_addend_hex;
    std::vector<PairEvidence> pairs;
    bool passed = false;
    bool chosen = false;
  };

  std::optional<std::array<std::string, 2>> distinct_addends_hex;
  std::optional<std::vector<HypothesisRecord>> hypotheses;

  struct RecoveredKeyRecord {
    int n = 0;
    uint64_t key1 = 0;
    uint64_t key2 = 0;
    uint32_t x0_raw = 0;
    bool canonical = true;
    bool reencryption_match = false;
  };

  std::optional<RecoveredKeyRecord> recovered_key;
  std::optional<std::map<std::string, double>> timings_ms;
};

std::string to_hex(uint64_t value, int n_bits);
uint64_t from_hex(const std::string& text);

nlohmann::json transcript_to_json(const AttackTranscript& t);
AttackTranscript transcript_from_json(const nlohmann::json& j);

void save_transcript(const AttackTranscript& t, const std::string& path);
AttackTranscript load_transcript(const std::string& path);

}  // namespace mckba
