#include "mckba/transcript.hpp"

#include <fstream>

#include "mckba/errors.hpp"

namespace mckba {

using nlohmann::json;

std::string to_hex(uint64_t value, int n_bits) {
  const int digits = (n_bits + 3) / 4;
  std::string out(static_cast<size_t>(digits) + 2, '0');
  out[0] = '0';
  out[1] = 'x';
  for (int d = 0; d < digits; ++d) {
    const int nibble = static_cast<int>((value >> (4 * (digits - 1 - d))) & 0xF);
    out[2 + static_cast<size_t>(d)] = "0123456789abcdef"[nibble];
  }
  return out;
}

uint64_t from_hex(const std::string& text) {
  if (text.size() < 3 || text.size() > 18 || text[0] != '0' || text[1] != 'x')
    throw Error(errc::parse_error, "bad hex value: " + text);
  uint64_t value = 0;
  for (size_t i = 2; i < text.size(); ++i) {
    const char c = text[i];
    int nibble;
    if (c >= '0' && c <= '9') nibble = c - '0';
    else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
    else throw Error(errc::parse_error, "bad hex value: " + text);
    value = (value << 4) | static_cast<uint64_t>(nibble);
  }
  return value;
}

namespace {

json evidence_to_json(const PairEvidence& e) {
  return json{{"state_index", e.state_index},
              {"mu_estimate", e.mu_estimate},
              {"bound", e.bound},
              {"consistent", e.consistent}};
}

PairEvidence evidence_from_json(const json& j) {
  PairEvidence e;
  e.state_index = j.at("state_index").get<size_t>();
  e.mu_estimate = j.at("mu_estimate").get<double>();
  e.bound = j.at("bound").get<double>();
  e.consistent = j.at("consistent").get<bool>();
  return e;
}

}  // namespace

json transcript_to_json(const AttackTranscript& t) {
  json j;
  j["format"] = "mckba-attack-transcript";
  j["version"] = 1;
  j["parameters"] = {{"n", t.n},
                     {"width", t.width},
                     {"height", t.height},
                     {"element_count", t.element_count}};
  j["chosen_plaintexts"] = {
      {"element_values_hex", t.chosen_values_hex},
      {"pixel_patterns", t.chosen_pixel_patterns},
  };

  json chunks = json::array();
  for (size_t start = 0; start < t.equivalent_key.pairs.size();
       start += t.chunk_size) {
    const size_t stop =
        std::min(start + t.chunk_size, t.equivalent_key.pairs.size());
    json addends = json::array();
    json masks = json::array();
    for (size_t i = start; i < stop; ++i) {
      addends.push_back(to_hex(t.equivalent_key.pairs[i].addend, t.n));
      masks.push_back(to_hex(t.equivalent_key.pairs[i].mask, t.n));
    }
    chunks.push_back({{"first_index", start},
                      {"addends_hex", std::move(addends)},
                      {"masks_hex", std::move(masks)}});
  }
  j["equivalent_key"] = {{"pair_count", t.equivalent_key.pairs.size()},
                         {"chunk_size", t.chunk_size},
                         {"chunks", std::move(chunks)}};

  if (t.distinct_addends_hex)
    j["distinct_addends_hex"] = *t.distinct_addends_hex;
  if (t.hypotheses) {
    json hyps = json::array();
    for (const auto& h : *t.hypotheses) {
      json pairs = json::array();
      for (const auto& e : h.pairs) pairs.push_back(evidence_to_json(e));
      hyps.push_back({{"key1_addend_hex", h.key1_addend_hex},
                      {"key2_addend_hex", h.key2_addend_hex},
                      {"pairs", std::move(pairs)},
                      {"passed", h.passed},
                      {"chosen", h.chosen}});
    }
    j["hypotheses"] = std::move(hyps);
  }
  if (t.recovered_key) {
    j["recovered_key"] = {{"n", t.recovered_key->n},
                          {"key1", t.recovered_key->key1},
                          {"key2", t.recovered_key->key2},
                          {"x0_raw", t.recovered_key->x0_raw},
                          {"canonical", t.recovered_key->canonical},
                          {"reencryption_match", t.recovered_key->reencryption_match}};
  }
  if (t.timings_ms) j["timings_ms"] = *t.timings_ms;
  return j;
}

AttackTranscript transcript_from_json(const json& j) {
  if (j.value("format", "") != "mckba-attack-transcript")
    throw Error(errc::parse_error, "not an attack transcript");

  AttackTranscript t;
  const json& p = j.at("parameters");
  t.n = p.at("n").get<int>();
  t.width = p.at("width").get<int>();
  t.height = p.at("height").get<int>();
  t.element_count = p.at("element_count").get<uint64_t>();

  const json& chosen = j.at("chosen_plaintexts");
  const auto values = chosen.at("element_values_hex").get<std::vector<std::string>>();
  if (values.size() != 4)
    throw Error(errc::parse_error, "expected 4 chosen element values");
  std::copy(values.begin(), values.end(), t.chosen_values_hex.begin());
  t.chosen_pixel_patterns =
      chosen.at("pixel_patterns").get<std::vector<std::vector<int>>>();

  const json& ek = j.at("equivalent_key");
  t.chunk_size = ek.at("chunk_size").get<uint64_t>();
  t.equivalent_key.n = t.n;
  t.equivalent_key.pairs.resize(ek.at("pair_count").get<size_t>());
  for (const json& chunk : ek.at("chunks")) {
    size_t i = chunk.at("first_index").get<size_t>();
    const auto& addends = chunk.at("addends_hex");
    const auto& masks = chunk.at("masks_hex");
    if (addends.size() != masks.size())
      throw Error(errc::parse_error, "chunk addend/mask arrays disagree");
    for (size_t k = 0; k < addends.size(); ++k, ++i) {
      if (i >= t.equivalent_key.pairs.size())
        throw Error(errc::parse_error, "chunk spills past pair_count");
      t.equivalent_key.pairs[i].addend = from_hex(addends[k].get<std::string>());
      t.equivalent_key.pairs[i].mask = from_hex(masks[k].get<std::string>());
    }
  }

  if (j.contains("distinct_addends_hex")) {
    const auto arr = j.at("distinct_addends_hex").get<std::vector<std::string>>();
    if (arr.size() != 2)
      throw Error(errc::parse_error, "expected exactly 2 distinct addends");
    t.distinct_addends_hex = std::array<std::string, 2>{arr[0], arr[1]};
  }
  if (j.contains("hypotheses")) {
    std::vector<AttackTranscript::HypothesisRecord> hyps;
    for (const json& hj : j.at("hypotheses")) {
      AttackTranscript::HypothesisRecord h;
      h.key1_addend_hex = hj.at("key1_addend_hex").get<std::string>();
      h.key2_addend_hex = hj.at("key2_addend_hex").get<std::string>();
      for (const json& ej : hj.at("pairs")) h.pairs.push_back(evidence_from_json(ej));
      h.passed = hj.at("passed").get<bool>();
      h.chosen = hj.at("chosen").get<bool>();
      hyps.push_back(std::move(h));
    }
    t.hypotheses = std::move(hyps);
  }
  if (j.contains("recovered_key")) {
    const json& rk = j.at("recovered_key");
    AttackTranscript::RecoveredKeyRecord r;
    r.n = rk.at("n").get<int>();
    r.key1 = rk.at("key1").get<uint64_t>();
    r.key2 = rk.at("key2").get<uint64_t>();
    r.x0_raw = rk.at("x0_raw").get<uint32_t>();
    r.canonical = rk.at("canonical").get<bool>();
    r.reencryption_match = rk.at("reencryption_match").get<bool>();
    t.recovered_key = r;
  }
  if (j.contains("timings_ms"))
    t.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
  return t;
}

void save_transcript(const AttackTranscript& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(errc::parse_error, "cannot write " + path);
  out << transcript_to_json(t).dump(2) << '\n';
  if (!out) throw Error(errc::parse_error, "failed writing " + path);
}

AttackTranscript load_transcript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::parse_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(errc::parse_error, std::string("bad transcript JSON: ") + e.what());
  }
  return transcript_from_json(j);
}

}  // namespace mckba
