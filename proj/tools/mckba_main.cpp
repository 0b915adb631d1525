// Command-line front end: key generation, MCKBA encryption/decryption,
// chosen-image generation, the four-image differential attack, full secret
// key recovery and the diffusion/PRBS defect reports.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mckba/analysis.hpp"
#include "mckba/attack.hpp"
#include "mckba/cipher.hpp"
#include "mckba/errors.hpp"
#include "mckba/imageio.hpp"
#include "mckba/keyfile.hpp"
#include "mckba/keyrecovery.hpp"
#include "mckba/transcript.hpp"

namespace fs = std::filesystem;
using namespace mckba;

namespace {

struct RawSpec {
  int width = 0;
  int height = 0;
};

// Parses "WxH".
std::optional<RawSpec> parse_raw(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 >= text.size())
    throw Error(errc::parse_error, "--raw expects WxH, got " + text);
  try {
    RawSpec spec{std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    if (spec.width <= 0 || spec.height <= 0)
      throw Error(errc::bad_dimensions, "--raw dimensions must be positive");
    return spec;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(errc::parse_error, "--raw expects WxH, got " + text);
  }
}

Image read_image(const std::string& path, const std::optional<RawSpec>& raw) {
  return raw ? read_raw_file(path, raw->width, raw->height)
             : read_pgm_file(path);
}

void write_image(const Image& image, const std::string& path,
                 const std::optional<RawSpec>& raw) {
  if (raw)
    write_raw_file(image, path);
  else
    write_pgm_file(image, path);
}

const char* kChosenNames[4] = {"chosen_0.pgm", "chosen_1.pgm", "chosen_2.pgm",
                               "chosen_3.pgm"};

struct ChosenPairs {
  std::array<ElementSeq, 4> plains;
  std::array<ElementSeq, 4> ciphers;
  int width = 0;
  int height = 0;
};

ChosenPairs load_chosen_pairs(const std::string& plains_dir,
                              const std::string& ciphers_dir, int n) {
  ChosenPairs pairs;
  for (int k = 0; k < 4; ++k) {
    const Image plain = read_pgm_file((fs::path(plains_dir) / kChosenNames[k]).string());
    const Image cipher = read_pgm_file((fs::path(ciphers_dir) / kChosenNames[k]).string());
    if (plain.width != cipher.width || plain.height != cipher.height)
      throw Error(errc::length_mismatch,
                  std::string(kChosenNames[k]) + ": plain and cipher dimensions differ");
    if (k == 0) {
      pairs.width = plain.width;
      pairs.height = plain.height;
      if ((8ull * plain.width * plain.height) % n != 0)
        throw Error(errc::bad_dimensions,
                    "attack requires 8*width*height divisible by n");
    } else if (plain.width != pairs.width || plain.height != pairs.height) {
      throw Error(errc::length_mismatch, "chosen images disagree on dimensions");
    }
    pairs.plains[k] = image_to_elements(plain, n);
    pairs.ciphers[k] = image_to_elements(cipher, n);
  }
  return pairs;
}

// Pixel rendering of one element of each chosen sequence (the repeating
// group of the chosen image). Stream bit l of a constant sequence is bit
// (l mod n) of the element value.
std::vector<std::vector<int>> chosen_pixel_patterns(int n) {
  std::vector<std::vector<int>> patterns;
  for (uint64_t v : chosen_element_values(n)) {
    std::vector<int> pixels;
    for (int byte = 0; byte * 8 < n; ++byte) {
      int px = 0;
      for (int bit = 0; bit < 8; ++bit) {
        const int l = 8 * byte + bit;
        px |= static_cast<int>((v >> (l % n)) & 1) << bit;
      }
      pixels.push_back(px);
    }
    patterns.push_back(std::move(pixels));
  }
  return patterns;
}

AttackTranscript base_transcript(int n, const ChosenPairs& pairs) {
  AttackTranscript t;
  t.n = n;
  t.width = pairs.width;
  t.height = pairs.height;
  t.element_count = pairs.plains[0].elements.size();
  const auto values = chosen_element_values(n);
  for (int k = 0; k < 4; ++k) t.chosen_values_hex[k] = to_hex(values[k], n);
  t.chosen_pixel_patterns = chosen_pixel_patterns(n);
  return t;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int run_keygen(int n, uint64_t seed, const std::string& out) {
  write_key_file(keygen(n, seed), out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_crypt(bool encrypt, const std::string& key_path, const std::string& in,
              const std::string& out, const std::optional<RawSpec>& raw) {
  const SecretKey key = read_key_file(key_path);
  const Image input = read_image(in, raw);
  const Image output = encrypt ? encrypt_image(input, key) : decrypt_image(input, key);
  write_image(output, out, raw);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_gen_chosen(int n, int width, int height, const std::string& outdir) {
  if (width <= 0 || height <= 0)
    throw Error(errc::bad_dimensions, "dimensions must be positive");
  if ((8ull * width * height) % n != 0)
    throw Error(errc::bad_dimensions,
                "8*width*height must be divisible by n for the attack");
  fs::create_directories(outdir);
  const size_t element_count = 8ull * width * height / n;
  const auto sequences = chosen_plain_sequences(n, element_count);
  for (int k = 0; k < 4; ++k) {
    const Image image = elements_to_image(sequences[k], width, height);
    write_pgm_file(image, (fs::path(outdir) / kChosenNames[k]).string());
  }
  std::cout << "wrote 4 chosen images to " << outdir << "\n";
  return 0;
}

int run_attack(int n, const std::string& plains_dir, const std::string& ciphers_dir,
               const std::string& target, const std::string& out,
               const std::string& transcript_path,
               const std::optional<RawSpec>& raw, bool timings) {
  const auto t0 = Clock::now();
  const ChosenPairs pairs = load_chosen_pairs(plains_dir, ciphers_dir, n);
  const Image target_image = read_image(target, raw);

  const auto t1 = Clock::now();
  const EquivalentKey ek = recover_equivalent_key(pairs.plains, pairs.ciphers);
  const auto t2 = Clock::now();

  const ElementSeq target_elements = image_to_elements(target_image, n);
  const ElementSeq plain_elements = equivalent_decrypt(target_elements, ek);
  write_image(elements_to_image(plain_elements, target_image.width, target_image.height),
              out, raw);
  std::cout << "recovered " << ek.pairs.size() << " addend/mask pairs, wrote "
            << out << "\n";

  if (!transcript_path.empty()) {
    AttackTranscript t = base_transcript(n, pairs);
    t.equivalent_key = ek;
    if (timings)
      t.timings_ms = {{"load", std::chrono::duration<double, std::milli>(t1 - t0).count()},
                      {"solve", std::chrono::duration<double, std::milli>(t2 - t1).count()},
                      {"total", ms_since(t0)}};
    save_transcript(t, transcript_path);
    std::cout << "transcript: " << transcript_path << "\n";
  }
  return 0;
}

int run_recover_key(int n, const std::string& plains_dir,
                    const std::string& ciphers_dir, const std::string& out,
                    const std::string& transcript_path, int pairs_to_check,
                    bool timings) {
  const auto t0 = Clock::now();
  const ChosenPairs pairs = load_chosen_pairs(plains_dir, ciphers_dir, n);

  AttackTranscript t = base_transcript(n, pairs);

  // Drive the pipeline stepwise so the transcript keeps the evidence even
  // when hypothesis selection fails.
  t.equivalent_key = recover_equivalent_key(pairs.plains, pairs.ciphers);
  const auto [ka, kb] = distinct_addends(t.equivalent_key);
  t.distinct_addends_hex = std::array<std::string, 2>{to_hex(ka, n), to_hex(kb, n)};

  auto hypotheses = derive_control_hypotheses(t.equivalent_key, pairs.ciphers[1], ka, kb);

  auto record_hypotheses = [&](size_t chosen) {
    std::vector<AttackTranscript::HypothesisRecord> records;
    for (size_t h = 0; h < hypotheses.size(); ++h) {
      AttackTranscript::HypothesisRecord rec;
      rec.key1_addend_hex = to_hex(hypotheses[h].key1_addend, n);
      rec.key2_addend_hex = to_hex(hypotheses[h].key2_addend, n);
      rec.pairs = hypotheses[h].evidence;
      rec.passed = hypotheses[h].passed;
      rec.chosen = h == chosen;
      records.push_back(std::move(rec));
    }
    t.hypotheses = std::move(records);
  };

  size_t chosen;
  try {
    chosen = select_hypothesis(hypotheses, pairs_to_check);
  } catch (const Error&) {
    record_hypotheses(size_t(-1));
    if (!transcript_path.empty()) save_transcript(t, transcript_path);
    throw;
  }
  record_hypotheses(chosen);

  RecoveredKey rec;
  rec.key.n = n;
  rec.key.key1 = hypotheses[chosen].key1_addend;
  rec.key.key2 = hypotheses[chosen].key2_addend;
  rec.key.x0 = hypotheses[chosen].states[0];
  rec.key.canonical = true;
  rec.control_codes = codes_from_bits(hypotheses[chosen].bits);

  // Evidence for the transcript: the recovered key and codes must reproduce
  // the observed chosen ciphertexts exactly.
  ControlSeq codes;
  codes.bits = hypotheses[chosen].bits;
  codes.codes = rec.control_codes;
  bool match = true;
  for (int k = 0; k < 4; ++k)
    match = match && encrypt_elements(pairs.plains[k], rec.key, codes).elements ==
                         pairs.ciphers[k].elements;

  AttackTranscript::RecoveredKeyRecord rk;
  rk.n = n;
  rk.key1 = rec.key.key1;
  rk.key2 = rec.key.key2;
  rk.x0_raw = rec.key.x0.raw;
  rk.canonical = true;
  rk.reencryption_match = match;
  t.recovered_key = rk;
  if (timings) t.timings_ms = {{"total", ms_since(t0)}};

  write_key_file(rec.key, out);
  std::cout << "recovered key1=" << rec.key.key1 << " key2=" << rec.key.key2
            << " x0_raw=" << rec.key.x0.raw << " (canonical), wrote " << out
            << "\n"
            << "re-encryption check: " << (match ? "match" : "MISMATCH") << "\n";
  if (!transcript_path.empty()) {
    save_transcript(t, transcript_path);
    std::cout << "transcript: " << transcript_path << "\n";
  }
  return match ? 0 : 1;
}

int run_analyze(const std::string& key_path, const std::string& image_path,
                const std::optional<RawSpec>& raw, size_t flip_element,
                int flip_bit, const std::string& key_flip, int key_bit,
                size_t monobit_bits, const std::string& transcript_path) {
  const SecretKey key = read_key_file(key_path);
  const Image image = read_image(image_path, raw);
  const ElementSeq plain = image_to_elements(image, key.n);
  const size_t element_count = plain.elements.size();
  const size_t wanted_bits = std::max<size_t>(monobit_bits, 1024);
  const size_t states =
      std::max(state_count_for(element_count), (wanted_bits + 31) / 32);
  const ControlSeq codes = states_to_prbs(generate_states(key.x0, states));

  nlohmann::json report;
  report["format"] = "mckba-analysis-report";
  report["version"] = 1;

  const DiffusionReport dr =
      plaintext_diffusion(key, codes, plain, flip_element, flip_bit);
  std::cout << "plaintext diffusion: flip (element " << dr.flipped.element
            << ", bit " << dr.flipped.bit << ") -> " << dr.count
            << " cipher bit(s) changed:";
  for (const auto& loc : dr.changed)
    std::cout << " (" << loc.element << "," << loc.bit << ")";
  std::cout << "\n";
  {
    nlohmann::json changed = nlohmann::json::array();
    for (const auto& loc : dr.changed)
      changed.push_back({{"element", loc.element}, {"bit", loc.bit}});
    report["plaintext_diffusion"] = {
        {"flipped", {{"element", dr.flipped.element}, {"bit", dr.flipped.bit}}},
        {"count", dr.count},
        {"changed", std::move(changed)}};
  }

  const bool flip_key1 = key_flip != "key2";
  const KeyDiffusionStats ks = key_diffusion(key, codes, plain, flip_key1, key_bit);
  std::cout << "key diffusion: flip " << (flip_key1 ? "key1" : "key2") << " bit "
            << ks.flipped_bit << " -> " << ks.total_changed
            << " changed bit(s) over " << ks.per_element_changed.size()
            << " elements\n  changed-bits histogram:";
  for (const auto& [bits, count] : ks.histogram)
    std::cout << " " << bits << ":" << count;
  std::cout << "\n";
  {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [bits, count] : ks.histogram)
      hist[std::to_string(bits)] = count;
    report["key_diffusion"] = {{"key", flip_key1 ? "key1" : "key2"},
                               {"bit", ks.flipped_bit},
                               {"total_changed", ks.total_changed},
                               {"histogram", std::move(hist)}};
  }

  ControlSeq monobit_codes;
  monobit_codes.bits.assign(codes.bits.begin(),
                            codes.bits.begin() + std::min(wanted_bits, codes.bits.size()));
  monobit_codes.codes = codes_from_bits(monobit_codes.bits);
  const MonobitStats ms = monobit_stats(monobit_codes);
  std::cout << "prbs monobit: " << ms.ones << "/" << ms.bit_count
            << " ones, fraction " << ms.ones_fraction << ", chi-square "
            << ms.chi_square << " (fair coin 3-sigma band needs chi-square <= 9)\n";
  report["monobit"] = {{"bit_count", ms.bit_count},
                       {"ones", ms.ones},
                       {"ones_fraction", ms.ones_fraction},
                       {"chi_square", ms.chi_square}};

  if (!transcript_path.empty()) {
    std::ofstream out(transcript_path);
    if (!out) throw Error(errc::parse_error, "cannot write " + transcript_path);
    out << report.dump(2) << '\n';
    std::cout << "report: " << transcript_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MCKBA image cipher, four-chosen-image differential attack and "
               "secret-key recovery"};
  app.require_subcommand(1);

  int n = 32;
  uint64_t seed = 1;
  std::string key_path, in_path, out_path, outdir, plains_dir, ciphers_dir,
      target_path, transcript_path, raw_text, key_flip = "key1";
  int width = 0, height = 0, flip_bit = 0, key_bit = 0, pairs_to_check = 3;
  size_t flip_element = 0, monobit_bits = 65536;
  bool timings = false;

  const auto block_width = CLI::Range(1, 64);

  auto* keygen_cmd = app.add_subcommand("keygen", "generate a random valid key");
  keygen_cmd->add_option("--n", n, "block width in bits")->default_val(32)->check(block_width);
  keygen_cmd->add_option("--seed", seed, "deterministic seed")->default_val(1);
  keygen_cmd->add_option("--out", out_path, "key file to write")->required();

  auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt an image");
  auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt an image");
  for (auto* cmd : {encrypt_cmd, decrypt_cmd}) {
    cmd->add_option("--key", key_path, "key file")->required();
    cmd->add_option("--in", in_path, "input image")->required();
    cmd->add_option("--out", out_path, "output image")->required();
    cmd->add_option("--raw", raw_text, "treat images as raw 8-bit WxH dumps");
  }

  auto* gen_cmd = app.add_subcommand("gen-chosen", "write the four chosen plain-images");
  gen_cmd->add_option("--n", n, "block width in bits")->default_val(32)->check(block_width);
  gen_cmd->add_option("--width", width, "image width")->required();
  gen_cmd->add_option("--height", height, "image height")->required();
  gen_cmd->add_option("--outdir", outdir, "output directory")->required();

  auto* attack_cmd = app.add_subcommand(
      "attack", "recover an equivalent key from the four chosen pairs and decrypt a target");
  attack_cmd->add_option("--n", n, "block width in bits")->default_val(32)->check(block_width);
  attack_cmd->add_option("--plains", plains_dir, "directory with chosen_[0-3].pgm")->required();
  attack_cmd->add_option("--ciphers", ciphers_dir, "directory with their encryptions")->required();
  attack_cmd->add_option("--target", target_path, "cipher-image to decrypt")->required();
  attack_cmd->add_option("--out", out_path, "decrypted output image")->required();
  attack_cmd->add_option("--transcript", transcript_path, "JSON transcript to write");
  attack_cmd->add_option("--raw", raw_text, "treat target/output as raw WxH dumps");
  attack_cmd->add_flag("--timings", timings, "include timings in the transcript");

  auto* recover_cmd = app.add_subcommand("recover-key", "recover the full secret key");
  recover_cmd->add_option("--n", n, "block width in bits")->default_val(32)->check(block_width);
  recover_cmd->add_option("--plains", plains_dir, "directory with chosen_[0-3].pgm")->required();
  recover_cmd->add_option("--ciphers", ciphers_dir, "directory with their encryptions")->required();
  recover_cmd->add_option("--out", out_path, "key file to write")->required();
  recover_cmd->add_option("--transcript", transcript_path, "JSON transcript to write");
  recover_cmd->add_option("--pairs", pairs_to_check, "consecutive state pairs to check")->check(CLI::Range(1, 1000000))
      ->default_val(3);
  recover_cmd->add_flag("--timings", timings, "include timings in the transcript");

  auto* analyze_cmd = app.add_subcommand("analyze", "diffusion and PRBS defect reports");
  analyze_cmd->add_option("--key", key_path, "key file")->required();
  analyze_cmd->add_option("--image", in_path, "plain image to measure on")->required();
  analyze_cmd->add_option("--raw", raw_text, "treat the image as a raw WxH dump");
  analyze_cmd->add_option("--flip-element", flip_element, "element to flip")->default_val(0);
  analyze_cmd->add_option("--flip-bit", flip_bit, "plain bit to flip")->default_val(0);
  analyze_cmd->add_option("--key-flip", key_flip, "key1 or key2")->default_val("key1");
  analyze_cmd->add_option("--key-bit", key_bit, "key bit to flip")->default_val(0);
  analyze_cmd->add_option("--monobit-bits", monobit_bits, "PRBS bits to test")
      ->default_val(65536);
  analyze_cmd->add_option("--transcript", transcript_path, "JSON report to write");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto raw = parse_raw(raw_text);
    if (keygen_cmd->parsed()) return run_keygen(n, seed, out_path);
    if (encrypt_cmd->parsed())
      return run_crypt(true, key_path, in_path, out_path, raw);
    if (decrypt_cmd->parsed())
      return run_crypt(false, key_path, in_path, out_path, raw);
    if (gen_cmd->parsed()) return run_gen_chosen(n, width, height, outdir);
    if (attack_cmd->parsed())
      return run_attack(n, plains_dir, ciphers_dir, target_path, out_path,
                        transcript_path, raw, timings);
    if (recover_cmd->parsed())
      return run_recover_key(n, plains_dir, ciphers_dir, out_path,
                             transcript_path, pairs_to_check, timings);
    if (analyze_cmd->parsed())
      return run_analyze(key_path, in_path, raw, flip_element, flip_bit,
                         key_flip, key_bit, monobit_bits, transcript_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
