#include "mckba/keyfile.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "mckba/errors.hpp"

namespace mckba {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

uint64_t parse_u64(const std::string& text, const std::string& field) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw Error(errc::parse_error, "key field " + field + " is not a decimal integer");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw Error(errc::parse_error, "key field " + field + " out of range");
  }
}

}  // namespace

SecretKey read_key(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(errc::parse_error, "key line without '=': " + line);
    const std::string name = trim(line.substr(0, eq));
    if (fields.count(name))
      throw Error(errc::parse_error, "duplicate key field " + name);
    fields[name] = trim(line.substr(eq + 1));
  }

  for (const char* required : {"n", "key1", "key2", "x0_raw"})
    if (!fields.count(required))
      throw Error(errc::parse_error, std::string("key file missing ") + required);
  for (const auto& [name, value] : fields)
    if (name != "n" && name != "key1" && name != "key2" && name != "x0_raw" &&
        name != "canonical")
      throw Error(errc::parse_error, "unknown key field " + name);

  SecretKey key;
  const uint64_t n = parse_u64(fields["n"], "n");
  if (n < 1 || n > 64)
    throw Error(errc::parse_error, "key block width outside [1, 64]");
  key.n = static_cast<int>(n);
  key.key1 = parse_u64(fields["key1"], "key1");
  key.key2 = parse_u64(fields["key2"], "key2");
  const uint64_t mask = element_mask(key.n);
  if (key.key1 > mask || key.key2 > mask)
    throw Error(errc::parse_error, "sub-key exceeds 2^n - 1");
  const uint64_t x0 = parse_u64(fields["x0_raw"], "x0_raw");
  if (x0 > 0xFFFFFFFFull)
    throw Error(errc::parse_error, "x0_raw exceeds 32 bits");
  key.x0.raw = static_cast<uint32_t>(x0);
  if (fields.count("canonical")) {
    if (fields["canonical"] != "1" && fields["canonical"] != "0")
      throw Error(errc::parse_error, "canonical must be 0 or 1");
    key.canonical = fields["canonical"] == "1";
  }
  return key;
}

SecretKey read_key_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::parse_error, "cannot open " + path);
  return read_key(in);
}

void write_key(const SecretKey& key, std::ostream& out) {
  out << "n=" << key.n << '\n'
      << "key1=" << key.key1 << '\n'
      << "key2=" << key.key2 << '\n'
      << "x0_raw=" << key.x0.raw << '\n';
  if (key.canonical) out << "canonical=1\n";
}

void write_key_file(const SecretKey& key, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(errc::parse_error, "cannot write " + path);
  write_key(key, out);
  if (!out) throw Error(errc::parse_error, "failed writing " + path);
}

}  // namespace mckba
