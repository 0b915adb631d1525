#pragma once

#include <iosfwd>
#include <string>

#include "mckba/cipher.hpp"

namespace mckba {

// Plain-text, line-oriented key format:
//   n=<int>
//   key1=<decimal>
//   key2=<decimal>
//   x0_raw=<decimal>
//   canonical=1        (only for attack-recovered keys)
// Blank lines and '#'-comments are ignored; unknown or missing fields throw
// parse_error.
SecretKey read_key(std::istream& in);
SecretKey read_key_file(const std::string& path);
void write_key(const SecretKey& key, std::ostream& out);
void write_key_file(const SecretKey& key, const std::string& path);

}  // namespace mckba
