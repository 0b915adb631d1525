#pragma once

#include <stdexcept>
#include <string>

namespace mckba {

// Error classes surfaced by the library. The CLI maps each class to a
// distinct process exit code (see errc_exit_code).
enum class errc {
  empty_image = 1,
  bad_block_width,
  bad_dimensions,
  length_mismatch,
  invalid_key,
  degenerate_state,
  unresolvable_bit,
  ambiguous_key_usage,
  corrupt_equivalent_key,
  undecidable_hypothesis,
  insufficient_data,
  parse_error,
};

const char* errc_name(errc c);

// Exit code = 2 + enum value, leaving 1 for unclassified failures.
inline int errc_exit_code(errc c) { return 2 + static_cast<int>(c); }

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what, long index = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        index_(index) {}

  errc code() const { return code_; }
  // Element or bit index the error refers to, -1 when not applicable.
  long index() const { return index_; }

 private:
  errc code_;
  long index_;
};

}  // namespace mckba
