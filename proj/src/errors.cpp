#include "mckba/errors.hpp"

namespace mckba {

const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_image: return "EmptyImage";
    case errc::bad_block_width: return "BadBlockWidth";
    case errc::bad_dimensions: return "BadDimensions";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::invalid_key: return "InvalidKey";
    case errc::degenerate_state: return "DegenerateState";
    case errc::unresolvable_bit: return "UnresolvableBit";
    case errc::ambiguous_key_usage: return "AmbiguousKeyUsage";
    case errc::corrupt_equivalent_key: return "CorruptEquivalentKey";
    case errc::undecidable_hypothesis: return "UndecidableHypothesis";
    case errc::insufficient_data: return "InsufficientData";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace mckba
