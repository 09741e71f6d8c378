#pragma once

// PKTX: a packed text on disk.
//
//   offset  size  field
//   0       4     magic "PKTX"
//   4       1     format version (1)
//   5       1     log_sigma (1..16)
//   6       6     reserved, zero
//   12      8     n, little-endian
//   20      ...   ceil(n*log_sigma/8) bytes, characters LSB-first
//
// Padding is not stored; it is re-created when the text is packed for search.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "packmatch/model.hpp"

namespace packmatch {

inline constexpr std::size_t kPktxHeaderSize = 20;

class PktxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PktxText {
    Alphabet alphabet;
    std::vector<Symbol> symbols;
};

/// Throws EncodingError when a symbol is outside the alphabet.
std::vector<std::uint8_t> encode_pktx(std::span<const Symbol> symbols, const Alphabet& alphabet);

/// Throws PktxError on a bad magic, version, log_sigma, reserved bytes or
/// body length.
PktxText decode_pktx(std::span<const std::uint8_t> bytes);

bool has_pktx_magic(std::span<const std::uint8_t> bytes);

}  // namespace packmatch
