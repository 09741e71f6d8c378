#include "packmatch/pktx.hpp"

#include <algorithm>
#include <string>

namespace packmatch {

namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'K', 'T', 'X'};
constexpr std::uint8_t kVersion = 1;

std::uint64_t body_size(std::uint64_t n, unsigned log_sigma) { return (n * log_sigma + 7) / 8; }

}  // namespace

bool has_pktx_magic(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 4 && std::equal(kMagic, kMagic + 4, bytes.begin());
}

std::vector<std::uint8_t> encode_pktx(std::span<const Symbol> symbols, const Alphabet& alphabet) {
    const unsigned ls = alphabet.log_sigma;
    const std::uint64_t n = symbols.size();
    std::vector<std::uint8_t> out(kPktxHeaderSize + body_size(n, ls), 0);
    std::copy(kMagic, kMagic + 4, out.begin());
    out[4] = kVersion;
    out[5] = static_cast<std::uint8_t>(ls);
    for (unsigned i = 0; i < 8; ++i) out[12 + i] = static_cast<std::uint8_t>(n >> (8 * i));

    std::uint8_t* body = out.data() + kPktxHeaderSize;
    for (std::size_t j = 0; j < symbols.size(); ++j) {
        const Symbol c = symbols[j];
        if (c >= alphabet.sigma) {
            throw EncodingError(j, "character " + std::to_string(c) + " at index " + std::to_string(j) +
                                       " is outside an alphabet of size " + std::to_string(alphabet.sigma));
        }
        std::uint64_t bit = std::uint64_t{j} * ls;
        for (unsigned b = 0; b < ls; ++b, ++bit) {
            if ((c >> b) & 1u) body[bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
        }
    }
    return out;
}

PktxText decode_pktx(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kPktxHeaderSize) throw PktxError("PKTX: truncated header");
    if (!has_pktx_magic(bytes)) throw PktxError("PKTX: bad magic");
    if (bytes[4] != kVersion) throw PktxError("PKTX: unsupported version " + std::to_string(bytes[4]));
    const unsigned ls = bytes[5];
    if (ls < 1 || ls > kMaxLogSigma) throw PktxError("PKTX: log_sigma " + std::to_string(ls) + " out of range");
    for (unsigned i = 6; i < 12; ++i) {
        if (bytes[i] != 0) throw PktxError("PKTX: reserved header bytes must be zero");
    }
    std::uint64_t n = 0;
    for (unsigned i = 0; i < 8; ++i) n |= std::uint64_t{bytes[12 + i]} << (8 * i);
    if (n > (std::uint64_t{1} << 56)) throw PktxError("PKTX: length " + std::to_string(n) + " is implausible");
    const std::uint64_t expected = body_size(n, ls);
    if (bytes.size() - kPktxHeaderSize != expected) {
        throw PktxError("PKTX: body holds " + std::to_string(bytes.size() - kPktxHeaderSize) +
                        " bytes, header implies " + std::to_string(expected));
    }

    PktxText text{Alphabet::from_log(ls), std::vector<Symbol>(n)};
    const std::uint8_t* body = bytes.data() + kPktxHeaderSize;
    for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t bit = std::uint64_t{j} * ls;
        unsigned c = 0;
        for (unsigned b = 0; b < ls; ++b, ++bit) c |= ((body[bit / 8] >> (bit % 8)) & 1u) << b;
        text.symbols[j] = static_cast<Symbol>(c);
    }
    // Bits past the last character are padding and must be clear.
    const std::uint64_t used = n * ls;
    if (used % 8 && (body[used / 8] >> (used % 8)) != 0) throw PktxError("PKTX: nonzero padding bits");
    return text;
}

}  // namespace packmatch
