#pragma once

// Embedded golden run of the blockwise k-mismatch matcher at w = 16:
// sigma = 4, P = (1,2,1), T = (1,2,3,3,2,3,1,2), k = 1.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "packmatch/word.hpp"

namespace packmatch {

/// Fields of f bits listed from field 1 (least significant) to field w/f,
/// each written most significant bit first, separated by spaces. This is the
/// order in which the example prints its words.
template <MachineWord U>
std::string figure_notation(U word, unsigned f) {
    std::string out;
    for (unsigned i = 0; i < word_bits<U> / f; ++i) {
        if (i) out += ' ';
        for (unsigned b = f; b-- > 0;) out += ((word >> (i * f + b)) & 1) ? '1' : '0';
    }
    return out;
}

struct TraceWord {
    std::string_view name;
    std::uint16_t value;
    unsigned field_bits;
    std::string_view golden;
};

/// The seven words of the first window: A, B0, X, A', bsa, K, M.
std::array<TraceWord, 7> selftest_trace();

/// Compares the trace and the k = 1 and k = 2 reports with their golden
/// values. `fault` names a word to corrupt before comparison (negative
/// control). Returns 0 when everything matches, 3 otherwise.
int run_selftest(std::ostream& out, bool trace, std::optional<std::string> fault = std::nullopt);

}  // namespace packmatch
