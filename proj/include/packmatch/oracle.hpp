#pragma once

// Reference semantics of every matching model, evaluated character by
// character. Deliberately independent of the word-level code.

#include <cstddef>
#include <span>

#include "packmatch/model.hpp"

namespace packmatch {

/// Number of positions h with a[h] != b[h]. Throws std::invalid_argument on
/// a length mismatch.
unsigned oracle_hamming(std::span<const Symbol> a, std::span<const Symbol> b);

/// All j in [0, n-m] where pattern occurs in text under `spec` (its variant
/// is ignored). Positions come out sorted.
MatchReport oracle_search(std::span<const Symbol> pattern, std::span<const Symbol> text, const MatchSpec& spec);

/// Whether text[j .. j+m-1] matches under `spec`.
bool oracle_matches_at(std::span<const Symbol> pattern, std::span<const Symbol> text, std::size_t j,
                       const MatchSpec& spec);

}  // namespace packmatch
