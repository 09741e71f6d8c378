#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace packmatch {

/// One character of a text over the integer alphabet {0, ..., sigma-1}.
using Symbol = std::uint16_t;

inline constexpr unsigned kMaxLogSigma = 16;

/// Alphabet of size sigma, rounded up to a power of two.
struct Alphabet {
    unsigned sigma = 2;
    unsigned log_sigma = 1;

    /// Smallest power-of-two alphabet with at least `size` symbols (min 2).
    static Alphabet for_size(std::uint64_t size);
    static Alphabet from_log(unsigned log_sigma);

    /// Characters per machine word of w bits.
    unsigned alpha(unsigned w) const { return w / log_sigma; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

class EncodingError : public std::runtime_error {
public:
    EncodingError(std::size_t index, const std::string& what) : std::runtime_error(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// m exceeds what a single-word matcher supports at the chosen width.
class PatternTooLong : public std::length_error {
public:
    using std::length_error::length_error;
};

enum class Model {
    kmismatch,
    wildcard,
    delta_k,
    delta_exact,
    less_than,
    delta_gamma,
    delta_k_gamma,
};

enum class Variant {
    automatic,
    blockwise,
    compacted,
    sentinel,           // small k
    sentinel_comatch,   // small m - k
    long_pattern,
    oracle,
};

std::string_view to_string(Model model);
std::string_view to_string(Variant variant);
std::optional<Model> parse_model(std::string_view name);
std::optional<Variant> parse_variant(std::string_view name);

/// Which matching model to run and its parameters.
struct MatchSpec {
    Model model = Model::kmismatch;
    unsigned k = 0;
    /// Empty (all zero), one entry (uniform), or one entry per pattern position.
    std::vector<unsigned> deltas;
    std::uint64_t gamma = 0;
    std::optional<Symbol> wildcard;
    Variant variant = Variant::automatic;
    /// delta-k-gamma only: sum raw differences instead of those of
    /// delta-matching positions.
    bool raw_gamma_sum = false;

    unsigned delta_at(std::size_t h) const {
        if (deltas.empty()) return 0;
        return deltas.size() == 1 ? deltas.front() : deltas.at(h);
    }
};

/// Throws std::invalid_argument when `spec` is inconsistent with a pattern of
/// length m over `alphabet`.
void validate_spec(const MatchSpec& spec, std::size_t m, const Alphabet& alphabet);

/// Start positions of the occurrences. `counts`, when present, runs parallel
/// to `positions` and holds the exact mismatch count of each occurrence.
struct MatchReport {
    std::vector<std::size_t> positions;
    std::optional<std::vector<unsigned>> counts;

    /// Sorts by position, keeping counts aligned.
    void sort();
};

}  // namespace packmatch
