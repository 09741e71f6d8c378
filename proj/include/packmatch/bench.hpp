#pragma once

// Throughput of the packed matchers against the character-loop oracle on a
// seeded random corpus.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "packmatch/model.hpp"

namespace packmatch {

struct BenchConfig {
    MatchSpec spec;                       // model and parameters; variant ignored
    std::vector<unsigned> widths{16, 32, 64, 128};
    std::vector<Variant> variants;        // empty: every variant of the model
    unsigned sigma = 4;
    std::size_t m = 8;
    std::size_t n = 1'000'000;
    std::uint64_t seed = 1;
};

struct BenchRow {
    Model model;
    Variant variant;
    unsigned width;   // 0 for the oracle
    unsigned sigma;
    std::size_t m;
    std::size_t n;
    std::string params;
    double chars_per_second;
    std::size_t matches;
};

/// The text is uniform over the alphabet; the pattern is the text window at
/// n/3 with its first character changed, so it occurs at least approximately.
struct BenchCorpus {
    Alphabet alphabet;
    std::vector<Symbol> pattern;
    std::vector<Symbol> text;
};

BenchCorpus make_bench_corpus(const BenchConfig& config);

/// The oracle row comes first, then one row per applicable (variant, width)
/// in the order given. Combinations a pattern cannot run under are skipped.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_params(const MatchSpec& spec);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace packmatch
