#pragma once

// One entry point over every model and variant, at a runtime-chosen width.

#include <cstddef>
#include <span>

#include "packmatch/matchers.hpp"
#include "packmatch/model.hpp"
#include "packmatch/oracle.hpp"
#include "packmatch/packed.hpp"

namespace packmatch {

/// The concrete algorithm `spec.variant` stands for with a pattern of length
/// m at width w. Variant::automatic picks, for the k-mismatch family:
/// sentinel when k (or m-k) is below log2(min(kbar, sigma)) * log2(mbar) /
/// log2(sigma), else compacted when log2(sigma) >= log2(kbar) + 1, else
/// blockwise, and the long-pattern matcher when m > alpha. Throws
/// PatternTooLong or std::invalid_argument when the combination cannot run.
Variant resolve_variant(std::size_t m, const Alphabet& alphabet, unsigned w, const MatchSpec& spec);

/// Whether reports of this (resolved) variant carry exact per-position counts.
constexpr bool has_exact_counts(Model model, Variant resolved) {
    const bool k_family = model == Model::kmismatch || model == Model::wildcard || model == Model::delta_k;
    return k_family && (resolved == Variant::blockwise || resolved == Variant::long_pattern);
}

template <MachineWord U>
MatchReport search(std::span<const Symbol> pattern, const PackedText<U>& text, const MatchSpec& spec) {
    const Alphabet& alphabet = text.alphabet();
    const Variant variant = resolve_variant(pattern.size(), alphabet, word_bits<U>, spec);
    if (variant == Variant::oracle) {
        const auto symbols = decode_text(text);
        return oracle_search(pattern, symbols, spec);
    }
    switch (spec.model) {
        case Model::kmismatch:
            if (variant == Variant::long_pattern) return search_kmismatch_long(pattern, text, spec.k);
            return detail::run_k_family<U, detail::HammingFlags<U>>(text, pattern, alphabet, spec, variant);
        case Model::wildcard:
            return detail::run_k_family<U, detail::WildcardFlags<U>>(text, pattern, alphabet, spec, variant);
        case Model::delta_k:
            return detail::run_k_family<U, detail::DeltaFlags<U>>(text, pattern, alphabet, spec, variant);
        case Model::delta_exact:
            return search_delta_exact(pattern, text, spec.deltas);
        case Model::less_than:
            return search_lessthan(pattern, text);
        case Model::delta_gamma:
            return search_delta_gamma(pattern, text, spec.deltas, spec.gamma,
                                      variant == Variant::compacted ? GammaVariant::compacted : GammaVariant::blockwise);
        case Model::delta_k_gamma:
            return search_delta_k_gamma(pattern, text, spec.deltas, spec.k, spec.gamma, spec.raw_gamma_sum);
    }
    throw std::invalid_argument("unknown model");
}

/// Packs `text` for width w and searches it. The variant `oracle` skips packing.
MatchReport search(std::span<const Symbol> pattern, std::span<const Symbol> text, const Alphabet& alphabet,
                   const MatchSpec& spec, unsigned w);

}  // namespace packmatch
