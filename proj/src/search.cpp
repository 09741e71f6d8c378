#include "packmatch/search.hpp"

#include <algorithm>
#include <bit>

namespace packmatch {

namespace {

bool is_k_family(Model model) {
    return model == Model::kmismatch || model == Model::wildcard || model == Model::delta_k;
}

[[noreturn]] void unsupported(const MatchSpec& spec) {
    throw std::invalid_argument("variant '" + std::string(to_string(spec.variant)) + "' is not available for model '" +
                                std::string(to_string(spec.model)) + "'");
}

}  // namespace

Variant resolve_variant(std::size_t m, const Alphabet& alphabet, unsigned w, const MatchSpec& spec) {
    if (spec.variant == Variant::oracle) return Variant::oracle;
    const unsigned ls = alphabet.log_sigma;
    const std::size_t alpha = alphabet.alpha(w);
    const std::size_t m_bar = next_pow2(m);
    const bool fits = m >= 1 && m <= alpha && m_bar * ls <= w;
    const bool sentinel_fits = m >= 1 && (m + 1) * ls <= w;
    const auto too_long = [&] {
        return PatternTooLong("pattern of length " + std::to_string(m) + " does not fit the " +
                              std::string(to_string(spec.variant)) + " matcher at w=" + std::to_string(w));
    };

    if (is_k_family(spec.model)) {
        switch (spec.variant) {
            case Variant::automatic: {
                if (!fits) {
                    if (spec.model == Model::kmismatch) return Variant::long_pattern;
                    throw too_long();
                }
                const unsigned k = static_cast<unsigned>(std::min<std::size_t>(spec.k, m));
                const unsigned log_kbar = static_cast<unsigned>(std::bit_width(k));
                const double threshold =
                    double(std::min(log_kbar, ls)) * double(std::bit_width(m_bar) - 1) / double(ls);
                if (sentinel_fits && k < m) {
                    if (k < threshold) return Variant::sentinel;
                    if (double(m - k) < threshold) return Variant::sentinel_comatch;
                }
                if (log_kbar + 1 <= ls) return Variant::compacted;
                return Variant::blockwise;
            }
            case Variant::blockwise:
            case Variant::compacted:
                if (!fits) throw too_long();
                return spec.variant;
            case Variant::sentinel:
            case Variant::sentinel_comatch:
                if (!sentinel_fits) throw too_long();
                return spec.variant;
            case Variant::long_pattern:
                if (spec.model != Model::kmismatch) unsupported(spec);
                return spec.variant;
            case Variant::oracle:
                break;
        }
        unsupported(spec);
    }

    switch (spec.model) {
        case Model::delta_exact:
        case Model::less_than:
        case Model::delta_k_gamma:
            if (spec.variant != Variant::automatic && spec.variant != Variant::blockwise) unsupported(spec);
            if (!fits) throw too_long();
            return Variant::blockwise;
        case Model::delta_gamma: {
            if (spec.variant != Variant::automatic && spec.variant != Variant::blockwise &&
                spec.variant != Variant::compacted) {
                unsupported(spec);
            }
            if (!fits) throw too_long();
            if (spec.variant != Variant::automatic) return spec.variant;
            const auto gamma = std::min<std::uint64_t>(spec.gamma, std::uint64_t{m} * (alphabet.sigma - 1));
            return std::bit_width(gamma) + 1 <= ls ? Variant::compacted : Variant::blockwise;
        }
        default:
            break;
    }
    unsupported(spec);
}

MatchReport search(std::span<const Symbol> pattern, std::span<const Symbol> text, const Alphabet& alphabet,
                   const MatchSpec& spec, unsigned w) {
    if (spec.variant == Variant::oracle) return oracle_search(pattern, text, spec);
    return dispatch_width(w, [&]<MachineWord U>() {
        const auto packed = pack_text<U>(text, alphabet);
        return search<U>(pattern, packed, spec);
    });
}

}  // namespace packmatch
