#pragma once

// Word-parallel matchers. Each one slides a PatternTemplate over a packed text
// window by window (see WindowSchedule), turns every window into a word of
// per-character "mismatch" flags (top bit of a character field set where the
// pattern and text characters fail the model) and then decides, for all ell
// lanes at once, whether the lane is an occurrence.
//
// Positions are produced in schedule order, not sorted.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "packmatch/bitword.hpp"
#include "packmatch/model.hpp"
#include "packmatch/packed.hpp"

namespace packmatch {

/// For every set lane top bit in `flags` (lane s has its top bit at
/// (s+1)*block_f - 1), calls on_lane(j + s*m_bar, s) when that start is at
/// most last_start. Lanes are visited from the highest down.
template <MachineWord U, class OnLane>
void for_each_lane(U flags, std::size_t j, unsigned m_bar, unsigned block_f, std::size_t last_start,
                   OnLane&& on_lane) {
    while (flags) {
        const unsigned p = *highest_set_bit(flags);
        flags &= bnot(bit<U>(p));
        const unsigned s = p / block_f;
        const std::size_t pos = j + std::size_t{s} * m_bar;
        if (pos <= last_start) on_lane(pos, s);
    }
}

/// Decodes lane flags into start positions, dropping lanes that start past
/// n - m.
template <MachineWord U>
std::vector<std::size_t> report_positions(U flags, std::size_t j, unsigned m_bar, unsigned block_f, std::size_t n,
                                          std::size_t m) {
    std::vector<std::size_t> out;
    if (n < m) return out;
    for_each_lane(flags, j, m_bar, block_f, n - m, [&](std::size_t pos, unsigned) { out.push_back(pos); });
    return out;
}

// --- Hamming distance on packed strings ------------------------------------

/// Packs `s` with floor(w/log_sigma) characters per word, so no character
/// straddles a word boundary.
template <MachineWord U>
std::vector<U> pack_chunks(std::span<const Symbol> s, unsigned log_sigma) {
    const unsigned alpha = word_bits<U> / log_sigma;
    std::vector<U> out((s.size() + alpha - 1) / alpha, U{0});
    for (std::size_t h = 0; h < s.size(); ++h) out[h / alpha] |= shl(static_cast<U>(s[h]), (h % alpha) * log_sigma);
    return out;
}

/// Number of differing characters between two strings of length m packed by
/// pack_chunks.
template <MachineWord U>
unsigned hamming_distance_packed(std::span<const U> a, std::span<const U> b, std::size_t m, unsigned log_sigma) {
    const unsigned alpha = word_bits<U> / log_sigma;
    const std::size_t words = (m + alpha - 1) / alpha;
    if (a.size() != words || b.size() != words) {
        throw std::invalid_argument("hamming_distance_packed: operands must hold exactly m characters");
    }
    const U v = make_v_mask<U>(log_sigma);
    unsigned dist = 0;
    for (std::size_t i = 0; i < words; ++i) dist += sa(fnf_masked(static_cast<U>(a[i] ^ b[i]), v));
    return dist;
}

namespace detail {

// --- mismatch flag generators ----------------------------------------------

template <MachineWord U>
struct HammingFlags {
    const PatternTemplate<U>* t;
    U operator()(U b) const { return fnf_masked(static_cast<U>(t->A ^ b), t->char_v); }
};

template <MachineWord U>
struct WildcardFlags {
    const PatternTemplate<U>* t;
    U operator()(U b) const {
        const U mismatch = fnf_masked(static_cast<U>(t->A ^ b), t->char_v);
        const U text_not_wild = fnf_masked(static_cast<U>(b ^ t->H_T), t->char_v);
        return mismatch & t->W_P & text_not_wild;
    }
};

/// |A[i] - B[i]| per character field.
template <MachineWord U>
U abs_diff(U a, U b, U v, unsigned f) {
    const U le = spread_top_bits(pmin_masked(a, b, v), f);
    const U hi = (b & le) | (a & bnot(le));
    const U lo = (a & le) | (b & bnot(le));
    return sub(hi, lo);
}

template <MachineWord U>
struct DeltaFlags {
    const PatternTemplate<U>* t;
    U diff(U b) const { return abs_diff(t->A, b, t->char_v, t->log_sigma); }
    U from_diff(U x) const { return (pmin_masked(x, t->D, t->char_v) & t->W) ^ t->W; }
    U operator()(U b) const { return from_diff(diff(b)); }
};

template <MachineWord U>
struct LessThanFlags {
    const PatternTemplate<U>* t;
    U operator()(U b) const { return (pmin_masked(t->A, b, t->char_v) & t->W) ^ t->W; }
};

template <MachineWord U>
U load_window(const PackedText<U>& text, const PatternTemplate<U>& t, std::size_t j) {
    return text.load_bits(j * t.log_sigma) & t.window_mask;
}

inline MatchReport all_positions(std::size_t n, std::size_t m) {
    MatchReport rep;
    if (n >= m) {
        rep.positions.resize(n - m + 1);
        for (std::size_t j = 0; j < rep.positions.size(); ++j) rep.positions[j] = j;
    }
    return rep;
}

// --- lane deciders -----------------------------------------------------------

/// Counts flags per lane with bsa and compares against K.
template <MachineWord U, class Flags>
MatchReport count_blockwise(const PackedText<U>& text, const PatternTemplate<U>& t, Flags flags,
                            BsaPath path = BsaPath::multiply, bool with_counts = true) {
    MatchReport rep;
    if (with_counts) rep.counts.emplace();
    const std::size_t n = text.size();
    if (n < t.m) return rep;
    const auto plan = make_bsa_plan<U>(t.log_sigma, t.m_bar, bsa_widening(t.log_sigma, word_bits<U>), path);
    const U lane_low = low_bits<U>(t.block_f);
    for (auto [i, j] : window_schedule(n, t.m, t.m_bar, t.ell)) {
        const U a = flags(load_window(text, t, j));
        const U counts = bsa_values(shr(a, t.log_sigma - 1), plan);
        const U hits = pmin_masked(counts, t.K, t.block_v);
        for_each_lane(hits, j, t.m_bar, t.block_f, n - t.m, [&](std::size_t pos, unsigned s) {
            rep.positions.push_back(pos);
            if (with_counts) rep.counts->push_back(static_cast<unsigned>(shr(counts, s * t.block_f) & lane_low));
        });
    }
    return rep;
}

/// Lanes with no flag at all: fnf at lane granularity, inverted.
template <MachineWord U, class Flags>
MatchReport all_match(const PackedText<U>& text, const PatternTemplate<U>& t, Flags flags) {
    MatchReport rep;
    const std::size_t n = text.size();
    if (n < t.m) return rep;
    for (auto [i, j] : window_schedule(n, t.m, t.m_bar, t.ell)) {
        const U a = flags(load_window(text, t, j));
        const U hits = fnf_masked(a, t.block_v) ^ t.block_v;
        for_each_lane(hits, j, t.m_bar, t.block_f, n - t.m, [&](std::size_t pos, unsigned) { rep.positions.push_back(pos); });
    }
    return rep;
}

/// Deferred reporting: the per-character values of up to floor(log_sigma/f)
/// consecutive windows are packed into one word H (newest in the lowest
/// f-bit slot of each character field), then summed along each lane at once
/// with a saturating ibsa and compared with `threshold`. Requires
/// f <= log_sigma and threshold < 2^(f-1); values must be < 2^f.
template <MachineWord U, class Values>
MatchReport count_compacted(const PackedText<U>& text, const PatternTemplate<U>& t, Values values, unsigned f,
                            std::uint64_t threshold) {
    MatchReport rep;
    const std::size_t n = text.size();
    if (n < t.m) return rep;
    const unsigned ls = t.log_sigma;
    const unsigned slots = ls / f;

    // Live subfields: characters of the ell lanes, slots 0..slots-1 each.
    StridedFields<U> layout{f, ls, U{0}, U{0}};
    U thresholds{};
    std::array<U, kMaxLogSigma + 1> report_mask{};  // indexed by filled slot count
    for (unsigned c = 0; c < t.ell * t.m_bar; ++c) {
        for (unsigned u = 0; u < slots; ++u) {
            const unsigned at = c * ls + u * f;
            layout.body |= shl(low_bits<U>(f), at);
            layout.top |= bit<U>(at + f - 1);
            thresholds |= shl(static_cast<U>(threshold), at);
        }
    }
    for (unsigned q = 1; q <= slots; ++q) {
        for (unsigned s = 0; s < t.ell; ++s) {
            const unsigned c = s * t.m_bar + t.m_bar - 1;
            for (unsigned u = 0; u < q; ++u) report_mask[q] |= bit<U>(c * ls + u * f + f - 1);
        }
    }
    U acc{};
    unsigned filled = 0;
    std::array<std::size_t, kMaxLogSigma> base{};
    const auto flush = [&] {
        const U sums = ibsa_values(acc, layout, t.m_bar);
        const U hits = pmin_masked(sums, thresholds, layout.top) & report_mask[filled];
        U rest = hits;
        while (rest) {
            const unsigned p = *highest_set_bit(rest);
            rest &= bnot(bit<U>(p));
            const unsigned c = p / ls;
            const unsigned u = (p % ls) / f;
            const std::size_t pos = base[filled - 1 - u] + std::size_t{c / t.m_bar} * t.m_bar;
            if (pos <= n - t.m) rep.positions.push_back(pos);
        }
        acc = U{0};
        filled = 0;
    };
    for (auto [i, j] : window_schedule(n, t.m, t.m_bar, t.ell)) {
        acc = static_cast<U>(shl(acc, f) | values(load_window(text, t, j)));
        base[filled++] = j;
        if (filled == slots) flush();
    }
    if (filled) flush();
    return rep;
}

/// Field size of the compacted accumulator for a threshold: log2 of the
/// smallest power of two above it, plus one.
constexpr unsigned compact_field_bits(std::uint64_t threshold) { return static_cast<unsigned>(std::bit_width(threshold)) + 1; }

/// Sentinel lanes (m_bar = m+1): k+1 rounds of "set sentinel, clear lowest
/// set bit" leave the sentinel set iff the lane holds more than k flags. With
/// `comatch` the rounds run m-k times over the complemented flags, leaving
/// the sentinel set iff at least m-k characters match.
template <MachineWord U, class Flags>
MatchReport count_sentinel(const PackedText<U>& text, const PatternTemplate<U>& t, Flags flags, bool comatch) {
    MatchReport rep;
    const std::size_t n = text.size();
    if (n < t.m) return rep;
    if (t.k >= t.m) return all_positions(n, t.m);
    const U vp = t.block_v;
    const U one = shr(vp, t.block_f - 1);
    const unsigned rounds = comatch ? t.m - t.k : t.k + 1;
    for (auto [i, j] : window_schedule(n, t.m, t.m_bar, t.ell)) {
        U a = flags(load_window(text, t, j));
        if (comatch) a = bnot(a) & t.W;
        for (unsigned it = 0; it < rounds; ++it) {
            a |= vp;
            a &= sub(a, one);
        }
        const U hits = comatch ? (a & vp) : ((a & vp) ^ vp);
        for_each_lane(hits, j, t.m_bar, t.block_f, n - t.m, [&](std::size_t pos, unsigned) { rep.positions.push_back(pos); });
    }
    return rep;
}

template <MachineWord U>
MatchReport count_long(std::span<const Symbol> pattern, const PackedText<U>& text, unsigned k) {
    MatchReport rep;
    rep.counts.emplace();
    const std::size_t n = text.size();
    const std::size_t m = pattern.size();
    if (m == 0 || n < m) return rep;
    const unsigned ls = text.log_sigma();
    const unsigned alpha = word_bits<U> / ls;
    const std::vector<U> p = pack_chunks<U>(pattern, ls);
    std::vector<U> masks(p.size(), low_bits<U>(alpha * ls));
    if (m % alpha) masks.back() = low_bits<U>((m % alpha) * ls);
    const U v = make_v_mask<U>(ls);
    for (std::size_t j = 0; j + m <= n; ++j) {
        unsigned dist = 0;
        for (std::size_t c = 0; c < p.size(); ++c) {
            const U chunk = text.load_bits((j + c * alpha) * ls) & masks[c];
            dist += sa(fnf_masked(static_cast<U>(p[c] ^ chunk), v));
        }
        if (dist <= k) {
            rep.positions.push_back(j);
            rep.counts->push_back(dist);
        }
    }
    return rep;
}

template <MachineWord U, class Flags>
MatchReport run_k_family(const PackedText<U>& text, std::span<const Symbol> pattern, const Alphabet& alphabet,
                         const MatchSpec& spec, Variant variant) {
    const std::size_t n = text.size();
    if (n < pattern.size()) return {};
    if (spec.k >= pattern.size()) return all_positions(n, pattern.size());
    if (variant == Variant::sentinel || variant == Variant::sentinel_comatch) {
        const auto t = build_template<U>(pattern, alphabet, spec, LaneShape::sentinel);
        return count_sentinel(text, t, Flags{&t}, variant == Variant::sentinel_comatch);
    }
    const auto t = build_template<U>(pattern, alphabet, spec);
    if (variant == Variant::compacted) {
        const unsigned f = compact_field_bits(t.k);
        if (f <= t.log_sigma) {
            const Flags flags{&t};
            const unsigned shift = t.log_sigma - 1;
            return count_compacted(text, t, [&](U b) { return shr(flags(b), shift); }, f, t.k);
        }
    }
    return count_blockwise(text, t, Flags{&t});
}

}  // namespace detail

// --- public matchers ---------------------------------------------------------

/// Any m: Hamming distance of every window, one word of the pattern at a time.
template <MachineWord U>
MatchReport search_kmismatch_long(std::span<const Symbol> pattern, const PackedText<U>& text, unsigned k) {
    if (pattern.empty()) throw std::invalid_argument("pattern must not be empty");
    for (Symbol c : pattern)
        if (c >= text.alphabet().sigma) throw std::invalid_argument("pattern symbol outside the alphabet");
    return detail::count_long(pattern, text, k);
}

template <MachineWord U>
MatchReport search_kmismatch_blockwise(std::span<const Symbol> pattern, const PackedText<U>& text, unsigned k,
                                       BsaPath path = BsaPath::multiply) {
    MatchSpec spec;
    spec.k = k;
    const auto t = build_template<U>(pattern, text.alphabet(), spec);
    if (t.k >= t.m) return detail::all_positions(text.size(), t.m);
    return detail::count_blockwise(text, t, detail::HammingFlags<U>{&t}, path);
}

/// Deferred-reporting variant; falls back to blockwise when
/// log_sigma < log2(kbar) + 1.
template <MachineWord U>
MatchReport search_kmismatch_compacted(std::span<const Symbol> pattern, const PackedText<U>& text, unsigned k) {
    MatchSpec spec;
    spec.k = k;
    return detail::run_k_family<U, detail::HammingFlags<U>>(text, pattern, text.alphabet(), spec, Variant::compacted);
}

enum class SentinelMode { small_k, small_comatch };

template <MachineWord U>
MatchReport search_kmismatch_sentinel(std::span<const Symbol> pattern, const PackedText<U>& text, unsigned k,
                                      SentinelMode mode) {
    MatchSpec spec;
    spec.k = k;
    const auto t = build_template<U>(pattern, text.alphabet(), spec, LaneShape::sentinel);
    return detail::count_sentinel(text, t, detail::HammingFlags<U>{&t}, mode == SentinelMode::small_comatch);
}

template <MachineWord U>
MatchReport search_kmismatch_wildcards(std::span<const Symbol> pattern, const PackedText<U>& text, unsigned k,
                                       Symbol wildcard, Variant variant = Variant::blockwise) {
    MatchSpec spec;
    spec.model = Model::wildcard;
    spec.k = k;
    spec.wildcard = wildcard;
    return detail::run_k_family<U, detail::WildcardFlags<U>>(text, pattern, text.alphabet(), spec, variant);
}

template <MachineWord U>
MatchReport search_delta_kmismatch(std::span<const Symbol> pattern, const PackedText<U>& text, unsigned k,
                                   std::vector<unsigned> deltas, Variant variant = Variant::blockwise) {
    MatchSpec spec;
    spec.model = Model::delta_k;
    spec.k = k;
    spec.deltas = std::move(deltas);
    return detail::run_k_family<U, detail::DeltaFlags<U>>(text, pattern, text.alphabet(), spec, variant);
}

template <MachineWord U>
MatchReport search_delta_exact(std::span<const Symbol> pattern, const PackedText<U>& text,
                               std::vector<unsigned> deltas) {
    MatchSpec spec;
    spec.model = Model::delta_exact;
    spec.deltas = std::move(deltas);
    const auto t = build_template<U>(pattern, text.alphabet(), spec);
    return detail::all_match(text, t, detail::DeltaFlags<U>{&t});
}

template <MachineWord U>
MatchReport search_lessthan(std::span<const Symbol> pattern, const PackedText<U>& text) {
    MatchSpec spec;
    spec.model = Model::less_than;
    const auto t = build_template<U>(pattern, text.alphabet(), spec);
    return detail::all_match(text, t, detail::LessThanFlags<U>{&t});
}

enum class GammaVariant { blockwise, compacted };

/// (delta, gamma)-matching. Lanes with a character failing delta have their
/// differences replaced by the deltas, whose sum exceeds gamma, so one sum
/// decides both conditions. When the deltas sum to at most gamma the gamma
/// condition cannot prune anything and plain delta matching runs instead.
template <MachineWord U>
MatchReport search_delta_gamma(std::span<const Symbol> pattern, const PackedText<U>& text,
                               std::vector<unsigned> deltas, std::uint64_t gamma,
                               GammaVariant variant = GammaVariant::blockwise) {
    MatchSpec spec;
    spec.model = Model::delta_gamma;
    spec.deltas = std::move(deltas);
    spec.gamma = gamma;
    const auto t = build_template<U>(pattern, text.alphabet(), spec);
    const detail::DeltaFlags<U> flags{&t};
    if (t.delta_sum <= gamma) return detail::all_match(text, t, flags);

    const unsigned ls = t.log_sigma;
    const auto capped = [&](U b) {
        const U x = flags.diff(b);
        const U lanes_failing = fnf_masked(flags.from_diff(x), t.block_v);
        return interleave_masked(x, t.D, lanes_failing, t.block_v, t.block_f);
    };

    const unsigned f = detail::compact_field_bits(t.gamma);
    if (variant == GammaVariant::compacted && f <= ls) {
        // Differences >= 2^(f-1) already exceed gamma; capping them there
        // keeps every value inside one f-bit slot.
        const U cap = repeat_field<U>(bit<U>(f - 1), ls, t.ell * t.m_bar);
        return detail::count_compacted(
            text, t, [&](U b) { return pvmin_masked(capped(b), cap, t.char_v, ls); }, f, t.gamma);
    }

    MatchReport rep;
    const std::size_t n = text.size();
    if (n < t.m) return rep;
    const auto plan =
        make_bsa_plan<U>(ls, t.m_bar, bsa_widening(ls, static_cast<u128>(word_bits<U>) * t.delta_max));
    for (auto [i, j] : window_schedule(n, t.m, t.m_bar, t.ell)) {
        const U sums = bsa_values(capped(detail::load_window(text, t, j)), plan);
        const U hits = pmin_masked(sums, t.G, t.block_v);
        for_each_lane(hits, j, t.m_bar, t.block_f, n - t.m, [&](std::size_t pos, unsigned) { rep.positions.push_back(pos); });
    }
    return rep;
}

/// (delta, k, gamma)-matching: at most k characters fail delta, and the sum of
/// differences over the delta-matching characters (every character with
/// `raw_sum`) is at most gamma.
template <MachineWord U>
MatchReport search_delta_k_gamma(std::span<const Symbol> pattern, const PackedText<U>& text,
                                 std::vector<unsigned> deltas, unsigned k, std::uint64_t gamma,
                                 bool raw_sum = false) {
    MatchSpec spec;
    spec.model = Model::delta_k_gamma;
    spec.deltas = std::move(deltas);
    spec.k = k;
    spec.gamma = gamma;
    spec.raw_gamma_sum = raw_sum;
    const auto t = build_template<U>(pattern, text.alphabet(), spec);
    const detail::DeltaFlags<U> flags{&t};
    const unsigned ls = t.log_sigma;

    MatchReport rep;
    const std::size_t n = text.size();
    if (n < t.m) return rep;
    const auto count_plan = make_bsa_plan<U>(ls, t.m_bar, bsa_widening(ls, word_bits<U>));
    const unsigned largest = raw_sum ? t.alphabet.sigma - 1 : t.delta_max;
    const auto sum_plan = make_bsa_plan<U>(ls, t.m_bar, bsa_widening(ls, static_cast<u128>(word_bits<U>) * largest));
    for (auto [i, j] : window_schedule(n, t.m, t.m_bar, t.ell)) {
        const U x = flags.diff(detail::load_window(text, t, j));
        const U a = flags.from_diff(x);
        const U within_k = pmin_masked(bsa_values(shr(a, ls - 1), count_plan), t.K, t.block_v);
        const U summed = raw_sum ? x : interleave_masked(x, U{0}, a, t.char_v, ls);
        const U within_gamma = pmin_masked(bsa_values(summed, sum_plan), t.G, t.block_v);
        for_each_lane<U>(within_k & within_gamma, j, t.m_bar, t.block_f, n - t.m,
                      [&](std::size_t pos, unsigned) { rep.positions.push_back(pos); });
    }
    return rep;
}

}  // namespace packmatch
