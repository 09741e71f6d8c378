#pragma once

// Packed texts, pattern templates and the windows B_i that line up text
// substrings with the pattern copies of a template.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "packmatch/bitword.hpp"
#include "packmatch/model.hpp"

namespace packmatch {

/// A string stored log_sigma bits per character, least significant bits
/// first: character j occupies bits [j*log_sigma mod w, ...) of word
/// floor(j*log_sigma / w), spilling into the next word when it straddles.
/// `over_alloc` zero characters follow the last one, plus one guard word, so
/// any window starting below n + over_alloc can be loaded from two words.
template <MachineWord U>
class PackedText {
public:
    static constexpr unsigned W = word_bits<U>;

    PackedText() = default;
    PackedText(std::size_t n, Alphabet alphabet, std::size_t over_alloc)
        : n_(n), alphabet_(alphabet), over_alloc_(over_alloc),
          words_((n + over_alloc) * alphabet.log_sigma / W + 2, U{0}) {}

    std::size_t size() const { return n_; }
    const Alphabet& alphabet() const { return alphabet_; }
    unsigned log_sigma() const { return alphabet_.log_sigma; }
    std::size_t over_alloc() const { return over_alloc_; }
    std::span<const U> words() const { return words_; }

    /// The w bits starting at bit `offset`.
    U load_bits(std::size_t offset) const {
        const std::size_t q = offset / W;
        const unsigned s = static_cast<unsigned>(offset % W);
        U lo = words_[q];
        if (s == 0) return lo;
        return static_cast<U>(shr(lo, s) | shl(words_[q + 1], W - s));
    }

    Symbol at(std::size_t j) const {
        return static_cast<Symbol>(load_bits(j * alphabet_.log_sigma) & low_bits<U>(alphabet_.log_sigma));
    }

    void store(std::size_t j, Symbol c) {
        const std::size_t offset = j * alphabet_.log_sigma;
        const std::size_t q = offset / W;
        const unsigned s = static_cast<unsigned>(offset % W);
        const U value = static_cast<U>(c);
        words_[q] |= shl(value, s);
        if (s + alphabet_.log_sigma > W) words_[q + 1] |= shr(value, W - s);
    }

private:
    std::size_t n_ = 0;
    Alphabet alphabet_{};
    std::size_t over_alloc_ = 0;
    std::vector<U> words_;
};

/// Padding every search over a text packed for width w can reach: two full
/// words of characters.
template <MachineWord U>
std::size_t default_over_alloc(const Alphabet& alphabet) {
    return 2 * std::max(1u, alphabet.alpha(word_bits<U>));
}

template <MachineWord U>
PackedText<U> pack_text(std::span<const Symbol> chars, const Alphabet& alphabet, std::size_t over_alloc) {
    PackedText<U> text(chars.size(), alphabet, over_alloc);
    for (std::size_t j = 0; j < chars.size(); ++j) {
        if (chars[j] >= alphabet.sigma) {
            throw EncodingError(j, "character " + std::to_string(chars[j]) + " at index " + std::to_string(j) +
                                       " is outside an alphabet of size " + std::to_string(alphabet.sigma));
        }
        text.store(j, chars[j]);
    }
    return text;
}

template <MachineWord U>
PackedText<U> pack_text(std::span<const Symbol> chars, const Alphabet& alphabet) {
    return pack_text<U>(chars, alphabet, default_over_alloc<U>(alphabet));
}

template <MachineWord U>
std::vector<Symbol> decode_text(const PackedText<U>& text) {
    std::vector<Symbol> out(text.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = text.at(j);
    return out;
}

/// Bits of fields s*m_bar .. s*m_bar+m-1 (0-based, log_sigma bits each) for
/// every lane s < ell.
template <MachineWord U>
U lane_field_mask(unsigned log_sigma, unsigned lanes, unsigned m_bar, unsigned m) {
    const U lane = low_bits<U>(m * log_sigma);
    return repeat_field<U>(lane, m_bar * log_sigma, lanes);
}

/// Word B with lane s holding T[j+s*m_bar .. j+s*m_bar+m-1] and zero padding
/// fields. Throws std::out_of_range past the padded end of the text.
template <MachineWord U>
U extract_window(const PackedText<U>& text, std::size_t j, unsigned lanes, unsigned m_bar, unsigned m) {
    if (lanes == 0 || m == 0 || m > m_bar || std::size_t{lanes} * m_bar * text.log_sigma() > word_bits<U>) {
        throw std::invalid_argument("extract_window: lanes do not fit in a word");
    }
    if (j + std::size_t{lanes - 1} * m_bar + m > text.size() + text.over_alloc()) {
        throw std::out_of_range("extract_window: window at " + std::to_string(j) + " runs past the padded text");
    }
    return text.load_bits(j * text.log_sigma()) & lane_field_mask<U>(text.log_sigma(), lanes, m_bar, m);
}

/// One step of the window schedule: iteration i examines lane starts
/// j, j + m_bar, ..., j + (ell-1)*m_bar.
struct ScheduledWindow {
    std::size_t i;
    std::size_t j;
    friend bool operator==(const ScheduledWindow&, const ScheduledWindow&) = default;
};

/// Base positions j = ell*floor(i/m_bar)*m_bar + (i mod m_bar) for
/// i = 0, 1, ... until every start position 0..n-m has been a lane start.
class WindowSchedule {
public:
    WindowSchedule(std::size_t n, std::size_t m, std::size_t m_bar, std::size_t ell);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = ScheduledWindow;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = ScheduledWindow;

        iterator() = default;
        iterator(std::size_t i, std::size_t m_bar, std::size_t group) : i_(i), m_bar_(m_bar), group_(group) {}

        ScheduledWindow operator*() const { return {i_, (i_ / m_bar_) * group_ + i_ % m_bar_}; }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++i_;
            return copy;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

    private:
        std::size_t i_ = 0;
        std::size_t m_bar_ = 1;
        std::size_t group_ = 1;
    };

    iterator begin() const { return {0, m_bar_, group_}; }
    iterator end() const { return {count_, m_bar_, group_}; }
    std::size_t size() const { return count_; }

private:
    std::size_t m_bar_;
    std::size_t group_;
    std::size_t count_;
};

WindowSchedule window_schedule(std::size_t n, std::size_t m, std::size_t m_bar, std::size_t ell);

std::size_t next_pow2(std::size_t x);

/// Lane widths: a power of two for the counting matchers, m+1 for the
/// sentinel matchers (one padding field per lane).
enum class LaneShape { pow2, sentinel };

/// Precomputed search state for one pattern at one word width.
template <MachineWord U>
struct PatternTemplate {
    unsigned m = 0;
    unsigned m_bar = 0;      // lane stride in characters
    unsigned ell = 0;        // lanes per word
    unsigned log_sigma = 0;
    unsigned block_f = 0;    // m_bar * log_sigma
    Alphabet alphabet{};

    unsigned k = 0;          // clamped to m
    std::uint64_t gamma = 0; // clamped to m*(sigma-1)
    std::uint64_t delta_sum = 0;
    unsigned delta_max = 0;

    U A{};        // ell pattern copies
    U K{};        // k in every block field
    U D{};        // per-position deltas, aligned with A
    U G{};        // gamma in every block field
    U W{};        // top bits of the ell*m live character fields
    U W_P{};      // top bits of live fields not holding the wildcard
    U H_T{};      // wildcard in every lane field (ell*m_bar of them)

    U char_v{};       // V_{log sigma}
    U block_v{};      // V_{block_f}: one top bit per lane
    U window_mask{};  // bits of the live character fields
};

/// Builds the template; throws PatternTooLong when no lane fits in a word.
template <MachineWord U>
PatternTemplate<U> build_template(std::span<const Symbol> pattern, const Alphabet& alphabet, const MatchSpec& spec,
                                  LaneShape shape = LaneShape::pow2) {
    constexpr unsigned W = word_bits<U>;
    const std::size_t m = pattern.size();
    validate_spec(spec, m, alphabet);
    for (std::size_t h = 0; h < m; ++h) {
        if (pattern[h] >= alphabet.sigma) {
            throw std::invalid_argument("pattern symbol " + std::to_string(pattern[h]) + " at index " +
                                        std::to_string(h) + " is outside an alphabet of size " +
                                        std::to_string(alphabet.sigma));
        }
    }
    const unsigned ls = alphabet.log_sigma;
    const unsigned alpha = alphabet.alpha(W);
    const std::size_t m_bar = shape == LaneShape::pow2 ? next_pow2(m) : m + 1;
    if (m > alpha || m_bar * ls > W) {
        throw PatternTooLong("pattern of length " + std::to_string(m) + " needs lanes of " + std::to_string(m_bar) +
                             " characters; a " + std::to_string(W) + "-bit word holds " + std::to_string(alpha));
    }

    PatternTemplate<U> t;
    t.m = static_cast<unsigned>(m);
    t.m_bar = static_cast<unsigned>(m_bar);
    t.log_sigma = ls;
    t.alphabet = alphabet;
    t.block_f = t.m_bar * ls;
    t.ell = W / t.block_f;
    t.k = std::min<unsigned>(spec.k, t.m);

    for (unsigned h = 0; h < t.m; ++h) {
        t.delta_sum += spec.delta_at(h);
        t.delta_max = std::max(t.delta_max, spec.delta_at(h));
    }
    t.gamma = std::min<std::uint64_t>(spec.gamma, std::uint64_t{t.m} * (alphabet.sigma - 1));

    const auto char_at = [&](unsigned s, unsigned h) { return s * t.block_f + h * ls; };
    for (unsigned s = 0; s < t.ell; ++s) {
        for (unsigned h = 0; h < t.m; ++h) {
            const unsigned at = char_at(s, h);
            t.A |= shl(static_cast<U>(pattern[h]), at);
            t.D |= shl(static_cast<U>(spec.delta_at(h)), at);
            t.W |= bit<U>(at + ls - 1);
            if (!spec.wildcard || pattern[h] != *spec.wildcard) t.W_P |= bit<U>(at + ls - 1);
        }
        if (spec.wildcard) {
            for (unsigned h = 0; h < t.m_bar; ++h) t.H_T |= shl(static_cast<U>(*spec.wildcard), char_at(s, h));
        }
    }
    t.K = repeat_field<U>(static_cast<U>(t.k), t.block_f, t.ell);
    t.G = repeat_field<U>(static_cast<U>(t.gamma), t.block_f, t.ell);
    t.char_v = make_v_mask<U>(ls);
    t.block_v = make_v_mask<U>(t.block_f);
    t.window_mask = lane_field_mask<U>(ls, t.ell, t.m_bar, t.m);
    return t;
}

}  // namespace packmatch
