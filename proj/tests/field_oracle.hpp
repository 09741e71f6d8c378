#pragma once

// Per-field reference versions of the word primitives. Words are split into
// a vector of field values and processed one field at a time.

#include <cstdint>
#include <random>
#include <vector>

#include "packmatch/word.hpp"

namespace oracle_fields {

using packmatch::u128;

template <class U>
std::vector<u128> split(U x, unsigned f) {
    const unsigned count = packmatch::word_bits<U> / f;
    const u128 mask = f == 128 ? ~u128{0} : ((u128{1} << f) - 1);
    std::vector<u128> out(count);
    for (unsigned i = 0; i < count; ++i) out[i] = (u128{x} >> (i * f)) & mask;
    return out;
}

template <class U>
U join(const std::vector<u128>& fields, unsigned f) {
    u128 x = 0;
    for (unsigned i = 0; i < fields.size(); ++i) x |= fields[i] << (i * f);
    return static_cast<U>(x);
}

inline u128 top(unsigned f) { return u128{1} << (f - 1); }

template <class U>
U fnf(U a, unsigned f) {
    auto v = split(a, f);
    for (auto& x : v) x = x ? top(f) : 0;
    return join<U>(v, f);
}

template <class U>
unsigned sa(U a, unsigned f) {
    unsigned n = 0;
    for (auto x : split(a, f)) n += (x & top(f)) ? 1 : 0;
    return n;
}

/// Counts of top bits per block of b fields, in fields of b*f bits.
template <class U>
U bsa(U a, unsigned f, unsigned b) {
    const auto in = split(a, f);
    std::vector<u128> out(packmatch::word_bits<U> / (b * f), 0);
    for (unsigned i = 0; i < out.size(); ++i)
        for (unsigned h = 0; h < b; ++h) out[i] += (in[i * b + h] & top(f)) ? 1 : 0;
    return join<U>(out, b * f);
}

/// Exact count of top bits in fields i, i-g, ..., at most b of them.
template <class U>
std::vector<unsigned> ibsa_counts(U a, unsigned f, unsigned g, unsigned b) {
    const auto in = split(a, f);
    std::vector<unsigned> out(in.size(), 0);
    for (unsigned i = 0; i < in.size(); ++i) {
        for (unsigned h = 0; h < b; ++h) {
            if (h * g > i) break;
            out[i] += (in[i - h * g] & top(f)) ? 1 : 0;
        }
    }
    return out;
}

template <class U>
U pmin(U a, U b, unsigned f) {
    auto x = split(a, f);
    const auto y = split(b, f);
    for (unsigned i = 0; i < x.size(); ++i) x[i] = x[i] <= y[i] ? top(f) : 0;
    return join<U>(x, f);
}

template <class U>
U pmax(U a, U b, unsigned f) {
    auto x = split(a, f);
    const auto y = split(b, f);
    for (unsigned i = 0; i < x.size(); ++i) x[i] = x[i] >= y[i] ? top(f) : 0;
    return join<U>(x, f);
}

template <class U>
U pvmin(U a, U b, unsigned f) {
    auto x = split(a, f);
    const auto y = split(b, f);
    for (unsigned i = 0; i < x.size(); ++i) x[i] = x[i] < y[i] ? x[i] : y[i];
    return join<U>(x, f);
}

template <class U>
U pvmax(U a, U b, unsigned f) {
    auto x = split(a, f);
    const auto y = split(b, f);
    for (unsigned i = 0; i < x.size(); ++i) x[i] = x[i] > y[i] ? x[i] : y[i];
    return join<U>(x, f);
}

template <class U>
U interleave(U a, U b, U z, unsigned f) {
    auto x = split(a, f);
    const auto y = split(b, f);
    const auto s = split(z, f);
    for (unsigned i = 0; i < x.size(); ++i) x[i] = s[i] ? y[i] : x[i];
    return join<U>(x, f);
}

/// Uniform word with every bit outside complete fields clear.
template <class U>
U random_word(std::mt19937_64& rng, unsigned f) {
    u128 x = (u128{rng()} << 64) | rng();
    const unsigned used = (packmatch::word_bits<U> / f) * f;
    if (used < 128) x &= (u128{1} << used) - 1;
    return static_cast<U>(x);
}

/// Word whose fields are 0 with probability 1/2 and otherwise uniform; keeps
/// zero fields and equal fields common.
template <class U>
U random_sparse_word(std::mt19937_64& rng, unsigned f) {
    auto v = split(random_word<U>(rng, f), f);
    for (auto& x : v) {
        const auto r = rng() % 4;
        if (r == 0) x = 0;
        if (r == 1) x = top(f);
    }
    return join<U>(v, f);
}

/// Only top bits, each set with probability `percent`/100.
template <class U>
U random_top_bits(std::mt19937_64& rng, unsigned f, unsigned percent) {
    auto v = split(U{0}, f);
    for (auto& x : v) x = (rng() % 100) < percent ? top(f) : 0;
    return join<U>(v, f);
}

}  // namespace oracle_fields
