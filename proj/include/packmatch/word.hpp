#pragma once

#include <bit>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace packmatch {

using u128 = unsigned __int128;

/// Unsigned machine words the engine is instantiated for: w in {16, 32, 64, 128}.
template <class U>
concept MachineWord = std::same_as<U, std::uint16_t> || std::same_as<U, std::uint32_t> ||
                      std::same_as<U, std::uint64_t> || std::same_as<U, u128>;

template <MachineWord U>
inline constexpr unsigned word_bits = static_cast<unsigned>(sizeof(U) * 8);

class InvalidLayout : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
// uint16_t promotes to (signed) int; route arithmetic through unsigned so that
// multiplication stays defined.
template <MachineWord U>
using Arith = std::conditional_t<(sizeof(U) < sizeof(unsigned)), unsigned, U>;
}  // namespace detail

template <MachineWord U>
constexpr U shl(U a, unsigned s) {
    assert(s < word_bits<U>);
    return static_cast<U>(static_cast<detail::Arith<U>>(a) << s);
}

template <MachineWord U>
constexpr U shr(U a, unsigned s) {
    assert(s < word_bits<U>);
    return static_cast<U>(static_cast<detail::Arith<U>>(a) >> s);
}

template <MachineWord U>
constexpr U add(U a, U b) {
    return static_cast<U>(static_cast<detail::Arith<U>>(a) + static_cast<detail::Arith<U>>(b));
}

template <MachineWord U>
constexpr U sub(U a, U b) {
    return static_cast<U>(static_cast<detail::Arith<U>>(a) - static_cast<detail::Arith<U>>(b));
}

template <MachineWord U>
constexpr U mul(U a, U b) {
    return static_cast<U>(static_cast<detail::Arith<U>>(a) * static_cast<detail::Arith<U>>(b));
}

template <MachineWord U>
constexpr U bnot(U a) {
    return static_cast<U>(~a);
}

template <MachineWord U>
constexpr U all_ones() {
    return static_cast<U>(~U{0});
}

/// Word with the low `n` bits set, n <= w.
template <MachineWord U>
constexpr U low_bits(unsigned n) {
    assert(n <= word_bits<U>);
    return n == word_bits<U> ? all_ones<U>() : static_cast<U>(shl(U{1}, n) - 1);
}

template <MachineWord U>
constexpr U bit(unsigned i) {
    return shl(U{1}, i);
}

template <MachineWord U>
constexpr unsigned popcount(U a) {
    if constexpr (std::same_as<U, u128>) {
        return static_cast<unsigned>(std::popcount(static_cast<std::uint64_t>(a)) +
                                     std::popcount(static_cast<std::uint64_t>(a >> 64)));
    } else {
        return static_cast<unsigned>(std::popcount(a));
    }
}

template <MachineWord U>
constexpr unsigned bit_width(U a) {
    if constexpr (std::same_as<U, u128>) {
        const auto hi = static_cast<std::uint64_t>(a >> 64);
        return hi ? 64u + static_cast<unsigned>(std::bit_width(hi))
                  : static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(a)));
    } else {
        return static_cast<unsigned>(std::bit_width(a));
    }
}

/// Hex rendering, zero-padded to w/4 digits.
template <MachineWord U>
std::string to_hex(U a) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(word_bits<U> / 4, '0');
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        *it = digits[static_cast<unsigned>(a & U{0xF})];
        a = static_cast<U>(a >> 4);
    }
    return "0x" + out;
}

/// Calls `fn.template operator()<U>()` with U the word type of width `w`.
template <class Fn>
decltype(auto) dispatch_width(unsigned w, Fn&& fn) {
    switch (w) {
        case 16: return fn.template operator()<std::uint16_t>();
        case 32: return fn.template operator()<std::uint32_t>();
        case 64: return fn.template operator()<std::uint64_t>();
        case 128: return fn.template operator()<u128>();
        default: throw std::invalid_argument("word width must be one of 16, 32, 64, 128, got " + std::to_string(w));
    }
}

}  // namespace packmatch
