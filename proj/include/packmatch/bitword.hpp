#pragma once

// Field-word (SWAR) primitives. A word of w bits is read as floor(w/f) fields
// of f bits; field 1 is the lowest-order one. The most significant bit of a
// field is its "top" bit. Bits above the last complete field (w mod f of them)
// must be zero on input and are zero on output.
//
// Every primitive comes in two flavours: a public one taking the field size
// f, and a `*_masked` one taking a precomputed top-bit mask. The masked forms
// also accept layouts where fields are not contiguous (the compacted matchers
// leave unused bits between groups of fields); they only require that bits
// outside the fields are zero in every operand.

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "packmatch/word.hpp"

namespace packmatch {

/// Geometry of an f-field word.
template <MachineWord U>
struct FieldLayout {
    unsigned f = 1;
    unsigned count = 0;   // floor(w / f)
    U v_mask{};           // top bit of every field (V_f)
    U low_mask{};         // lowest bit of every field
    U body_mask{};        // every bit of every complete field
};

template <MachineWord U>
constexpr void check_field_size(unsigned f) {
    if (f == 0 || f > word_bits<U>) {
        throw InvalidLayout("field size " + std::to_string(f) + " out of range for w=" +
                            std::to_string(word_bits<U>));
    }
}

/// `value` (masked to f bits) repeated in fields first..first+count-1 (0-based).
template <MachineWord U>
constexpr U repeat_field(U value, unsigned f, unsigned count, unsigned first = 0) {
    U out{};
    value &= low_bits<U>(f);
    for (unsigned i = first; i < first + count && i * f < word_bits<U>; ++i) out |= shl(value, i * f);
    return out;
}

template <MachineWord U>
constexpr U make_v_mask(unsigned f) {
    check_field_size<U>(f);
    return repeat_field<U>(bit<U>(f - 1), f, word_bits<U> / f);
}

template <MachineWord U>
constexpr FieldLayout<U> make_layout(unsigned f) {
    check_field_size<U>(f);
    const unsigned count = word_bits<U> / f;
    return FieldLayout<U>{f, count, repeat_field<U>(bit<U>(f - 1), f, count), repeat_field<U>(U{1}, f, count),
                          low_bits<U>(count * f)};
}

// --- find non-zero fields -------------------------------------------------

template <MachineWord U>
constexpr U fnf_masked(U a, U v) {
    const U w = a & bnot(v);
    const U x = sub(v, w);
    return (bnot(x) | a) & v;
}

/// Field i of the result is 2^(f-1) when field i of `a` is non-zero, else 0.
template <MachineWord U>
constexpr U fnf(U a, unsigned f) {
    return fnf_masked(a, make_v_mask<U>(f));
}

// --- sideways addition ----------------------------------------------------

template <MachineWord U>
constexpr unsigned sa(U a) {
    return popcount(a);
}

// --- interleaved blockwise sideways addition ------------------------------

/// Layout of the saturating accumulator used by ibsa: fields of f bits whose
/// top bits are `top`, occupying exactly the bits in `body`. Summation runs
/// along a stride of `stride_bits` (a field and the field stride_bits above it
/// are consecutive terms of one sequence).
template <MachineWord U>
struct StridedFields {
    unsigned f = 1;
    unsigned stride_bits = 1;
    U top{};
    U body{};
};

/// Saturating windowed sum over field values. Each result field holds the sum
/// of the values in itself and the b-1 fields below it along the stride
/// (fewer near the bottom of the word). A sum >= 2^(f-1) leaves the top bit
/// set and the low bits unspecified.
template <MachineWord U>
constexpr U ibsa_values(U x, const StridedFields<U>& layout, unsigned b) {
    const U low = bnot(layout.top);
    U acc = x & layout.body;
    for (unsigned span = 1; span < b; span <<= 1) {
        const unsigned s = span * layout.stride_bits;
        if (s >= word_bits<U>) break;
        const U shifted = shl(acc, s) & layout.body;
        const U tops = (acc | shifted) & layout.top;
        // Low parts are < 2^(f-1), so any carry stops in the field's own top bit.
        acc = (add<U>(acc & low, shifted & low) | tops) & layout.body;
    }
    return acc;
}

constexpr bool is_pow2(unsigned x) { return x != 0 && (x & (x - 1)) == 0; }

/// Interleaved blockwise sideways addition over top bits. `a` may only have
/// top bits set. Field i of the result counts the top bits set in fields
/// i, i-g, i-2g, ... (at most b of them); counts >= 2^(f-1) saturate.
template <MachineWord U>
constexpr U ibsa(U a, unsigned f, unsigned stride_g, unsigned b) {
    const auto layout = make_layout<U>(f);
    if (!is_pow2(b)) throw std::invalid_argument("ibsa: block count must be a power of two");
    if (stride_g == 0) throw std::invalid_argument("ibsa: stride must be at least one field");
    const StridedFields<U> strided{f, stride_g * f, layout.v_mask, layout.body_mask};
    return ibsa_values<U>(shr<U>(a & layout.v_mask, f - 1), strided, b);
}

// --- blockwise sideways addition ------------------------------------------

enum class BsaPath {
    multiply,   // word-RAM: prefix sum with one multiplication
    shift_add,  // AC0: doubling shift-and-add
};

/// Smallest power of two r with 2^(r*f) > max_total, i.e. r*f bits hold any
/// total up to max_total.
constexpr unsigned bsa_widening(unsigned f, u128 max_total) {
    unsigned need = 0;
    while (need < 128 && (u128{1} << need) <= max_total) ++need;
    unsigned r = 1;
    while (r * f < need) r <<= 1;
    return r;
}

/// Masks for one (f, b, r, path) configuration of bsa, built once and reused
/// across words.
template <MachineWord U>
struct BsaPlan {
    unsigned f = 1;
    unsigned b = 1;
    unsigned r = 1;
    BsaPath path = BsaPath::multiply;
    unsigned widen_steps = 0;
    U widen_masks[8]{};   // 0^l 1^l ... for l = f, 2f, 4f, ...
    U input_mask{};
    U complete{};         // bits of the complete b*f blocks
    bool fold = false;    // b > r: combine r*f-bit partial sums per block
    unsigned width = 0;   // r*f
    unsigned block_bits = 0;
    unsigned gap = 0;     // (b - r) * f
    U ones{};             // 0^(rf-1) 1 ... 0^(rf-1) 1
    U keep{};             // 1^(rf) 0^((b-r)f) per block
};

/// Plan for summing f-bit field values in blocks of b fields. `r` (a power of
/// two) must satisfy 2^(r*f) > the total of all fields of the input.
template <MachineWord U>
constexpr BsaPlan<U> make_bsa_plan(unsigned f, unsigned b, unsigned r, BsaPath path = BsaPath::multiply) {
    constexpr unsigned W = word_bits<U>;
    check_field_size<U>(f);
    if (!is_pow2(b) || b * f > W) throw std::invalid_argument("bsa: block count must be a power of two with b*f <= w");
    if (!is_pow2(r)) throw std::invalid_argument("bsa: widening factor must be a power of two");

    BsaPlan<U> plan;
    plan.f = f;
    plan.b = b;
    plan.r = r;
    plan.path = path;
    plan.block_bits = b * f;
    plan.input_mask = low_bits<U>((W / f) * f);
    const unsigned blocks = W / plan.block_bits;
    plan.complete = low_bits<U>(blocks * plan.block_bits);

    const unsigned lim = std::min(b, r);
    unsigned width = f;
    for (unsigned c = 1; c < lim; c <<= 1) {
        plan.widen_masks[plan.widen_steps++] =
            repeat_field<U>(low_bits<U>(width), 2 * width, (W + 2 * width - 1) / (2 * width));
        width *= 2;
    }
    plan.width = width;
    plan.fold = lim < b;
    if (plan.fold) {
        plan.gap = plan.block_bits - width;
        plan.ones = repeat_field<U>(U{1}, width, W / width);
        plan.keep = repeat_field<U>(shl(low_bits<U>(width), plan.gap), plan.block_bits, blocks);
    }
    return plan;
}

/// Exact per-block sums of field values: field i of the (b*f)-field result is
/// the sum of fields (i-1)b+1 .. ib of `x`.
template <MachineWord U>
constexpr U bsa_values(U x, const BsaPlan<U>& plan) {
    x &= plan.input_mask;
    unsigned width = plan.f;
    for (unsigned step = 0; step < plan.widen_steps; ++step) {
        const U m = plan.widen_masks[step];
        x = add<U>(x & m, shr(x, width) & m);
        width *= 2;
    }
    if (!plan.fold) return x & plan.complete;

    if (plan.path == BsaPath::multiply) {
        x = mul(x, plan.ones);
        if (plan.block_bits < word_bits<U>) x = sub(x, shl(x, plan.block_bits));
    } else {
        for (unsigned span = 1; span < plan.b / plan.r; span <<= 1) x = add(x, shl(x, span * plan.width));
    }
    return shr<U>(x & plan.keep, plan.gap);
}

template <MachineWord U>
constexpr U bsa_values(U x, unsigned f, unsigned b, unsigned r, BsaPath path = BsaPath::multiply) {
    return bsa_values(x, make_bsa_plan<U>(f, b, r, path));
}

/// Blockwise sideways addition over top bits: field i of the (b*f)-field
/// result is the number of top bits set in the block of b f-fields ending at
/// field ib. `r` = 0 selects the default widening for w.
template <MachineWord U>
constexpr U bsa(U a, unsigned f, unsigned b, unsigned r = 0, BsaPath path = BsaPath::multiply) {
    const auto layout = make_layout<U>(f);
    if (r == 0) r = bsa_widening(f, word_bits<U>);
    return bsa_values<U>(shr<U>(a & layout.v_mask, f - 1), f, b, r, path);
}

// --- parallel comparison --------------------------------------------------

template <MachineWord U>
constexpr U pmin_masked(U a, U b, U v) {
    const U ta = a & v;
    const U tb = b & v;
    const U a_low = a & bnot(v);
    const U diff = sub<U>(b | v, a_low);
    const U h1 = bnot(ta) & tb;
    const U h2 = diff & (ta ^ tb ^ v);
    return (h1 | h2) & v;
}

/// Field i of the result is 2^(f-1) iff a[i] <= b[i].
template <MachineWord U>
constexpr U pmin(U a, U b, unsigned f) {
    return pmin_masked(a, b, make_v_mask<U>(f));
}

/// Field i of the result is 2^(f-1) iff a[i] >= b[i].
template <MachineWord U>
constexpr U pmax(U a, U b, unsigned f) {
    return pmin_masked(b, a, make_v_mask<U>(f));
}

/// Expands each top-bit flag in `flags` to a full field of ones.
template <MachineWord U>
constexpr U spread_top_bits(U flags, unsigned f) {
    return sub(flags, shr(flags, f - 1)) | flags;
}

template <MachineWord U>
constexpr U pvmin_masked(U a, U b, U v, unsigned f) {
    const U le = spread_top_bits(pmin_masked(a, b, v), f);
    return (a & le) | (b & bnot(le));
}

template <MachineWord U>
constexpr U pvmax_masked(U a, U b, U v, unsigned f) {
    const U le = spread_top_bits(pmin_masked(a, b, v), f);
    return (b & le) | (a & bnot(le));
}

template <MachineWord U>
constexpr U pvmin(U a, U b, unsigned f) {
    return pvmin_masked(a, b, make_v_mask<U>(f), f);
}

template <MachineWord U>
constexpr U pvmax(U a, U b, unsigned f) {
    return pvmax_masked(a, b, make_v_mask<U>(f), f);
}

// --- interleave -----------------------------------------------------------

template <MachineWord U>
constexpr U interleave_masked(U a, U b, U z, U v, unsigned f) {
    const U sel = spread_top_bits(fnf_masked(z, v), f);
    return (a & bnot(sel)) | (b & sel);
}

/// Field i of the result is a[i] when z[i] == 0, b[i] otherwise.
template <MachineWord U>
constexpr U interleave(U a, U b, U z, unsigned f) {
    return interleave_masked(a, b, z, make_v_mask<U>(f), f);
}

// --- bit scanning ---------------------------------------------------------

template <MachineWord U>
constexpr std::optional<unsigned> highest_set_bit(U a) {
    if (a == 0) return std::nullopt;
    return bit_width(a) - 1;
}

}  // namespace packmatch
