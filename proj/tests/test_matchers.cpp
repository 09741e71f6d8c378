#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "instances.hpp"
#include "packmatch/matchers.hpp"
#include "packmatch/oracle.hpp"
#include "packmatch/search.hpp"
#include "packmatch/selftest.hpp"

using namespace packmatch;
using u16 = std::uint16_t;
using Positions = std::vector<std::size_t>;

namespace {

const std::vector<Symbol> kText{1, 2, 3, 3, 2, 3, 1, 2};
const std::vector<Symbol> kPattern{1, 2, 1};

Positions sorted(MatchReport r) {
    r.sort();
    return r.positions;
}

Positions oracle(std::span<const Symbol> p, std::span<const Symbol> t, const MatchSpec& spec) {
    return oracle_search(p, t, spec).positions;
}

/// Field order reversed: how a word reads when its fields are listed from
/// field 1 and the listing is taken as one binary number.
u16 reverse_fields(u16 x, unsigned f) {
    u16 out = 0;
    const unsigned count = 16 / f;
    for (unsigned i = 0; i < count; ++i) {
        const unsigned v = (x >> (i * f)) & ((1u << f) - 1);
        out = static_cast<u16>(out | (v << ((count - 1 - i) * f)));
    }
    return out;
}

}  // namespace

TEST_CASE("the first window of the example reproduces all seven words") {
    const auto words = selftest_trace();
    const u16 expect[] = {0x1919, 0x1E39, 0x0720, 0x0A20, 0x0201, 0x0101, 0x0080};
    for (std::size_t i = 0; i < words.size(); ++i) {
        CAPTURE(words[i].name);
        CHECK(words[i].value == expect[i]);
        CHECK(figure_notation(words[i].value, words[i].field_bits) == words[i].golden);
    }
    // Read as binary numbers, the printed words of the example are the
    // field-reversed values.
    CHECK(reverse_fields(words[2].value, 2) == 0x08D0);
    CHECK(reverse_fields(words[3].value, 2) == 0x08A0);
    CHECK(reverse_fields(words[4].value, 8) == 0x0102);
    CHECK(reverse_fields(words[6].value, 8) == 0x8000);
}

TEST_CASE("selftest passes and its negative control fails") {
    std::ostringstream out;
    CHECK(run_selftest(out, false) == 0);
    CHECK(out.str() == "OK\n");
    for (const char* word : {"A", "B0", "X", "A'", "bsa", "K", "M", "report"}) {
        std::ostringstream bad;
        CHECK(run_selftest(bad, false, std::string(word)) == 3);
        CHECK(bad.str().find(std::string("first divergent word ") + word) != std::string::npos);
    }
}

TEST_CASE("report_positions decodes lane flags and drops lanes past n - m") {
    CHECK(report_positions<u16>(0x0080, 0, 4, 8, 8, 3) == Positions{0});
    CHECK(report_positions<u16>(0, 0, 4, 8, 8, 3).empty());
    CHECK(report_positions<u16>(0x8080, 3, 4, 8, 8, 3) == Positions{3});
    CHECK(report_positions<u16>(0x8080, 1, 4, 8, 8, 3) == Positions{5, 1});

    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 2000; ++rep) {
        const unsigned block_f = 1u << (rng() % 5);
        const unsigned lanes = 64 / block_f;
        const unsigned m_bar = 1 + rng() % 8;
        const std::size_t j = rng() % 100;
        const std::size_t n = rng() % 300;
        const std::size_t m = 1 + rng() % m_bar;
        std::uint64_t flags = 0;
        Positions expect;
        for (unsigned s = 0; s < lanes; ++s) {
            if (rng() % 2) {
                flags |= std::uint64_t{1} << ((s + 1) * block_f - 1);
                if (n >= m && j + s * m_bar <= n - m) expect.push_back(j + s * m_bar);
            }
        }
        auto got = report_positions<std::uint64_t>(flags, j, m_bar, block_f, n, m);
        std::sort(got.begin(), got.end());
        REQUIRE(got == expect);
    }
}

TEST_CASE("every k-mismatch matcher finds the example occurrence") {
    const auto t = pack_text<u16>(kText, Alphabet::from_log(2));
    CHECK(sorted(search_kmismatch_blockwise<u16>(kPattern, t, 1)) == Positions{0});
    CHECK(sorted(search_kmismatch_blockwise<u16>(kPattern, t, 1, BsaPath::shift_add)) == Positions{0});
    CHECK(sorted(search_kmismatch_compacted<u16>(kPattern, t, 1)) == Positions{0});
    CHECK(sorted(search_kmismatch_sentinel<u16>(kPattern, t, 1, SentinelMode::small_k)) == Positions{0});
    CHECK(sorted(search_kmismatch_sentinel<u16>(kPattern, t, 1, SentinelMode::small_comatch)) == Positions{0});
    CHECK(sorted(search_kmismatch_long<u16>(kPattern, t, 1)) == Positions{0});
    CHECK(sorted(search_kmismatch_blockwise<u16>(kPattern, t, 2)) == Positions{0, 3, 4});
}

TEST_CASE("blockwise and long reports carry exact mismatch counts") {
    const auto t = pack_text<u16>(kText, Alphabet::from_log(2));
    auto r = search_kmismatch_blockwise<u16>(kPattern, t, 2);
    r.sort();
    REQUIRE(r.counts);
    CHECK(*r.counts == std::vector<unsigned>{1, 2, 2});
    auto l = search_kmismatch_long<u16>(kPattern, t, 3);
    l.sort();
    CHECK(*l.counts == std::vector<unsigned>{1, 3, 3, 2, 2, 3});
}

TEST_CASE("k = m reports every start") {
    const auto t = pack_text<u16>(kText, Alphabet::from_log(2));
    const Positions all{0, 1, 2, 3, 4, 5};
    CHECK(sorted(search_kmismatch_blockwise<u16>(kPattern, t, 3)) == all);
    CHECK(sorted(search_kmismatch_compacted<u16>(kPattern, t, 3)) == all);
    CHECK(sorted(search_kmismatch_sentinel<u16>(kPattern, t, 3, SentinelMode::small_k)) == all);
    CHECK(sorted(search_kmismatch_sentinel<u16>(kPattern, t, 3, SentinelMode::small_comatch)) == all);
    CHECK(sorted(search_kmismatch_long<u16>(kPattern, t, 3)) == all);
}

TEST_CASE("the other models on small fixed instances") {
    const Alphabet a = Alphabet::from_log(2);
    const auto t = pack_text<u16>(kText, a);
    // Wildcard 3 in the text absorbs the mismatches at T[2], T[3], T[5].
    CHECK(sorted(search_kmismatch_wildcards<u16>(kPattern, t, 0, 3)) == Positions{0, 3});
    CHECK(sorted(search_delta_exact<u16>(kPattern, t, {1})) == Positions{4});
    CHECK(sorted(search_delta_exact<u16>(kPattern, t, {0})).empty());
    CHECK(sorted(search_lessthan<u16>(kPattern, t)) == Positions{0, 1, 2, 3, 4});
    CHECK(sorted(search_delta_kmismatch<u16>(kPattern, t, 1, {0})) == Positions{0});
    // Differences at 0: (0,0,2); at 1: (1,1,2); at 3: (2,0,2); at 4: (1,1,0).
    CHECK(sorted(search_delta_gamma<u16>(kPattern, t, {2}, 2)) == Positions{0, 4});
    CHECK(sorted(search_delta_gamma<u16>(kPattern, t, {2}, 2, GammaVariant::compacted)) == Positions{0, 4});
    CHECK(sorted(search_delta_k_gamma<u16>(kPattern, t, {1}, 1, 0)) == Positions{0});
    CHECK(sorted(search_delta_k_gamma<u16>(kPattern, t, {1}, 1, 0, true)).empty());
}

TEST_CASE("(delta, gamma) with every difference allowed reports every start") {
    const Alphabet a = Alphabet::from_log(2);
    const auto t = pack_text<u16>(kText, a);
    const Positions all{0, 1, 2, 3, 4, 5};
    CHECK(sorted(search_delta_gamma<u16>(kPattern, t, {3}, 9)) == all);
    CHECK(sorted(search_delta_gamma<u16>(kPattern, t, {3}, 9, GammaVariant::compacted)) == all);
    CHECK(sorted(search_delta_gamma<u16>(kPattern, t, {0}, 0)).empty());
    const std::vector<Symbol> exact{2, 3, 1};
    CHECK(sorted(search_delta_gamma<u16>(exact, t, {0}, 0)) == Positions{4});
}

TEST_CASE("hamming_distance_packed counts differing characters") {
    const std::vector<Symbol> a{1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3};
    const std::vector<Symbol> b{1, 2, 0, 0, 1, 3, 3, 0, 1, 2, 2};
    const auto pa = pack_chunks<u16>(a, 2);
    const auto pb = pack_chunks<u16>(b, 2);
    CHECK(hamming_distance_packed<u16>(pa, pb, a.size(), 2) == 3);
    CHECK(hamming_distance_packed<u16>(pa, pa, a.size(), 2) == 0);
    CHECK_THROWS_AS(hamming_distance_packed<u16>(pa, std::span<const u16>(pb).first(1), a.size(), 2),
                    std::invalid_argument);
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 500; ++rep) {
        const unsigned ls = 1 + rng() % 16;
        std::vector<Symbol> x(1 + rng() % 60), y;
        for (auto& c : x) c = static_cast<Symbol>(rng() % (1u << ls));
        y = x;
        for (auto& c : y)
            if (rng() % 3 == 0) c = static_cast<Symbol>(rng() % (1u << ls));
        REQUIRE(hamming_distance_packed<std::uint64_t>(pack_chunks<std::uint64_t>(x, ls),
                                                       pack_chunks<std::uint64_t>(y, ls), x.size(), ls) ==
                oracle_hamming(x, y));
    }
}

TEST_CASE("resolve_variant picks a runnable algorithm") {
    const Alphabet dna = Alphabet::from_log(2);
    MatchSpec spec;
    spec.k = 1;
    CHECK(resolve_variant(8, dna, 64, spec) == Variant::sentinel);
    spec.k = 0;
    CHECK(resolve_variant(8, dna, 64, spec) == Variant::compacted);
    spec.k = 7;
    CHECK(resolve_variant(8, dna, 64, spec) == Variant::sentinel_comatch);
    spec.k = 3;
    CHECK(resolve_variant(8, dna, 64, spec) == Variant::blockwise);
    CHECK(resolve_variant(8, Alphabet::from_log(8), 128, spec) == Variant::compacted);
    CHECK(resolve_variant(40, dna, 64, spec) == Variant::long_pattern);
    spec.variant = Variant::sentinel;
    CHECK_THROWS_AS(resolve_variant(8, dna, 16, spec), PatternTooLong);
    spec.variant = Variant::blockwise;
    CHECK_THROWS_AS(resolve_variant(9, dna, 16, spec), PatternTooLong);
    spec.model = Model::less_than;
    spec.variant = Variant::compacted;
    CHECK_THROWS_AS(resolve_variant(4, dna, 16, spec), std::invalid_argument);
    spec.model = Model::wildcard;
    spec.variant = Variant::long_pattern;
    CHECK_THROWS_AS(resolve_variant(4, dna, 16, spec), std::invalid_argument);
    spec.variant = Variant::automatic;
    CHECK_THROWS_AS(resolve_variant(9, dna, 16, spec), PatternTooLong);
}

TEST_CASE_TEMPLATE("every model and variant agrees with the oracle", U, std::uint16_t, std::uint32_t, std::uint64_t,
                   packmatch::u128) {
    struct Case {
        Model model;
        Variant variant;
    };
    const Case cases[] = {
        {Model::kmismatch, Variant::blockwise},     {Model::kmismatch, Variant::compacted},
        {Model::kmismatch, Variant::sentinel},      {Model::kmismatch, Variant::sentinel_comatch},
        {Model::kmismatch, Variant::long_pattern},  {Model::kmismatch, Variant::automatic},
        {Model::wildcard, Variant::blockwise},      {Model::wildcard, Variant::compacted},
        {Model::wildcard, Variant::sentinel},       {Model::delta_k, Variant::blockwise},
        {Model::delta_k, Variant::compacted},       {Model::delta_k, Variant::sentinel_comatch},
        {Model::delta_exact, Variant::blockwise},   {Model::less_than, Variant::blockwise},
        {Model::delta_gamma, Variant::blockwise},   {Model::delta_gamma, Variant::compacted},
        {Model::delta_k_gamma, Variant::blockwise},
    };
    std::mt19937_64 rng(word_bits<U>);
    instances::Instance inst;
    for (const auto& c : cases) {
        for (unsigned sigma : {2u, 3u, 4u, 16u, 256u}) {
            for (int rep = 0; rep < 60; ++rep) {
                if (!instances::make_instance(rng, c.model, c.variant, sigma, word_bits<U>, 300, inst)) break;
                CAPTURE(to_string(c.model));
                CAPTURE(to_string(c.variant));
                CAPTURE(sigma);
                const auto packed = pack_text<U>(inst.text, inst.alphabet);
                const auto got = search<U>(inst.pattern, packed, inst.spec);
                REQUIRE(sorted(got) == oracle(inst.pattern, inst.text, inst.spec));
                if (got.counts && has_exact_counts(c.model, resolve_variant(inst.pattern.size(), inst.alphabet,
                                                                             word_bits<U>, inst.spec))) {
                    auto r = got;
                    r.sort();
                    for (std::size_t i = 0; i < r.positions.size(); ++i) {
                        if (c.model != Model::kmismatch) break;
                        const std::span<const Symbol> window(inst.text.data() + r.positions[i], inst.pattern.size());
                        REQUIRE((*r.counts)[i] == oracle_hamming(inst.pattern, window));
                    }
                }
            }
        }
    }
}

TEST_CASE("reported sets do not depend on the word width") {
    std::mt19937_64 rng(77);
    instances::Instance inst;
    for (int rep = 0; rep < 300; ++rep) {
        const Model model = static_cast<Model>(rng() % 7);
        if (!instances::make_instance(rng, model, Variant::automatic, 2u << (rng() % 3), 16, 200, inst)) continue;
        const auto expect = sorted(search(inst.pattern, inst.text, inst.alphabet, inst.spec, 16));
        for (unsigned w : {32u, 64u, 128u}) {
            REQUIRE(sorted(search(inst.pattern, inst.text, inst.alphabet, inst.spec, w)) == expect);
        }
    }
}

TEST_CASE("saturation near 2^(f-1) never produces a spurious report") {
    // sigma = 16, w = 64, m = 8: compacted uses f = bit_width(k) + 1 and the
    // sentinel variant stops after k + 1 rounds. Windows get exactly c
    // mismatches for every c in 0..8.
    const Alphabet a = Alphabet::from_log(4);
    std::mt19937_64 rng(12);
    for (unsigned k = 0; k <= 8; ++k) {
        for (int rep = 0; rep < 40; ++rep) {
            std::vector<Symbol> p(8);
            for (auto& c : p) c = static_cast<Symbol>(rng() % 16);
            std::vector<Symbol> t;
            for (unsigned c = 0; c <= 8; ++c) {
                std::vector<Symbol> copy = p;
                std::vector<unsigned> idx{0, 1, 2, 3, 4, 5, 6, 7};
                std::shuffle(idx.begin(), idx.end(), rng);
                for (unsigned i = 0; i < c; ++i) copy[idx[i]] = static_cast<Symbol>((copy[idx[i]] + 1 + rng() % 15) % 16);
                t.insert(t.end(), copy.begin(), copy.end());
                t.push_back(static_cast<Symbol>(rng() % 16));
            }
            MatchSpec spec;
            spec.k = k;
            const auto expect = oracle(p, t, spec);
            const auto packed = pack_text<std::uint64_t>(t, a);
            REQUIRE(sorted(search_kmismatch_compacted<std::uint64_t>(p, packed, k)) == expect);
            REQUIRE(sorted(search_kmismatch_sentinel<std::uint64_t>(p, packed, k, SentinelMode::small_k)) == expect);
            REQUIRE(sorted(search_kmismatch_sentinel<std::uint64_t>(p, packed, k, SentinelMode::small_comatch)) ==
                    expect);
            // The planted windows themselves: exactly those with c <= k.
            for (unsigned c = 0; c <= 8; ++c) {
                const bool hit = std::find(expect.begin(), expect.end(), std::size_t{c} * 9) != expect.end();
                REQUIRE(hit == (c <= k));
            }
        }
    }
}

TEST_CASE("monotone in k, delta and gamma") {
    std::mt19937_64 rng(31);
    instances::Instance inst;
    const auto subset = [](const Positions& a, const Positions& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (int rep = 0; rep < 300; ++rep) {
        REQUIRE(instances::make_instance(rng, Model::delta_k_gamma, Variant::automatic, 16, 64, 200, inst));
        auto s = inst.spec;
        const auto base = sorted(search(inst.pattern, inst.text, inst.alphabet, s, 64));
        auto more_k = s;
        more_k.k += 1;
        REQUIRE(subset(base, sorted(search(inst.pattern, inst.text, inst.alphabet, more_k, 64))));
        auto more_gamma = s;
        more_gamma.gamma += 1;
        REQUIRE(subset(base, sorted(search(inst.pattern, inst.text, inst.alphabet, more_gamma, 64))));
        auto more_delta = s;
        for (auto& d : more_delta.deltas) d = std::min(d + 1, inst.alphabet.sigma - 1);
        if (!s.raw_gamma_sum) {
            // Widening delta can move a difference into the modified sum, so
            // only the raw-sum model and (delta, k) are monotone in delta.
            more_delta.raw_gamma_sum = s.raw_gamma_sum = true;
        }
        REQUIRE(subset(sorted(search(inst.pattern, inst.text, inst.alphabet, s, 64)),
                       sorted(search(inst.pattern, inst.text, inst.alphabet, more_delta, 64))));
    }
}

TEST_CASE("model reductions") {
    std::mt19937_64 rng(41);
    instances::Instance inst;
    for (int rep = 0; rep < 300; ++rep) {
        REQUIRE(instances::make_instance(rng, Model::kmismatch, Variant::automatic, 16, 64, 200, inst));
        const auto plain = sorted(search(inst.pattern, inst.text, inst.alphabet, inst.spec, 64));
        auto dk = inst.spec;
        dk.model = Model::delta_k;
        dk.deltas = {0};
        REQUIRE(sorted(search(inst.pattern, inst.text, inst.alphabet, dk, 64)) == plain);
        // A wildcard symbol that occurs nowhere changes nothing.
        auto wild = inst.spec;
        wild.model = Model::wildcard;
        std::vector<bool> used(16);
        for (auto c : inst.pattern) used[c] = true;
        for (auto c : inst.text) used[c] = true;
        const auto absent = std::find(used.begin(), used.end(), false);
        if (absent != used.end()) {
            wild.wildcard = static_cast<Symbol>(absent - used.begin());
            REQUIRE(sorted(search(inst.pattern, inst.text, inst.alphabet, wild, 64)) == plain);
        }
        auto dk0 = dk;
        dk0.k = 0;
        dk0.deltas = {static_cast<unsigned>(rng() % 4)};
        auto exact = dk0;
        exact.model = Model::delta_exact;
        REQUIRE(sorted(search(inst.pattern, inst.text, inst.alphabet, dk0, 64)) ==
                sorted(search(inst.pattern, inst.text, inst.alphabet, exact, 64)));
    }
}
