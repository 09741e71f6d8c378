#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "packmatch/oracle.hpp"

using namespace packmatch;

namespace {

const std::vector<Symbol> kText{1, 2, 3, 3, 2, 3, 1, 2};
const std::vector<Symbol> kPattern{1, 2, 1};

// A second reading of every model: tallies first, then one decision.
bool second_opinion(const std::vector<Symbol>& p, const std::vector<Symbol>& t, std::size_t j, const MatchSpec& s) {
    std::size_t differ = 0, beyond_delta = 0, below = 0, wild_mismatch = 0;
    std::uint64_t total = 0, total_within = 0;
    for (std::size_t h = 0; h < p.size(); ++h) {
        const int a = p[h];
        const int b = t[j + h];
        const unsigned d = static_cast<unsigned>(a > b ? a - b : b - a);
        const unsigned tol = s.deltas.empty() ? 0 : s.deltas[s.deltas.size() == 1 ? 0 : h];
        differ += a != b;
        below += a > b;
        beyond_delta += d > tol;
        total += d;
        if (d <= tol) total_within += d;
        if (s.wildcard && a != b && a != *s.wildcard && b != *s.wildcard) ++wild_mismatch;
    }
    switch (s.model) {
        case Model::kmismatch: return differ <= s.k;
        case Model::wildcard: return wild_mismatch <= s.k;
        case Model::delta_k: return beyond_delta <= s.k;
        case Model::delta_exact: return beyond_delta == 0;
        case Model::less_than: return below == 0;
        case Model::delta_gamma: return beyond_delta == 0 && total <= s.gamma;
        case Model::delta_k_gamma:
            return beyond_delta <= s.k && (s.raw_gamma_sum ? total : total_within) <= s.gamma;
    }
    return false;
}

}  // namespace

TEST_CASE("oracle_hamming counts differing positions") {
    CHECK(oracle_hamming(std::vector<Symbol>{1, 2, 1}, std::vector<Symbol>{1, 2, 3}) == 1);
    CHECK(oracle_hamming(kText, kText) == 0);
    CHECK_THROWS_AS(oracle_hamming(std::vector<Symbol>{1}, std::vector<Symbol>{1, 2}), std::invalid_argument);
}

TEST_CASE("the example instance matches at 0 with one mismatch, and at 0, 3, 4 with two") {
    MatchSpec spec;
    spec.k = 1;
    CHECK(oracle_search(kPattern, kText, spec).positions == std::vector<std::size_t>{0});
    spec.k = 2;
    CHECK(oracle_search(kPattern, kText, spec).positions == std::vector<std::size_t>{0, 3, 4});
}

TEST_CASE("a text matches itself exactly at 0") {
    MatchSpec spec;
    CHECK(oracle_search(kText, kText, spec).positions == std::vector<std::size_t>{0});
    CHECK(oracle_search(kText, kPattern, spec).positions.empty());
}

TEST_CASE("delta 0 with unbounded gamma is plain exact matching") {
    MatchSpec exact;
    MatchSpec dg;
    dg.model = Model::delta_gamma;
    dg.deltas = {0};
    dg.gamma = ~std::uint64_t{0};
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<Symbol> t(rng() % 60), p(1 + rng() % 4);
        for (auto& c : t) c = rng() % 3;
        for (auto& c : p) c = rng() % 3;
        CHECK(oracle_search(p, t, dg).positions == oracle_search(p, t, exact).positions);
    }
}

TEST_CASE("oracle_search validates its inputs") {
    MatchSpec spec;
    spec.model = Model::delta_k;
    spec.deltas = {1, 2};
    CHECK_THROWS_AS(oracle_search(kPattern, kText, spec), std::invalid_argument);
    MatchSpec wild;
    wild.model = Model::wildcard;
    CHECK_THROWS_AS(oracle_search(kPattern, kText, wild), std::invalid_argument);
    CHECK_THROWS_AS(oracle_search(std::vector<Symbol>{}, kText, MatchSpec{}), std::invalid_argument);
}

TEST_CASE("oracle_search agrees with an independently written evaluator on every model") {
    std::mt19937_64 rng(2024);
    const Model models[] = {Model::kmismatch, Model::wildcard,    Model::delta_k,      Model::delta_exact,
                            Model::less_than, Model::delta_gamma, Model::delta_k_gamma};
    for (Model model : models) {
        for (int rep = 0; rep < 400; ++rep) {
            const unsigned sigma = 2 + rng() % 14;
            std::vector<Symbol> t(rng() % 50), p(1 + rng() % 6);
            for (auto& c : t) c = rng() % sigma;
            for (auto& c : p) c = rng() % sigma;
            MatchSpec spec;
            spec.model = model;
            spec.k = rng() % (p.size() + 1);
            if (rng() % 2) {
                spec.deltas = {static_cast<unsigned>(rng() % sigma)};
            } else {
                for (std::size_t h = 0; h < p.size(); ++h) spec.deltas.push_back(rng() % sigma);
            }
            spec.gamma = rng() % (p.size() * sigma);
            spec.raw_gamma_sum = rng() % 2;
            if (model == Model::wildcard) spec.wildcard = static_cast<Symbol>(rng() % sigma);
            std::vector<std::size_t> expect;
            for (std::size_t j = 0; j + p.size() <= t.size(); ++j)
                if (second_opinion(p, t, j, spec)) expect.push_back(j);
            REQUIRE(oracle_search(p, t, spec).positions == expect);
        }
    }
}
