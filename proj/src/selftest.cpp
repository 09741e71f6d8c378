#include "packmatch/selftest.hpp"

#include <ostream>
#include <vector>

#include "packmatch/matchers.hpp"
#include "packmatch/oracle.hpp"

namespace packmatch {

namespace {

using U = std::uint16_t;

const std::vector<Symbol> kPattern{1, 2, 1};
const std::vector<Symbol> kText{1, 2, 3, 3, 2, 3, 1, 2};

}  // namespace

std::array<TraceWord, 7> selftest_trace() {
    const Alphabet alphabet = Alphabet::from_log(2);
    const auto text = pack_text<U>(kText, alphabet);
    MatchSpec spec;
    spec.k = 1;
    const auto t = build_template<U>(kPattern, alphabet, spec);

    const U b0 = extract_window(text, 0, t.ell, t.m_bar, t.m);
    const U x = t.A ^ b0;
    const U a1 = fnf(x, t.log_sigma);
    const U counts = bsa(a1, t.log_sigma, t.m_bar);
    const U m = pmin(counts, t.K, t.block_f);
    return {{
        {"A", t.A, 2, "01 10 01 00 01 10 01 00"},
        {"B0", b0, 2, "01 10 11 00 10 11 01 00"},
        {"X", x, 2, "00 00 10 00 11 01 00 00"},
        {"A'", a1, 2, "00 00 10 00 10 10 00 00"},
        {"bsa", counts, 8, "00000001 00000010"},
        {"K", t.K, 8, "00000001 00000001"},
        {"M", m, 8, "10000000 00000000"},
    }};
}

int run_selftest(std::ostream& out, bool trace, std::optional<std::string> fault) {
    auto words = selftest_trace();
    std::optional<std::string> first_bad;
    for (auto& word : words) {
        if (fault && *fault == word.name) word.value ^= 1;
        const std::string shown = figure_notation(word.value, word.field_bits);
        const bool ok = shown == word.golden;
        if (!ok && !first_bad) first_bad = std::string(word.name);
        if (trace) {
            out << word.name << std::string(5 - word.name.size(), ' ') << shown << "  " << to_hex(word.value)
                << (ok ? "" : "  expected " + std::string(word.golden)) << '\n';
        }
    }

    const Alphabet alphabet = Alphabet::from_log(2);
    const auto text = pack_text<U>(kText, alphabet);
    const auto report_for = [&](unsigned k) {
        auto rep = search_kmismatch_blockwise<U>(kPattern, text, k);
        rep.sort();
        return rep.positions;
    };
    const auto oracle_for = [&](unsigned k) {
        MatchSpec spec;
        spec.k = k;
        return oracle_search(kPattern, kText, spec).positions;
    };
    auto k1 = report_for(1);
    if (fault && *fault == "report") k1.push_back(7);
    const bool k1_ok = k1 == std::vector<std::size_t>{0} && k1 == oracle_for(1);
    const auto k2 = report_for(2);
    const bool k2_ok = k2 == std::vector<std::size_t>{0, 3, 4} && k2 == oracle_for(2);
    if (trace) {
        const auto list = [](const std::vector<std::size_t>& v) {
            std::string s = "{";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s + "}";
        };
        out << "k=1  " << list(k1) << (k1_ok ? "" : "  expected {0}") << '\n';
        out << "k=2  " << list(k2) << (k2_ok ? "" : "  expected {0,3,4}") << '\n';
    }
    if (!first_bad && !k1_ok) first_bad = "report k=1";
    if (!first_bad && !k2_ok) first_bad = "report k=2";

    if (first_bad) {
        out << "FAIL: first divergent word " << *first_bad << '\n';
        return 3;
    }
    out << "OK\n";
    return 0;
}

}  // namespace packmatch
