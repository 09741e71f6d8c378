#include "packmatch/oracle.hpp"

#include <stdexcept>

namespace packmatch {

unsigned oracle_hamming(std::span<const Symbol> a, std::span<const Symbol> b) {
    if (a.size() != b.size()) throw std::invalid_argument("oracle_hamming: strings differ in length");
    unsigned d = 0;
    for (std::size_t h = 0; h < a.size(); ++h) d += a[h] != b[h];
    return d;
}

namespace {

unsigned distance(Symbol p, Symbol t) { return p > t ? p - t : t - p; }

}  // namespace

bool oracle_matches_at(std::span<const Symbol> pattern, std::span<const Symbol> text, std::size_t j,
                       const MatchSpec& spec) {
    const std::size_t m = pattern.size();
    unsigned failed = 0;
    std::uint64_t sum = 0;
    std::uint64_t raw_sum = 0;
    for (std::size_t h = 0; h < m; ++h) {
        const Symbol p = pattern[h];
        const Symbol t = text[j + h];
        switch (spec.model) {
            case Model::kmismatch:
                failed += p != t;
                break;
            case Model::wildcard:
                failed += p != t && p != *spec.wildcard && t != *spec.wildcard;
                break;
            case Model::less_than:
                failed += p > t;
                break;
            case Model::delta_k:
            case Model::delta_exact:
            case Model::delta_gamma:
            case Model::delta_k_gamma: {
                const unsigned d = distance(p, t);
                const bool ok = d <= spec.delta_at(h);
                failed += !ok;
                raw_sum += d;
                if (ok) sum += d;
                break;
            }
        }
    }
    switch (spec.model) {
        case Model::kmismatch:
        case Model::wildcard:
        case Model::delta_k:
            return failed <= spec.k;
        case Model::less_than:
        case Model::delta_exact:
            return failed == 0;
        case Model::delta_gamma:
            return failed == 0 && raw_sum <= spec.gamma;
        case Model::delta_k_gamma:
            return failed <= spec.k && (spec.raw_gamma_sum ? raw_sum : sum) <= spec.gamma;
    }
    return false;
}

MatchReport oracle_search(std::span<const Symbol> pattern, std::span<const Symbol> text, const MatchSpec& spec) {
    if (pattern.empty()) throw std::invalid_argument("pattern must not be empty");
    if (spec.model == Model::wildcard && !spec.wildcard) {
        throw std::invalid_argument("wildcard model requires a wildcard symbol");
    }
    if (spec.deltas.size() > 1 && spec.deltas.size() != pattern.size()) {
        throw std::invalid_argument("delta vector length must be 1 or m");
    }
    MatchReport rep;
    if (text.size() < pattern.size()) return rep;
    for (std::size_t j = 0; j + pattern.size() <= text.size(); ++j) {
        if (oracle_matches_at(pattern, text, j, spec)) rep.positions.push_back(j);
    }
    return rep;
}

}  // namespace packmatch
