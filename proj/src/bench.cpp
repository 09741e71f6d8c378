#include "packmatch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>

#include "packmatch/search.hpp"

namespace packmatch {

namespace {

std::vector<Variant> model_variants(Model model) {
    switch (model) {
        case Model::kmismatch:
            return {Variant::blockwise, Variant::compacted, Variant::sentinel, Variant::sentinel_comatch,
                    Variant::long_pattern};
        case Model::wildcard:
        case Model::delta_k:
            return {Variant::blockwise, Variant::compacted, Variant::sentinel, Variant::sentinel_comatch};
        case Model::delta_gamma:
            return {Variant::blockwise, Variant::compacted};
        default:
            return {Variant::blockwise};
    }
}

template <class Fn>
double seconds(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double rate(std::size_t n, double secs) { return secs > 0 ? double(n) / secs : 0.0; }

}  // namespace

BenchCorpus make_bench_corpus(const BenchConfig& config) {
    BenchCorpus corpus{Alphabet::for_size(config.sigma), {}, {}};
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<unsigned> pick(0, config.sigma - 1);
    corpus.text.resize(config.n);
    for (auto& c : corpus.text) c = static_cast<Symbol>(pick(rng));
    corpus.pattern.resize(config.m);
    if (config.n >= config.m) {
        const std::size_t at = config.n / 3;
        const std::size_t base = at + config.m <= config.n ? at : 0;
        std::copy_n(corpus.text.begin() + base, config.m, corpus.pattern.begin());
        if (config.m) corpus.pattern[0] = static_cast<Symbol>((corpus.pattern[0] + 1) % config.sigma);
    } else {
        for (auto& c : corpus.pattern) c = static_cast<Symbol>(pick(rng));
    }
    return corpus;
}

std::string bench_params(const MatchSpec& spec) {
    std::string out;
    const auto add = [&](const std::string& item) { out += (out.empty() ? "" : ";") + item; };
    switch (spec.model) {
        case Model::kmismatch:
        case Model::wildcard:
        case Model::delta_k:
        case Model::delta_k_gamma:
            add("k=" + std::to_string(spec.k));
            break;
        default:
            break;
    }
    if (spec.wildcard) add("wildcard=" + std::to_string(*spec.wildcard));
    if (!spec.deltas.empty()) {
        std::string d;
        for (unsigned x : spec.deltas) d += (d.empty() ? "" : "/") + std::to_string(x);
        add("delta=" + d);
    }
    if (spec.model == Model::delta_gamma || spec.model == Model::delta_k_gamma) add("gamma=" + std::to_string(spec.gamma));
    if (spec.raw_gamma_sum) add("raw-sum");
    return out;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    const BenchCorpus corpus = make_bench_corpus(config);
    const std::string params = bench_params(config.spec);
    std::vector<BenchRow> rows;

    MatchSpec spec = config.spec;
    spec.variant = Variant::oracle;
    MatchReport report;
    double secs = seconds([&] { report = oracle_search(corpus.pattern, corpus.text, spec); });
    rows.push_back({spec.model, Variant::oracle, 0, corpus.alphabet.sigma, config.m, config.n, params,
                    rate(config.n, secs), report.positions.size()});

    const auto variants = config.variants.empty() ? model_variants(spec.model) : config.variants;
    for (Variant variant : variants) {
        if (variant == Variant::oracle) continue;
        for (unsigned w : config.widths) {
            spec.variant = variant;
            try {
                resolve_variant(corpus.pattern.size(), corpus.alphabet, w, spec);
            } catch (const std::logic_error&) {
                continue;
            }
            dispatch_width(w, [&]<MachineWord U>() {
                const auto packed = pack_text<U>(corpus.text, corpus.alphabet);
                secs = seconds([&] { report = search<U>(corpus.pattern, packed, spec); });
            });
            rows.push_back({spec.model, variant, w, corpus.alphabet.sigma, config.m, config.n, params,
                            rate(config.n, secs), report.positions.size()});
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "model,variant,width,sigma,m,n,params,chars_per_second,matches\n";
    for (const auto& row : rows) {
        char cps[64];
        std::snprintf(cps, sizeof cps, "%.0f", row.chars_per_second);
        out << to_string(row.model) << ',' << to_string(row.variant) << ',' << row.width << ',' << row.sigma << ','
            << row.m << ',' << row.n << ',' << row.params << ',' << cps << ',' << row.matches << '\n';
    }
}

}  // namespace packmatch
