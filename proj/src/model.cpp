#include "packmatch/model.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>

namespace packmatch {

Alphabet Alphabet::for_size(std::uint64_t size) {
    unsigned log = 1;
    while ((std::uint64_t{1} << log) < size) ++log;
    return from_log(log);
}

Alphabet Alphabet::from_log(unsigned log_sigma) {
    if (log_sigma == 0 || log_sigma > kMaxLogSigma) {
        throw std::invalid_argument("bits per character must be in 1.." + std::to_string(kMaxLogSigma));
    }
    return Alphabet{1u << log_sigma, log_sigma};
}

namespace {

constexpr std::array<std::pair<Model, std::string_view>, 7> kModelNames{{
    {Model::kmismatch, "kmismatch"},
    {Model::wildcard, "wildcard"},
    {Model::delta_k, "delta-k"},
    {Model::delta_exact, "delta-exact"},
    {Model::less_than, "less-than"},
    {Model::delta_gamma, "delta-gamma"},
    {Model::delta_k_gamma, "delta-k-gamma"},
}};

constexpr std::array<std::pair<Variant, std::string_view>, 7> kVariantNames{{
    {Variant::automatic, "auto"},
    {Variant::blockwise, "blockwise"},
    {Variant::compacted, "compacted"},
    {Variant::sentinel, "sentinel"},
    {Variant::sentinel_comatch, "sentinel-comatch"},
    {Variant::long_pattern, "long"},
    {Variant::oracle, "oracle"},
}};

}  // namespace

std::string_view to_string(Model model) {
    for (const auto& [m, name] : kModelNames)
        if (m == model) return name;
    return "?";
}

std::string_view to_string(Variant variant) {
    for (const auto& [v, name] : kVariantNames)
        if (v == variant) return name;
    return "?";
}

std::optional<Model> parse_model(std::string_view name) {
    for (const auto& [m, n] : kModelNames)
        if (n == name) return m;
    return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view name) {
    for (const auto& [v, n] : kVariantNames)
        if (n == name) return v;
    return std::nullopt;
}

void validate_spec(const MatchSpec& spec, std::size_t m, const Alphabet& alphabet) {
    if (m == 0) throw std::invalid_argument("pattern must not be empty");
    if (spec.deltas.size() > 1 && spec.deltas.size() != m) {
        throw std::invalid_argument("delta vector has " + std::to_string(spec.deltas.size()) +
                                    " entries for a pattern of length " + std::to_string(m));
    }
    for (unsigned d : spec.deltas) {
        if (d >= alphabet.sigma) {
            throw std::invalid_argument("delta " + std::to_string(d) + " must be below sigma=" +
                                        std::to_string(alphabet.sigma));
        }
    }
    if (spec.wildcard && *spec.wildcard >= alphabet.sigma) {
        throw std::invalid_argument("wildcard symbol outside the alphabet");
    }
    if (spec.model == Model::wildcard && !spec.wildcard) {
        throw std::invalid_argument("wildcard model requires a wildcard symbol");
    }
}

void MatchReport::sort() {
    if (!counts) {
        std::sort(positions.begin(), positions.end());
        return;
    }
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });
    std::vector<std::size_t> p;
    std::vector<unsigned> c;
    p.reserve(order.size());
    c.reserve(order.size());
    for (std::size_t i : order) {
        p.push_back(positions[i]);
        c.push_back((*counts)[i]);
    }
    positions = std::move(p);
    counts = std::move(c);
}

}  // namespace packmatch
