// packmatch: pack texts, search them under the approximate matching models,
// benchmark the packed matchers and run the embedded golden self-test.
//
// Exit codes: 0 success (search: at least one match), 1 search found
// nothing, 2 usage or input error, 3 self-test failure.

#include <algorithm>
#include <cstdlib>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "packmatch/bench.hpp"
#include "packmatch/pktx.hpp"
#include "packmatch/search.hpp"
#include "packmatch/selftest.hpp"

namespace {

using namespace packmatch;

constexpr int kExitNoMatch = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    if (path == "-") {
        std::cin >> std::noskipws;
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    if (path == "-") {
        std::cout.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw UsageError("write to '" + path + "' failed");
}

std::string describe_byte(std::uint8_t b) {
    std::ostringstream s;
    s << "0x" << std::hex << unsigned(b);
    if (b >= 0x20 && b < 0x7f) s << " '" << char(b) << "'";
    return s.str();
}

/// Byte i of the map is symbol i.
struct AlphabetMap {
    std::string chars;
    std::array<int, 256> index;

    std::optional<Symbol> lookup(std::uint8_t b) const {
        return index[b] < 0 ? std::nullopt : std::optional<Symbol>(static_cast<Symbol>(index[b]));
    }
};

/// `arg` names a file holding the map characters, or is the characters.
AlphabetMap load_map(const std::string& arg) {
    std::string chars = arg;
    if (std::filesystem::is_regular_file(arg)) {
        const auto bytes = read_bytes(arg);
        chars.assign(bytes.begin(), bytes.end());
        while (!chars.empty() && (chars.back() == '\n' || chars.back() == '\r')) chars.pop_back();
    }
    if (chars.empty()) throw UsageError("alphabet map is empty");
    AlphabetMap map{chars, {}};
    map.index.fill(-1);
    for (std::size_t i = 0; i < chars.size(); ++i) {
        const auto b = static_cast<std::uint8_t>(chars[i]);
        if (map.index[b] >= 0) throw UsageError("alphabet map repeats " + describe_byte(b));
        map.index[b] = static_cast<int>(i);
    }
    return map;
}

struct Encoding {
    std::optional<AlphabetMap> map;
    std::optional<unsigned> sigma;
};

/// Maps raw bytes to symbols. `what` names the input in errors.
std::vector<Symbol> map_bytes(const std::vector<std::uint8_t>& bytes, const Encoding& enc, unsigned sigma,
                              const std::string& what) {
    std::vector<Symbol> out(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        std::optional<Symbol> c;
        if (enc.map) {
            c = enc.map->lookup(bytes[i]);
        } else if (bytes[i] < sigma) {
            c = bytes[i];
        }
        if (!c) {
            throw UsageError(what + ": byte " + describe_byte(bytes[i]) + " at offset " + std::to_string(i) +
                             (enc.map ? " is not in the alphabet map" : " is outside sigma=" + std::to_string(sigma)));
        }
        out[i] = *c;
    }
    return out;
}

struct LoadedText {
    Alphabet alphabet;
    std::vector<Symbol> symbols;
};

LoadedText load_text(const std::vector<std::uint8_t>& bytes, const Encoding& enc, const std::string& what) {
    if (has_pktx_magic(bytes)) {
        auto pk = decode_pktx(bytes);
        if (enc.map && enc.map->chars.size() > pk.alphabet.sigma) {
            throw UsageError("alphabet map has " + std::to_string(enc.map->chars.size()) + " symbols but '" + what +
                             "' has sigma=" + std::to_string(pk.alphabet.sigma));
        }
        return {pk.alphabet, std::move(pk.symbols)};
    }
    unsigned sigma = 0;
    if (enc.map) {
        sigma = static_cast<unsigned>(enc.map->chars.size());
    } else if (enc.sigma) {
        sigma = *enc.sigma;
    } else {
        const auto top = bytes.empty() ? 0u : unsigned(*std::max_element(bytes.begin(), bytes.end()));
        sigma = Alphabet::for_size(top + 1).sigma;
        std::cerr << "packmatch: warning: no --sigma or --alphabet-map; inferred sigma=" << sigma << " from '"
                  << what << "'\n";
    }
    auto symbols = map_bytes(bytes, enc, sigma, what);
    return {Alphabet::for_size(sigma), std::move(symbols)};
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw UsageError(what + ": '" + s + "' is not a non-negative integer");
    }
    return static_cast<unsigned>(std::stoul(s));
}

std::vector<unsigned> parse_csv(const std::string& s, const std::string& what) {
    std::vector<unsigned> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        while (!item.empty() && (item.back() == ' ' || item.back() == '\n' || item.back() == '\r')) item.pop_back();
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        out.push_back(parse_unsigned(item, what));
    }
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

struct ModelFlags {
    std::string model = "kmismatch";
    std::optional<unsigned> k;
    std::optional<std::string> delta;
    std::optional<std::uint64_t> gamma;
    std::optional<std::string> wildcard;
    std::string variant = "auto";
    bool raw_gamma_sum = false;

    void add_to(CLI::App& app) {
        app.add_option("--model", model, "kmismatch, wildcard, delta-k, delta-exact, less-than, delta-gamma, delta-k-gamma")
            ->capture_default_str();
        app.add_option("--k", k, "Mismatch budget");
        app.add_option("--delta", delta, "Per-character tolerance: one value or one per pattern position (csv)");
        app.add_option("--gamma", gamma, "Budget on the sum of differences");
        app.add_option("--wildcard", wildcard, "Wildcard symbol: a mapped character or a symbol number");
        app.add_flag("--raw-gamma-sum", raw_gamma_sum, "delta-k-gamma: sum the differences of every position");
    }

    /// Validates the combination. Wildcard and delta lengths are resolved by
    /// the caller once the pattern and map are known.
    MatchSpec spec() const {
        MatchSpec s;
        const auto parsed = parse_model(model);
        if (!parsed) throw UsageError("unknown model '" + model + "'");
        s.model = *parsed;
        const auto v = parse_variant(variant);
        if (!v) throw UsageError("unknown variant '" + variant + "'");
        s.variant = *v;

        const bool uses_k = s.model == Model::kmismatch || s.model == Model::wildcard || s.model == Model::delta_k ||
                            s.model == Model::delta_k_gamma;
        const bool uses_delta = s.model == Model::delta_k || s.model == Model::delta_exact ||
                                s.model == Model::delta_gamma || s.model == Model::delta_k_gamma;
        const bool uses_gamma = s.model == Model::delta_gamma || s.model == Model::delta_k_gamma;
        const std::string name(to_string(s.model));
        if (k && !uses_k) throw UsageError("--k is not used by model " + name);
        if (delta && !uses_delta) throw UsageError("--delta is not used by model " + name);
        if (gamma && !uses_gamma) throw UsageError("--gamma is not used by model " + name);
        if (wildcard && s.model != Model::wildcard) throw UsageError("--wildcard requires --model wildcard");
        if (raw_gamma_sum && s.model != Model::delta_k_gamma) throw UsageError("--raw-gamma-sum requires --model delta-k-gamma");
        if (uses_gamma && !gamma) throw UsageError("model " + name + " requires --gamma");
        if (gamma && !delta) throw UsageError("--gamma requires --delta");
        if (uses_delta && !delta) throw UsageError("model " + name + " requires --delta");
        if (s.model == Model::wildcard && !wildcard) throw UsageError("model wildcard requires --wildcard");

        s.k = k.value_or(0);
        if (delta) s.deltas = parse_csv(*delta, "--delta");
        s.gamma = gamma.value_or(0);
        s.raw_gamma_sum = raw_gamma_sum;
        return s;
    }
};

Symbol resolve_wildcard(const std::string& arg, const Encoding& enc) {
    if (enc.map && arg.size() == 1) {
        if (auto c = enc.map->lookup(static_cast<std::uint8_t>(arg[0]))) return *c;
    }
    if (!arg.empty() && std::all_of(arg.begin(), arg.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return static_cast<Symbol>(parse_unsigned(arg, "--wildcard"));
    }
    if (arg.size() == 1 && !enc.map) return static_cast<std::uint8_t>(arg[0]);
    throw UsageError("--wildcard '" + arg + "' is neither a mapped character nor a symbol number");
}

// --- pack / unpack -----------------------------------------------------------

struct PackArgs {
    std::string input;
    std::string output = "-";
    std::optional<unsigned> sigma;
    std::optional<std::string> map;
};

int cmd_pack(const PackArgs& args) {
    Encoding enc;
    if (args.map) enc.map = load_map(*args.map);
    enc.sigma = args.sigma;
    const auto bytes = read_bytes(args.input);
    const auto text = load_text(bytes, enc, args.input);
    write_bytes(args.output, encode_pktx(text.symbols, text.alphabet));
    return 0;
}

int cmd_unpack(const PackArgs& args) {
    const auto pk = decode_pktx(read_bytes(args.input));
    std::optional<AlphabetMap> map;
    if (args.map) map = load_map(*args.map);
    std::vector<std::uint8_t> out(pk.symbols.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const Symbol c = pk.symbols[j];
        if (map) {
            if (c >= map->chars.size()) {
                throw UsageError("symbol " + std::to_string(c) + " at index " + std::to_string(j) +
                                 " has no character in the alphabet map");
            }
            out[j] = static_cast<std::uint8_t>(map->chars[c]);
        } else {
            if (c > 255) throw UsageError("symbol " + std::to_string(c) + " does not fit a byte; pass --alphabet-map");
            out[j] = static_cast<std::uint8_t>(c);
        }
    }
    write_bytes(args.output, out);
    return 0;
}

// --- search ------------------------------------------------------------------

struct SearchArgs {
    std::vector<std::string> positionals;
    std::optional<std::string> pattern_file;
    bool pattern_symbols = false;
    std::optional<unsigned> sigma;
    std::optional<std::string> map;
    unsigned width = 64;
    std::string format = "text";
    ModelFlags flags;
};

int cmd_search(const SearchArgs& args) {
    std::string pattern_arg;
    std::string input;
    if (args.pattern_file) {
        if (args.positionals.size() != 1) throw UsageError("with --pattern-file, give exactly one INPUT");
        input = args.positionals[0];
        const auto bytes = read_bytes(*args.pattern_file);
        pattern_arg.assign(bytes.begin(), bytes.end());
        if (!pattern_arg.empty() && pattern_arg.back() == '\n') pattern_arg.pop_back();
        if (!pattern_arg.empty() && pattern_arg.back() == '\r') pattern_arg.pop_back();
    } else {
        if (args.positionals.size() != 2) throw UsageError("expected PATTERN INPUT");
        pattern_arg = args.positionals[0];
        input = args.positionals[1];
    }

    MatchSpec spec = args.flags.spec();
    Encoding enc;
    if (args.map) enc.map = load_map(*args.map);
    enc.sigma = args.sigma;
    const auto text = load_text(read_bytes(input), enc, input);

    std::vector<Symbol> pattern;
    if (args.pattern_symbols) {
        for (unsigned c : parse_csv(pattern_arg, "pattern")) pattern.push_back(static_cast<Symbol>(c));
    } else {
        const std::vector<std::uint8_t> bytes(pattern_arg.begin(), pattern_arg.end());
        pattern = map_bytes(bytes, enc, text.alphabet.sigma, "pattern");
    }
    if (pattern.empty()) throw UsageError("pattern is empty");
    for (std::size_t h = 0; h < pattern.size(); ++h) {
        if (pattern[h] >= text.alphabet.sigma) {
            throw UsageError("pattern symbol " + std::to_string(pattern[h]) + " at index " + std::to_string(h) +
                             " is outside sigma=" + std::to_string(text.alphabet.sigma));
        }
    }
    if (args.flags.wildcard) spec.wildcard = resolve_wildcard(*args.flags.wildcard, enc);
    validate_spec(spec, pattern.size(), text.alphabet);

    MatchReport report = search(pattern, text.symbols, text.alphabet, spec, args.width);
    report.sort();
    const bool counts = report.counts && has_exact_counts(spec.model, spec.variant);

    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["model"] = to_string(spec.model);
        j["variant"] = to_string(spec.variant);
        switch (spec.model) {
            case Model::kmismatch:
            case Model::wildcard:
            case Model::delta_k:
            case Model::delta_k_gamma:
                j["k"] = spec.k;
                break;
            default:
                break;
        }
        if (spec.wildcard) j["wildcard"] = *spec.wildcard;
        if (!spec.deltas.empty()) j["delta"] = spec.deltas;
        if (spec.model == Model::delta_gamma || spec.model == Model::delta_k_gamma) j["gamma"] = spec.gamma;
        if (spec.model == Model::delta_k_gamma) j["raw_gamma_sum"] = spec.raw_gamma_sum;
        j["sigma"] = text.alphabet.sigma;
        j["m"] = pattern.size();
        j["n"] = text.symbols.size();
        j["matches"] = report.positions.size();
        j["positions"] = report.positions;
        if (counts) j["counts"] = *report.counts;
        std::cout << j.dump() << '\n';
    } else if (args.format == "csv") {
        std::cout << (counts ? "position,count\n" : "position\n");
        for (std::size_t i = 0; i < report.positions.size(); ++i) {
            std::cout << report.positions[i];
            if (counts) std::cout << ',' << (*report.counts)[i];
            std::cout << '\n';
        }
    } else {
        for (auto p : report.positions) std::cout << p << '\n';
    }
    return report.positions.empty() ? kExitNoMatch : 0;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
    ModelFlags flags;
    std::vector<unsigned> widths{16, 32, 64, 128};
    std::vector<std::string> variants;
    unsigned sigma = 4;
    std::size_t m = 8;
    std::size_t n = 1'000'000;
    std::uint64_t seed = 1;
    std::string output = "-";
};

int cmd_bench(const BenchArgs& args) {
    BenchConfig config;
    config.spec = args.flags.spec();
    config.widths = args.widths;
    for (const auto& name : args.variants) {
        const auto v = parse_variant(name);
        if (!v || *v == Variant::automatic) throw UsageError("unknown bench variant '" + name + "'");
        config.variants.push_back(*v);
    }
    if (args.sigma < 2 || args.sigma > (1u << kMaxLogSigma)) throw UsageError("--sigma must be in 2..65536");
    if (args.m == 0) throw UsageError("--m must be positive");
    config.sigma = args.sigma;
    config.m = args.m;
    config.n = args.n;
    config.seed = args.seed;
    if (args.flags.wildcard) config.spec.wildcard = static_cast<Symbol>(parse_unsigned(*args.flags.wildcard, "--wildcard"));
    validate_spec(config.spec, config.m, Alphabet::for_size(config.sigma));

    const auto rows = run_bench(config);
    std::ostringstream csv;
    write_bench_csv(csv, rows);
    const std::string s = csv.str();
    write_bytes(args.output, std::vector<std::uint8_t>(s.begin(), s.end()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Packed-text approximate pattern matching"};
    app.require_subcommand(1);

    PackArgs pack_args;
    auto* pack = app.add_subcommand("pack", "Pack a raw text file into PKTX");
    pack->add_option("input", pack_args.input, "Raw text file, or - for stdin")->required();
    pack->add_option("-o,--output", pack_args.output, "PKTX output, or - for stdout")->capture_default_str();
    pack->add_option("--sigma", pack_args.sigma, "Byte values are symbols below this alphabet size");
    pack->add_option("--alphabet-map", pack_args.map, "Characters of the alphabet in symbol order (file or literal)");

    PackArgs unpack_args;
    auto* unpack = app.add_subcommand("unpack", "Turn a PKTX file back into raw text");
    unpack->add_option("input", unpack_args.input, "PKTX file, or - for stdin")->required();
    unpack->add_option("-o,--output", unpack_args.output, "Raw output, or - for stdout")->capture_default_str();
    unpack->add_option("--alphabet-map", unpack_args.map, "Characters of the alphabet in symbol order (file or literal)");

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Report every occurrence of a pattern");
    search->add_option("args", search_args.positionals, "PATTERN INPUT (INPUT only with --pattern-file)")->required();
    search->add_option("--pattern-file", search_args.pattern_file, "Read the pattern from a file");
    search->add_flag("--pattern-symbols", search_args.pattern_symbols, "The pattern is a csv list of symbol numbers");
    search->add_option("--sigma", search_args.sigma, "Raw input: byte values are symbols below this alphabet size");
    search->add_option("--alphabet-map", search_args.map, "Characters of the alphabet in symbol order (file or literal)");
    auto* width_opt = search->add_option("--width", search_args.width, "Machine word width")
        ->envname("PACKMATCH_WIDTH")
        ->check(CLI::IsMember({16u, 32u, 64u, 128u}))
        ->capture_default_str();
    search->add_option("--format", search_args.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    search->add_option("--variant", search_args.flags.variant,
                       "auto, blockwise, compacted, sentinel, sentinel-comatch, long, oracle")
        ->capture_default_str();
    search_args.flags.add_to(*search);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Time the packed matchers against the oracle on a seeded corpus (CSV)");
    bench_args.flags.add_to(*bench);
    bench->add_option("--width", bench_args.widths, "Word widths to run")
        ->check(CLI::IsMember({16u, 32u, 64u, 128u}))
        ->capture_default_str();
    bench->add_option("--variant", bench_args.variants, "Variants to run (default: all of the model)");
    bench->add_option("--sigma", bench_args.sigma, "Alphabet size")->capture_default_str();
    bench->add_option("--m", bench_args.m, "Pattern length")->capture_default_str();
    bench->add_option("--n", bench_args.n, "Text length")->capture_default_str();
    bench->add_option("--seed", bench_args.seed, "Corpus seed")->capture_default_str();
    bench->add_option("-o,--output", bench_args.output, "CSV output, or - for stdout")->capture_default_str();

    bool trace = false;
    std::optional<std::string> fault;
    auto* selftest = app.add_subcommand("selftest", "Check the embedded golden example");
    selftest->add_flag("--trace", trace, "Print the intermediate words of the first window");
    selftest->add_option("--inject-fault", fault, "Corrupt the named word before checking")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }

    if (*search && width_opt->count() == 0) {
        // CLI11 drops environment values that fail validation; reject them instead.
        if (const char* env = std::getenv("PACKMATCH_WIDTH"); env && *env) {
            std::cerr << "packmatch: PACKMATCH_WIDTH=" << env << " is not one of 16, 32, 64, 128\n";
            return kExitError;
        }
    }

    try {
        if (*pack) return cmd_pack(pack_args);
        if (*unpack) return cmd_unpack(unpack_args);
        if (*search) return cmd_search(search_args);
        if (*bench) return cmd_bench(bench_args);
        if (*selftest) return run_selftest(std::cout, trace, fault);
    } catch (const std::exception& e) {
        std::cerr << "packmatch: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
