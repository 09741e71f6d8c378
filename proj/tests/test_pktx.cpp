#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "packmatch/pktx.hpp"

using namespace packmatch;

TEST_CASE("the example text encodes to a 20-byte header and two body bytes") {
    const std::vector<Symbol> t{1, 2, 3, 3, 2, 3, 1, 2};
    const auto bytes = encode_pktx(t, Alphabet::from_log(2));
    const std::vector<std::uint8_t> expect{'P', 'K', 'T', 'X', 1, 2, 0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 0xF9, 0x9E};
    CHECK(bytes == expect);
    const auto back = decode_pktx(bytes);
    CHECK(back.alphabet == Alphabet::from_log(2));
    CHECK(back.symbols == t);
}

TEST_CASE("an empty text is a header only") {
    const auto bytes = encode_pktx({}, Alphabet::from_log(2));
    CHECK(bytes.size() == kPktxHeaderSize);
    CHECK(decode_pktx(bytes).symbols.empty());
}

TEST_CASE("round trip at every log sigma") {
    std::mt19937_64 rng(6);
    for (unsigned ls = 1; ls <= 16; ++ls) {
        for (int rep = 0; rep < 30; ++rep) {
            std::vector<Symbol> s(rng() % 100);
            for (auto& c : s) c = static_cast<Symbol>(rng() % (1u << ls));
            const auto bytes = encode_pktx(s, Alphabet::from_log(ls));
            REQUIRE(bytes.size() == kPktxHeaderSize + (s.size() * ls + 7) / 8);
            REQUIRE(decode_pktx(bytes).symbols == s);
        }
    }
}

TEST_CASE("malformed files are rejected") {
    const std::vector<Symbol> t{1, 2, 3};
    const auto good = encode_pktx(t, Alphabet::from_log(2));
    auto bad = good;
    bad[0] = 'Q';
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    bad = good;
    bad[4] = 2;
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    bad = good;
    bad[5] = 0;
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    bad = good;
    bad[5] = 17;
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    bad = good;
    bad[7] = 1;
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    bad = good;
    bad.push_back(0);
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    bad = good;
    bad.pop_back();
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    bad = good;
    bad.back() |= 0x80;  // past the sixth bit
    CHECK_THROWS_AS(decode_pktx(bad), PktxError);
    CHECK_THROWS_AS(decode_pktx(std::vector<std::uint8_t>{'P', 'K'}), PktxError);
    CHECK_THROWS_AS(encode_pktx(std::vector<Symbol>{4}, Alphabet::from_log(2)), EncodingError);
}
