#include "doctest.h"

#include <random>
#include <stdexcept>
#include <string>

#include "dafilt/lut.hpp"

using namespace dafilt;

namespace {

std::vector<Fx> ints(std::initializer_list<std::int64_t> v, Format f = Format{16, 0}) {
    std::vector<Fx> out;
    for (auto m : v) out.emplace_back(m, f);
    return out;
}

std::vector<std::int64_t> as_vec(std::span<const std::int64_t> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("TC table of two samples") {
    const TcLut lut = TcLut::build(ints({2, 1}), 2);
    CHECK(as_vec(lut.entries()) == std::vector<std::int64_t>{0, 2, 1, 3});
    CHECK(lut.lookup(std::vector<std::uint8_t>{1, 1}) == 3);
    CHECK(lut.lookup(std::vector<std::uint8_t>{0, 1}) == 1);
}

TEST_CASE("OBC table of two samples") {
    // Scale 2^-(F_x+1): entries -0.5 and 1.5, d_initial -1.5.
    const ObcLut lut = ObcLut::build(ints({2, 1}), 2);
    CHECK(as_vec(lut.entries()) == std::vector<std::int64_t>{-1, 3});
    CHECK(lut.d_initial() == -3);
    CHECK(lut.frac() == 1);
    CHECK(lut.at(0b11) == 3);
    CHECK(lut.at(0b00) == -3);
    CHECK(lut.at(0b01) == 1);
    CHECK(lut.lookup(std::vector<std::int8_t>{-1, 1}) == -1);
}

TEST_CASE("build preconditions") {
    CHECK_THROWS_AS(TcLut::build(ints({1, 2}), 3), std::invalid_argument);
    CHECK_THROWS_AS(TcLut::build(ints({1, 2}), 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(ObcLut::build({}, 0), std::invalid_argument);
    std::vector<Fx> mixed{Fx(1, Format{16, 0}), Fx(1, Format{16, 1})};
    CHECK_THROWS_AS(TcLut::build(mixed, 2), std::invalid_argument);
    CHECK_THROWS_AS(LutBank::build(ints({1, 2, 3}), 2, 3, Scheme::TC), std::invalid_argument);
}

TEST_CASE("single-tap tables") {
    TcLut tc = TcLut::build(ints({5}), 1);
    CHECK(as_vec(tc.entries()) == std::vector<std::int64_t>{0, 5});
    ObcLut obc = ObcLut::build(ints({5}), 1);
    CHECK(as_vec(obc.entries()) == std::vector<std::int64_t>{5});
    obc.slide(Fx(-7, Format{16, 0}));
    CHECK(obc == ObcLut::build(ints({-7}), 1));
    tc.slide(Fx(-7, Format{16, 0}));
    CHECK(tc == TcLut::build(ints({-7}), 1));
}

TEST_CASE("slide matches rebuild on random windows") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> sample(-2048, 2047);
    const Format f{12, 6};
    for (int k = 1; k <= 8; ++k) {
        std::vector<Fx> window;
        for (int i = 0; i < k; ++i) window.emplace_back(sample(rng), f);
        TcLut tc = TcLut::build(window, k);
        ObcLut obc = ObcLut::build(window, k);
        for (int s = 0; s < 50; ++s) {
            const Fx x(sample(rng), f);
            window.insert(window.begin(), x);
            window.pop_back();
            tc.slide(x);
            obc.slide(x);
            REQUIRE(tc == TcLut::build(window, k));
            REQUIRE(obc == ObcLut::build(window, k));
        }
    }
}

TEST_CASE("complement and mirror identities") {
    const auto window = ints({3, -4, 7, 1, -2});
    const TcLut tc = TcLut::build(window, 5);
    const ObcLut obc = ObcLut::build(window, 5);
    const std::uint32_t all = 31;
    for (std::uint32_t a = 0; a <= all; ++a) {
        CHECK(tc.at(a) + tc.at(all ^ a) == tc.at(all));
        CHECK(obc.at(a) == -obc.at(all ^ a));
        CHECK(obc.at(a) == 2 * tc.at(a) - tc.at(all));
    }
}

TEST_CASE("bank splits taps across units") {
    const auto window = ints({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    const LutBank bank = LutBank::build(window, 10, 4, Scheme::TC);
    CHECK(bank.units() == 3);
    CHECK(bank.padded_taps() == 12);
    CHECK(bank.window().size() == 12);
    CHECK(bank.window()[10] == 0);
    std::vector<std::uint8_t> addr(12, 0);
    addr[0] = addr[5] = addr[9] = 1;
    CHECK(bank.lookup_tc(addr) == 1 + 6 + 10);

    const LutBank obc = LutBank::build(window, 10, 4, Scheme::OBC);
    CHECK(obc.d_initial() == -55);
    std::vector<std::int8_t> signs(12, -1);
    signs[0] = 1;
    // 2 * (1/2 * (1 - 2 - ... - 10)) at scale 2.
    CHECK(obc.lookup_obc(signs) == 1 - 54);
}

TEST_CASE("bank slide carries samples across unit boundaries") {
    auto window = ints({1, 2, 3, 4, 5});
    LutBank bank = LutBank::build(window, 5, 2, Scheme::OBC);
    bank.slide(Fx(9, Format{16, 0}));
    CHECK(bank.window() == std::vector<std::int64_t>{9, 1, 2, 3, 4, 5});
    CHECK(bank == LutBank::build(ints({9, 1, 2, 3, 4, 5}), 5, 2, Scheme::OBC));
}

TEST_CASE("scheme names") {
    CHECK(parse_scheme("tc") == Scheme::TC);
    CHECK(parse_scheme("OBC") == Scheme::OBC);
    CHECK(std::string(to_string(Scheme::OBC)) == "obc");
    CHECK_THROWS(parse_scheme("csd"));
}
