#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dafilt/fixed_point.hpp"

using namespace dafilt;

TEST_CASE("format validation") {
    CHECK_NOTHROW((Format{2, 1}.validate()));
    CHECK_NOTHROW((Format{62, 0}.validate()));
    CHECK_THROWS_AS((Format{1, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Format{63, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Format{8, 8}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Format{8, -1}.validate()), std::invalid_argument);
    CHECK(Format{8, 7}.max_mantissa() == 127);
    CHECK(Format{8, 7}.min_mantissa() == -128);
}

TEST_CASE("Fx rejects out-of-range mantissas") {
    CHECK_THROWS_AS(Fx(128, Format{8, 7}), std::invalid_argument);
    CHECK_THROWS_AS(Fx(-129, Format{8, 7}), std::invalid_argument);
    CHECK(Fx(-128, Format{8, 7}).mantissa() == -128);
}

TEST_CASE("quantize rounding and saturation") {
    const Format q15{16, 15};
    CHECK(quantize(0.5, q15).mantissa() == 16384);
    CHECK(quantize(1.0, q15).mantissa() == 32767);
    CHECK(quantize(1.0, q15).saturated());
    CHECK(quantize(-1.0, q15).mantissa() == -32768);
    CHECK_FALSE(quantize(-1.0, q15).saturated());
    CHECK(quantize(-2.0, q15).saturated());

    const Format q4{8, 4};
    // Half away from zero.
    CHECK(quantize(0.03125, q4).mantissa() == 1);
    CHECK(quantize(-0.03125, q4).mantissa() == -1);
    // Truncation floors.
    CHECK(quantize(0.09, q4, Rounding::Truncate).mantissa() == 1);
    CHECK(quantize(-0.01, q4, Rounding::Truncate).mantissa() == -1);
    CHECK_THROWS(quantize(std::nan(""), q4));
}

TEST_CASE("shift_round") {
    CHECK(shift_round(5, 1, Rounding::Nearest) == 3);
    CHECK(shift_round(-5, 1, Rounding::Nearest) == -3);
    CHECK(shift_round(-5, 1, Rounding::Truncate) == -3);
    CHECK(shift_round(5, 1, Rounding::Truncate) == 2);
    CHECK(shift_round(7, -3, Rounding::Nearest) == 56);
    CHECK(shift_round(-1, 200, Rounding::Truncate) == -1);
    CHECK(shift_round(-1, 200, Rounding::Nearest) == 0);
    CHECK_THROWS_AS(shift_round(Wide{1} << 100, -40, Rounding::Nearest), std::overflow_error);
}

TEST_CASE("requantize rounds once and saturates") {
    const Format out{8, 2};
    CHECK(requantize(13, 3, out).mantissa() == 7);  // 1.625 -> 1.75
    CHECK(requantize(13, 3, out, Rounding::Truncate).mantissa() == 6);
    const Fx big = requantize(Wide{1} << 90, 0, out);
    CHECK(big.mantissa() == 127);
    CHECK(big.saturated());
    CHECK(requantize(-(Wide{1} << 90), 0, out).mantissa() == -128);
    CHECK(requantize(3, 0, out).mantissa() == 12);
}

TEST_CASE("bit slicing examples") {
    const Format c3 = coeff_format(3);
    CHECK(slice_tc(Fx(0, c3)) == std::vector<std::uint8_t>{0, 0, 0});
    CHECK(slice_obc(Fx(0, c3)) == std::vector<std::int8_t>{-1, -1, -1});
    CHECK(slice_tc(Fx(-4, c3)) == std::vector<std::uint8_t>{1, 0, 0});
    CHECK(slice_tc(Fx(3, c3)) == std::vector<std::uint8_t>{0, 1, 1});
    CHECK(slice_obc(Fx(-1, c3)) == std::vector<std::int8_t>{1, 1, 1});
    CHECK(reconstruct_tc(slice_tc(Fx(-4, c3))) == -1.0);
    CHECK(reconstruct_obc(std::vector<std::int8_t>{-1, -1, -1}) == 0.0);
    CHECK_THROWS_AS(slice_tc(Fx(1, Format{8, 4})), std::invalid_argument);
}

TEST_CASE("reconstruction round trips exhaustively for B <= 10") {
    for (int bits = 2; bits <= 10; ++bits) {
        const Format f = coeff_format(bits);
        for (std::int64_t m = f.min_mantissa(); m <= f.max_mantissa(); ++m) {
            const Fx w(m, f);
            REQUIRE(reconstruct_tc(slice_tc(w)) == to_real(w));
            REQUIRE(reconstruct_obc(slice_obc(w)) == to_real(w));
        }
    }
}

TEST_CASE("CoeffBits matrix") {
    const Format c4 = coeff_format(4);
    const std::vector<Fx> w{Fx(5, c4), Fx(-3, c4)};
    const CoeffBits bits(w, 4);
    CHECK(bits.tc(0, 0) == 0);
    CHECK(bits.tc(1, 0) == 1);
    CHECK(bits.obc(0, 0) == -1);
    // Column 3 (LSB): 5 -> 1, -3 = 1101 -> 1.
    CHECK(bits.tc_column(3) == std::vector<std::uint8_t>{1, 1});
    CHECK(bits.packed_column(3, 0, 2) == 3u);
    CHECK(bits.tc_column(3, 1, 3) == std::vector<std::uint8_t>{1, 0, 0});
    CHECK(bits.obc_column(3, 1, 3) == std::vector<std::int8_t>{1, -1, -1});
    CHECK(bits.obc_row(0) == slice_obc(w[0]));
}
