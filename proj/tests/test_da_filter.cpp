#include "doctest.h"

#include <random>
#include <stdexcept>

#include "dafilt/da_filter.hpp"

using namespace dafilt;

namespace {

FilterConfig small_config(Scheme scheme, int taps, int bits, int k) {
    FilterConfig c;
    c.taps = taps;
    c.coeff_bits = bits;
    c.lut_bits = k;
    c.scheme = scheme;
    c.input = Format{16, 0};
    c.output = Format{32, 16};
    c.error = Format{32, 16};
    return c;
}

std::vector<Fx> coeffs(const FilterConfig& c, std::initializer_list<double> v) {
    std::vector<Fx> out;
    for (double w : v) out.push_back(quantize(w, c.coeff()));
    return out;
}

std::vector<Fx> samples(const FilterConfig& c, std::initializer_list<std::int64_t> v) {
    std::vector<Fx> out;
    for (auto m : v) out.emplace_back(m, c.input);
    return out;
}

}  // namespace

TEST_CASE("column sign negates only the sign-bit column") {
    for (int bits = 2; bits <= 24; ++bits) {
        CHECK(column_sign(0, bits) == -1);
        for (int j = 1; j < bits; ++j) REQUIRE(column_sign(j, bits) == 1);
    }
}

TEST_CASE("two-tap output in both schemes") {
    for (Scheme s : {Scheme::TC, Scheme::OBC}) {
        const FilterConfig cfg = small_config(s, 2, 4, 2);
        DaFilter f(cfg, coeffs(cfg, {0.5, -0.5}));
        f.set_window(samples(cfg, {2, 1}));
        CHECK(to_real(f.output().y) == 0.5);
    }
}

TEST_CASE("zero coefficients give zero output") {
    const FilterConfig cfg = small_config(Scheme::OBC, 3, 6, 3);
    DaFilter f(cfg);
    f.set_window(samples(cfg, {100, -7, 3}));
    CHECK(f.output().y.mantissa() == 0);
    CHECK(f.output().exact == 0);
}

TEST_CASE("OBC exact accumulator is twice the TC one") {
    const FilterConfig tc_cfg = small_config(Scheme::TC, 3, 5, 2);
    FilterConfig obc_cfg = tc_cfg;
    obc_cfg.scheme = Scheme::OBC;
    const auto w = coeffs(tc_cfg, {0.25, -0.875, 0.5});
    DaFilter tc(tc_cfg, w), obc(obc_cfg, w);
    tc.set_window(samples(tc_cfg, {5, -3, 11}));
    obc.set_window(samples(obc_cfg, {5, -3, 11}));
    CHECK(obc.output().exact == 2 * tc.output().exact);
    CHECK(tc.output().y == obc.output().y);
    CHECK_THROWS_AS(tc.output_obc(), std::logic_error);
    CHECK_THROWS_AS(obc.output_tc(), std::logic_error);
}

TEST_CASE("trace records one cycle per coefficient bit") {
    const FilterConfig cfg = small_config(Scheme::TC, 2, 4, 1);
    DaFilter f(cfg, coeffs(cfg, {0.5, -0.5}));
    f.set_window(samples(cfg, {2, 1}));
    const Output out = f.output(true);
    REQUIRE(out.trace.cycles.size() == 4);
    CHECK(out.trace.cycles.front().cycle == 3);
    CHECK(out.trace.cycles.back().cycle == 0);
    CHECK(out.trace.cycles.back().sign == -1);
    CHECK(out.trace.cycles.back().accumulator == out.exact);
    // Sign column: 0.5 -> 0, -0.5 -> 1; selects x[1] = 1.
    CHECK(out.trace.cycles.back().lut_value == 1);
    CHECK(out.trace.cycles.back().address == std::vector<std::int8_t>{0, 1});
}

TEST_CASE("single update from zero") {
    for (Scheme s : {Scheme::TC, Scheme::OBC}) {
        FilterConfig cfg = small_config(s, 1, 8, 1);
        cfg.input = Format{8, 4};
        cfg.mu = StepSize::shift(2);
        DaFilter f(cfg);
        const Fx e = quantize(0.5, cfg.error);
        const std::vector<std::int64_t> window{16};  // x = 1
        f.update(e, window);
        CHECK(to_real(f.coefficients()[0]) == 0.125);
        CHECK_NOTHROW(f.check_invariants());
    }
}

TEST_CASE("zero error leaves coefficients unchanged") {
    const FilterConfig cfg = small_config(Scheme::OBC, 2, 6, 2);
    DaFilter f(cfg, coeffs(cfg, {0.25, -0.5}));
    const std::vector<std::int64_t> window{40, -3};
    f.update(Fx(0, cfg.error), window);
    CHECK(to_real(f.coefficients()[0]) == 0.25);
    CHECK(to_real(f.coefficients()[1]) == -0.5);
}

TEST_CASE("update saturates at the coefficient range") {
    for (Scheme s : {Scheme::TC, Scheme::OBC}) {
        FilterConfig cfg = small_config(s, 1, 6, 1);
        cfg.mu = StepSize::shift(0);
        DaFilter f(cfg, coeffs(cfg, {0.9}));
        f.update(quantize(100.0, cfg.error), std::vector<std::int64_t>{100});
        CHECK(f.coefficients()[0].mantissa() == cfg.coeff().max_mantissa());
        CHECK(f.coefficients()[0].saturated());
    }
}

TEST_CASE("TC and OBC updates agree on random batches") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> x(-500, 500), e(-4000, 4000), w(-31, 31);
    for (int trial = 0; trial < 200; ++trial) {
        FilterConfig cfg = small_config(Scheme::TC, 4, 6, 2);
        cfg.input = Format{12, 8};
        cfg.mu = trial % 2 ? StepSize{3, 9} : StepSize::shift(7);
        cfg.rounding = trial % 3 ? Rounding::Nearest : Rounding::Truncate;
        std::vector<Fx> c;
        for (int i = 0; i < 4; ++i) c.emplace_back(w(rng), cfg.coeff());
        std::vector<ErrorSample> batch(2);
        for (auto& b : batch) {
            b.error = Fx(e(rng), cfg.error);
            for (int i = 0; i < 4; ++i) b.window.push_back(x(rng));
        }
        DaFilter tc(cfg, c);
        cfg.scheme = Scheme::OBC;
        DaFilter obc(cfg, c);
        tc.update_tc(batch);
        obc.update_obc(batch);
        for (int i = 0; i < 4; ++i) REQUIRE(tc.coefficients()[i] == obc.coefficients()[i]);
    }
}

TEST_CASE("slide and rebuild policies produce identical filters") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> x(-30000, 30000);
    FilterConfig cfg = small_config(Scheme::OBC, 7, 10, 3);
    FilterConfig rebuild = cfg;
    rebuild.refresh = RefreshPolicy::Rebuild;
    const auto w = coeffs(cfg, {0.1, -0.2, 0.3, -0.4, 0.5, -0.6, 0.7});
    DaFilter a(cfg, w), b(rebuild, w);
    for (int n = 0; n < 100; ++n) {
        const Fx s(x(rng), cfg.input);
        a.shift_in(s);
        b.shift_in(s);
        REQUIRE(a.bank() == b.bank());
        REQUIRE(a.output().y == b.output().y);
    }
    CHECK_NOTHROW(a.check_invariants());
}

TEST_CASE("error formation rounds once into the error format") {
    const Fx d(3, Format{8, 2});     // 0.75
    const Fx y(1, Format{16, 4});    // 0.0625
    CHECK(form_error(d, y, Format{16, 4}).mantissa() == 11);
    CHECK(form_error(d, y, Format{8, 1}).mantissa() == 1);   // 0.6875 -> 0.5
    CHECK(form_error(d, y, Format{8, 1}, Rounding::Truncate).mantissa() == 1);
}

TEST_CASE("config validation") {
    FilterConfig c;
    CHECK_NOTHROW(c.validate());
    c.lut_bits = 17;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = FilterConfig{};
    c.coeff_bits = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = FilterConfig{};
    c.taps = 2;
    c.lut_bits = 3;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = FilterConfig{};
    c.error = Format{62, 61};
    c.input = Format{48, 47};
    c.mu = StepSize::shift(40);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("step size") {
    CHECK(StepSize::shift(6).value() == 1.0 / 64);
    CHECK(StepSize::shift(6).is_power_of_two());
    CHECK(StepSize::from_real(0.01, 16).mantissa == 655);
    CHECK_THROWS_AS(StepSize::from_real(1e-9, 8), std::invalid_argument);
    CHECK_THROWS_AS(StepSize::from_real(-0.5, 8), std::invalid_argument);
}

TEST_CASE("coefficient and window preconditions") {
    const FilterConfig cfg = small_config(Scheme::TC, 2, 4, 2);
    DaFilter f(cfg);
    CHECK_THROWS_AS(f.set_coefficients(std::vector<Fx>{Fx(0, cfg.coeff())}), std::invalid_argument);
    CHECK_THROWS_AS(f.set_coefficients(std::vector<Fx>(2, Fx(0, Format{8, 7}))), std::invalid_argument);
    CHECK_THROWS_AS(f.shift_in(Fx(0, Format{8, 7})), std::invalid_argument);
}
