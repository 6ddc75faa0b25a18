#include "doctest.h"

#include <deque>
#include <random>
#include <stdexcept>

#include "dafilt/reference.hpp"
#include "dafilt/variants.hpp"

using namespace dafilt;

namespace {

FilterConfig config(Scheme scheme) {
    FilterConfig c;
    c.taps = 5;
    c.coeff_bits = 10;
    c.lut_bits = 2;
    c.scheme = scheme;
    c.input = Format{12, 9};
    c.output = Format{24, 14};
    c.error = Format{20, 14};
    c.mu = StepSize::shift(4);
    return c;
}

struct Data {
    std::vector<Fx> x, d;
};

Data make_stream(const FilterConfig& c, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::vector<double> plant{0.5, -0.25, 0.125, 0.3, -0.1};
    std::deque<double> hist(plant.size(), 0.0);
    Data out;
    for (std::size_t i = 0; i < n; ++i) {
        const Fx x = quantize(g(rng), c.input);
        hist.push_front(to_real(x));
        hist.pop_back();
        double y = 0.0;
        for (std::size_t t = 0; t < plant.size(); ++t) y += plant[t] * hist[t];
        out.x.push_back(x);
        out.d.push_back(quantize(y, c.output));
    }
    return out;
}

// Delayed LMS written out directly on mantissas.
std::vector<std::vector<std::int64_t>> hand_dlms(const FilterConfig& c, int delay, const Data& data) {
    const auto taps = static_cast<std::size_t>(c.taps);
    std::vector<std::int64_t> w(taps, 0), win(taps, 0);
    std::deque<std::pair<std::int64_t, std::vector<std::int64_t>>> pipe;
    std::vector<std::vector<std::int64_t>> traj;
    const int wf = c.coeff_bits - 1;
    const int gf = c.error.frac + c.input.frac + c.mu.frac;
    for (std::size_t n = 0; n < data.x.size(); ++n) {
        win.insert(win.begin(), data.x[n].mantissa());
        win.pop_back();
        Wide acc = 0;
        for (std::size_t i = 0; i < taps; ++i) acc += Wide{w[i]} * win[i];
        const Fx y = requantize(acc, wf + c.input.frac, c.output);
        const Fx e = requantize(Wide{data.d[n].mantissa()} - y.mantissa(), c.output.frac, c.error);
        pipe.emplace_back(e.mantissa(), win);
        if (pipe.size() > static_cast<std::size_t>(delay)) {
            const auto [pe, px] = pipe.front();
            pipe.pop_front();
            for (std::size_t i = 0; i < taps; ++i) {
                const Wide total = (Wide{w[i]} << (gf - wf)) + Wide{c.mu.mantissa} * pe * px[i];
                w[i] = requantize(total, gf, c.coeff()).mantissa();
            }
        }
        traj.push_back(w);
    }
    return traj;
}

}  // namespace

TEST_CASE("variant parsing") {
    CHECK(Variant::parse("lms").kind == Variant::Kind::Lms);
    CHECK(Variant::parse("dlms:3").delay == 3);
    CHECK(Variant::parse("blms:8").block == 8);
    CHECK(Variant::parse("dlms:0").to_string() == "dlms:0");
    CHECK_THROWS_AS(Variant::parse("blms:0"), std::invalid_argument);
    CHECK_THROWS_AS(Variant::parse("dlms:-1"), std::invalid_argument);
    CHECK_THROWS_AS(Variant::parse("dlms:x"), std::invalid_argument);
    CHECK_THROWS_AS(Variant::parse("lms:2"), std::invalid_argument);
    CHECK_THROWS_AS(Variant::parse("nlms"), std::invalid_argument);
}

TEST_CASE("DLMS with zero delay and BLMS with unit block match LMS") {
    for (Scheme s : {Scheme::TC, Scheme::OBC}) {
        const FilterConfig c = config(s);
        const Data data = make_stream(c, 2000, 1);
        auto lms = make_da_filter(c, Variant::lms());
        auto d0 = make_da_filter(c, Variant::dlms(0));
        auto b1 = make_da_filter(c, Variant::blms(1));
        const auto base = record_trajectory(*lms, data.x, data.d);
        const auto t0 = record_trajectory(*d0, data.x, data.d);
        const auto t1 = record_trajectory(*b1, data.x, data.d);
        for (std::size_t n = 0; n < base.size(); ++n) {
            REQUIRE(base[n].coeffs == t0[n].coeffs);
            REQUIRE(base[n].coeffs == t1[n].coeffs);
            REQUIRE(base[n].e == t0[n].e);
        }
    }
}

TEST_CASE("DLMS holds coefficients while the pipe fills") {
    const FilterConfig c = config(Scheme::TC);
    const Data data = make_stream(c, 10, 2);
    DlmsFilter f(DaFilter(c), 3);
    for (std::size_t n = 0; n < 3; ++n) {
        f.step(data.x[n], data.d[n]);
        CHECK(f.pending() == n + 1);
        for (const Fx& w : f.coefficients()) CHECK(w.mantissa() == 0);
    }
    f.step(data.x[3], data.d[3]);
    CHECK(f.pending() == 3);
    CHECK(f.updates() == 1);
}

TEST_CASE("DLMS D=2 matches a hand-written delayed LMS") {
    for (Scheme s : {Scheme::TC, Scheme::OBC}) {
        const FilterConfig c = config(s);
        const Data data = make_stream(c, 100, 3);
        auto f = make_da_filter(c, Variant::dlms(2));
        const auto got = record_trajectory(*f, data.x, data.d);
        const auto want = hand_dlms(c, 2, data);
        for (std::size_t n = 0; n < got.size(); ++n) REQUIRE(got[n].coeffs == want[n]);
    }
}

TEST_CASE("BLMS L=4 matches the direct-form oracle") {
    for (Scheme s : {Scheme::TC, Scheme::OBC}) {
        const FilterConfig c = config(s);
        const Data data = make_stream(c, 400, 4);
        auto f = make_da_filter(c, Variant::blms(4));
        const auto got = record_trajectory(*f, data.x, data.d);
        const auto want = reference_lms(c, Variant::blms(4), data.x, data.d);
        for (std::size_t n = 0; n < got.size(); ++n) {
            REQUIRE(got[n].coeffs == want[n].coeffs);
            REQUIRE(got[n].y == want[n].y);
        }
    }
}

TEST_CASE("BLMS block freeze and update count") {
    const FilterConfig c = config(Scheme::OBC);
    const Data data = make_stream(c, 103, 5);
    BlmsFilter f(DaFilter(c), 4);
    std::vector<std::int64_t> before;
    for (std::size_t n = 0; n < data.x.size(); ++n) {
        if (n % 4 == 0) {
            before.clear();
            for (const Fx& w : f.coefficients()) before.push_back(w.mantissa());
        }
        f.step(data.x[n], data.d[n]);
        if (n % 4 != 3) {
            for (std::size_t i = 0; i < before.size(); ++i) REQUIRE(f.coefficients()[i].mantissa() == before[i]);
        }
    }
    CHECK(f.updates() == 103 / 4);
    CHECK(f.buffered() == 3);
}

TEST_CASE("BLMS block step") {
    const FilterConfig c = config(Scheme::TC);
    const Data data = make_stream(c, 8, 6);
    BlmsFilter f(DaFilter(c), 4);
    BlmsFilter g(DaFilter(c), 4);
    const auto block = f.step_block(std::span(data.x).first(4), std::span(data.d).first(4));
    CHECK(block.y.size() == 4);
    for (std::size_t n = 0; n < 4; ++n) g.step(data.x[n], data.d[n]);
    for (std::size_t i = 0; i < 5; ++i) CHECK(f.coefficients()[i] == g.coefficients()[i]);
    CHECK_THROWS_AS(f.step_block(std::span(data.x).first(3), std::span(data.d).first(3)), std::invalid_argument);
    f.step(data.x[4], data.d[4]);
    CHECK_THROWS_AS(f.step_block(std::span(data.x).first(4), std::span(data.d).first(4)), std::logic_error);
}

TEST_CASE("zero error block leaves coefficients unchanged") {
    const FilterConfig c = config(Scheme::OBC);
    BlmsFilter f(DaFilter(c), 4);
    const std::vector<Fx> x(4, quantize(0.5, c.input));
    const std::vector<Fx> d(4, Fx(0, c.output));
    f.step_block(x, d);
    for (const Fx& w : f.coefficients()) CHECK(w.mantissa() == 0);
    CHECK(f.updates() == 1);
}
