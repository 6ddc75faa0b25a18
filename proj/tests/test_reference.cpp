#include "doctest.h"

#include <cmath>
#include <random>

#include "dafilt/reference.hpp"
#include "dafilt/variants.hpp"

using namespace dafilt;

TEST_CASE("zero input gives a zero trajectory") {
    FilterConfig c;
    c.taps = 4;
    c.lut_bits = 2;
    const std::vector<Fx> x(50, Fx(0, c.input));
    const std::vector<Fx> d(50, Fx(0, c.output));
    for (const auto& p : reference_lms(c, Variant::lms(), x, d)) {
        CHECK(p.y.mantissa() == 0);
        CHECK(p.e.mantissa() == 0);
        for (auto w : p.coeffs) CHECK(w == 0);
    }
}

TEST_CASE("DA trajectory equals the direct-form oracle over 10^4 samples") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 0.5);
    for (Scheme s : {Scheme::TC, Scheme::OBC}) {
        FilterConfig c;
        c.taps = 8;
        c.coeff_bits = 12;
        c.lut_bits = 3;
        c.scheme = s;
        std::vector<Fx> x, d;
        for (int n = 0; n < 10000; ++n) {
            x.push_back(quantize(g(rng), c.input));
            d.push_back(quantize(g(rng), c.output));
        }
        auto da = make_da_filter(c, Variant::lms());
        const auto got = record_trajectory(*da, x, d);
        const auto want = reference_lms(c, Variant::lms(), x, d);
        for (std::size_t n = 0; n < got.size(); ++n) {
            REQUIRE(got[n].y == want[n].y);
            REQUIRE(got[n].coeffs == want[n].coeffs);
        }
    }
}

TEST_CASE("oracle starts from supplied coefficients") {
    FilterConfig c;
    c.taps = 2;
    c.lut_bits = 2;
    c.input = Format{16, 0};
    const std::vector<Fx> w{quantize(0.5, c.coeff()), quantize(-0.5, c.coeff())};
    ReferenceLms ref(c, Variant::dlms(5), w);
    ref.step(Fx(1, c.input), Fx(0, c.output));
    ref.step(Fx(2, c.input), Fx(0, c.output));
    CHECK(to_real(ref.output()) == 0.5);
}

TEST_CASE("floating-point twin tracks the fixed-point filter") {
    // Same plant and noise for both. The per-output gap should stay within
    // the coefficient quantization bound N * 2^-(B-1) scaled by the input size.
    FilterConfig c;
    c.taps = 8;
    c.coeff_bits = 14;
    c.lut_bits = 4;
    c.input = Format{16, 12};
    c.output = Format{32, 20};
    c.error = Format{32, 20};
    c.mu = StepSize::shift(6);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::vector<double> plant{0.4, -0.3, 0.2, 0.1, -0.05, 0.25, -0.15, 0.05};
    std::vector<double> hist(8, 0.0);
    auto da = make_da_filter(c, Variant::lms());
    FloatLms twin(8, c.mu.value(), Variant::lms());
    const double bound = 8 * std::ldexp(1.0, -(c.coeff_bits - 1)) * 4.0;
    double sq = 0.0;
    const int steps = 5000;
    for (int n = 0; n < steps; ++n) {
        const Fx x = quantize(g(rng), c.input);
        hist.insert(hist.begin(), to_real(x));
        hist.pop_back();
        double clean = 0.0;
        for (int i = 0; i < 8; ++i) clean += plant[i] * hist[i];
        const Fx d = quantize(clean + 0.01 * g(rng), c.output);
        const auto r = da->step(x, d);
        const auto t = twin.step(to_real(x), to_real(d));
        sq += (to_real(r.y) - t.y) * (to_real(r.y) - t.y);
    }
    CHECK(std::sqrt(sq / steps) < bound);
    for (int i = 0; i < 8; ++i) {
        CHECK(std::abs(to_real(da->coefficients()[i]) - twin.coefficients()[i]) < 16 * std::ldexp(1.0, -(c.coeff_bits - 1)));
    }
}
