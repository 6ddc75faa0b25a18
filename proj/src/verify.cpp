#include "dafilt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "dafilt/cost.hpp"
#include "dafilt/da_filter.hpp"
#include "dafilt/fixed_point.hpp"
#include "dafilt/lut.hpp"
#include "dafilt/reference.hpp"
#include "dafilt/rng.hpp"
#include "dafilt/variants.hpp"

namespace dafilt {

VerifyOptions VerifyOptions::for_sweep(Sweep sweep) {
    VerifyOptions o;
    if (sweep == Sweep::Small) {
        o.output_cases = 3000;
        o.lut_windows = 2;
        o.slide_shifts = 1000;
        o.bank_windows = 4;
        o.bank_addresses = 64;
        o.degeneracy_samples = 1000;
        o.oracle_samples = 1000;
        o.reconstruction_max_bits = 8;
        o.cost_max_taps = 16;
    }
    return o;
}

bool VerifyReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

std::int64_t uniform(PhiloxStream& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Mostly uniform over the format, with the range endpoints and zero mixed in.
std::int64_t random_mantissa(PhiloxStream& rng, Format f) {
    switch (uniform(rng, 0, 19)) {
        case 0: return f.min_mantissa();
        case 1: return f.max_mantissa();
        case 2: return 0;
        default: return uniform(rng, f.min_mantissa(), f.max_mantissa());
    }
}

std::vector<Fx> random_vector(PhiloxStream& rng, Format f, std::size_t n) {
    std::vector<Fx> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(random_mantissa(rng, f), f);
    return v;
}

Format random_format(PhiloxStream& rng, int min_word, int max_word) {
    const int word = static_cast<int>(uniform(rng, min_word, max_word));
    return Format{word, static_cast<int>(uniform(rng, 0, word - 1))};
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << ']';
    return os.str();
}

std::string mantissas(std::span<const Fx> v) {
    std::vector<std::int64_t> m;
    for (const Fx& x : v) m.push_back(x.mantissa());
    return join(m);
}

std::string describe(const Format& f) {
    return "Q(" + std::to_string(f.word) + "," + std::to_string(f.frac) + ")";
}

struct OutputCase {
    FilterConfig cfg;
    std::vector<Fx> coeffs;
    std::vector<Fx> window;  // N samples, newest first
};

OutputCase random_output_case(PhiloxStream& rng) {
    OutputCase c;
    FilterConfig& f = c.cfg;
    f.taps = static_cast<int>(uniform(rng, 1, 8));
    f.coeff_bits = static_cast<int>(uniform(rng, 4, 12));
    f.lut_bits = static_cast<int>(uniform(rng, 1, f.taps));
    f.input = random_format(rng, 4, 24);
    f.rounding = uniform(rng, 0, 1) ? Rounding::Nearest : Rounding::Truncate;
    f.refresh = uniform(rng, 0, 1) ? RefreshPolicy::Slide : RefreshPolicy::Rebuild;
    if (uniform(rng, 0, 1)) {
        // Lossless output: any LUT error shows up in y.
        f.output = Format{std::min(62, f.input.word + f.coeff_bits + 5), f.input.frac + f.coeff_bits - 1};
    } else {
        f.output = random_format(rng, 6, 32);
    }
    f.error = f.output;
    f.mu = StepSize::shift(4);
    c.coeffs = random_vector(rng, f.coeff(), static_cast<std::size_t>(f.taps));
    c.window = random_vector(rng, f.input, static_cast<std::size_t>(f.taps));
    return c;
}

Fx direct_output(const OutputCase& c) {
    Wide acc = 0;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) acc += Wide{c.coeffs[i].mantissa()} * c.window[i].mantissa();
    return requantize(acc, c.cfg.coeff_bits - 1 + c.cfg.input.frac, c.cfg.output, c.cfg.rounding);
}

DaFilter make_filter(const OutputCase& c, Scheme scheme) {
    FilterConfig cfg = c.cfg;
    cfg.scheme = scheme;
    DaFilter f(cfg, c.coeffs);
    f.set_window(c.window);
    return f;
}

// Zero coefficients one at a time while the case still fails.
OutputCase shrink(OutputCase c, const std::function<bool(const OutputCase&)>& fails) {
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
        if (c.coeffs[i].mantissa() == 0) continue;
        OutputCase trial = c;
        trial.coeffs[i] = Fx(0, c.cfg.coeff());
        if (fails(trial)) c = std::move(trial);
    }
    return c;
}

std::string describe_case(const OutputCase& c) {
    std::ostringstream os;
    os << "N=" << c.cfg.taps << " B=" << c.cfg.coeff_bits << " k=" << c.cfg.lut_bits
       << " input=" << describe(c.cfg.input) << " output=" << describe(c.cfg.output)
       << " rounding=" << (c.cfg.rounding == Rounding::Nearest ? "nearest" : "truncate")
       << " coeffs=" << mantissas(c.coeffs) << " window=" << mantissas(c.window);
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

SuiteResult verify_reconstruction(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "reconstruction";
    for (int bits = 2; bits <= opts.reconstruction_max_bits; ++bits) {
        const Format f = coeff_format(bits);
        for (std::int64_t m = f.min_mantissa(); m <= f.max_mantissa(); ++m) {
            ++r.cases;
            const Fx w(m, f);
            const auto tc = slice_tc(w);
            const auto obc = slice_obc(w);
            bool ok = reconstruct_tc(tc) == to_real(w) && reconstruct_obc(obc) == to_real(w);
            for (std::size_t j = 0; j < tc.size(); ++j) ok = ok && obc[j] == 2 * tc[j] - 1;
            if (!ok && r.failures++ == 0) {
                r.counterexample = "B=" + std::to_string(bits) + " mantissa=" + std::to_string(m) +
                                   " tc=" + join(std::vector<int>(tc.begin(), tc.end())) +
                                   " obc=" + join(std::vector<int>(obc.begin(), obc.end()));
            }
        }
    }
    r.seconds = timer.seconds();
    return r;
}

SuiteResult verify_tc_exactness(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "tc_exactness";
    PhiloxStream rng(opts.seed, 1);

    auto fails = [&](const OutputCase& c) {
        DaFilter f = make_filter(c, Scheme::TC);
        if (opts.inject_fault) {
            auto& unit = f.bank_mut().tc_units_mut().front();
            unit.inject_fault(static_cast<std::uint32_t>(unit.entries().size() - 1), 1);
        }
        const Output out = f.output_tc();
        const Fx expect = direct_output(c);
        return out.y.mantissa() != expect.mantissa() || out.y.saturated() != expect.saturated();
    };

    for (std::size_t n = 0; n < opts.output_cases; ++n) {
        const OutputCase c = random_output_case(rng);
        ++r.cases;
        if (fails(c) && r.failures++ == 0) {
            const OutputCase small = shrink(c, fails);
            DaFilter f = make_filter(small, Scheme::TC);
            if (opts.inject_fault) {
                auto& unit = f.bank_mut().tc_units_mut().front();
                unit.inject_fault(static_cast<std::uint32_t>(unit.entries().size() - 1), 1);
            }
            r.counterexample = describe_case(small) + " da_y=" + std::to_string(f.output_tc().y.mantissa()) +
                               " direct_y=" + std::to_string(direct_output(small).mantissa());
        }
    }
    r.seconds = timer.seconds();
    return r;
}

SuiteResult verify_obc_equivalence(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "obc_equivalence";
    PhiloxStream rng(opts.seed, 2);

    for (std::size_t n = 0; n < opts.output_cases; ++n) {
        OutputCase c = random_output_case(rng);
        // Random update parameters.
        c.cfg.error = random_format(rng, 8, 32);
        if (uniform(rng, 0, 1)) {
            c.cfg.mu = StepSize::shift(static_cast<int>(uniform(rng, 0, 12)));
        } else {
            c.cfg.mu = StepSize{uniform(rng, 1, 255), static_cast<int>(uniform(rng, 4, 16))};
        }
        const auto batch_len = static_cast<std::size_t>(uniform(rng, 1, 3));
        std::vector<ErrorSample> batch;
        for (std::size_t l = 0; l < batch_len; ++l) {
            ErrorSample s{Fx(random_mantissa(rng, c.cfg.error), c.cfg.error), {}};
            for (const Fx& x : random_vector(rng, c.cfg.input, static_cast<std::size_t>(c.cfg.taps))) {
                s.window.push_back(x.mantissa());
            }
            batch.push_back(std::move(s));
        }

        auto output_mismatch = [&](const OutputCase& oc) {
            const Output tc = make_filter(oc, Scheme::TC).output_tc();
            const Output obc = make_filter(oc, Scheme::OBC).output_obc();
            return obc.exact != 2 * tc.exact || !(obc.y == tc.y) || obc.y.saturated() != tc.y.saturated();
        };
        auto update_mismatch = [&](const OutputCase& oc) {
            DaFilter tc = make_filter(oc, Scheme::TC);
            DaFilter obc = make_filter(oc, Scheme::OBC);
            tc.update_tc(batch);
            obc.update_obc(batch);
            if (!std::equal(tc.coefficients().begin(), tc.coefficients().end(), obc.coefficients().begin())) return true;
            for (int i = 0; i < oc.cfg.taps; ++i) {
                const auto row = slice_obc(obc.coefficients()[static_cast<std::size_t>(i)]);
                if (row != obc.coeff_bits().obc_row(i)) return true;
            }
            return false;
        };

        r.cases += 2;
        const bool out_bad = output_mismatch(c);
        const bool upd_bad = update_mismatch(c);
        if (out_bad || upd_bad) {
            if (r.failures == 0) {
                const OutputCase small = shrink(c, out_bad ? std::function<bool(const OutputCase&)>(output_mismatch)
                                                           : std::function<bool(const OutputCase&)>(update_mismatch));
                r.counterexample = std::string(out_bad ? "output" : "update") + " mismatch: " + describe_case(small);
            }
            r.failures += static_cast<std::size_t>(out_bad) + static_cast<std::size_t>(upd_bad);
        }
    }
    r.seconds = timer.seconds();
    return r;
}

SuiteResult verify_lut_identities(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "lut_identities";
    PhiloxStream rng(opts.seed, 3);

    auto fail = [&](const std::string& what, int k, const std::vector<Fx>& window, std::uint32_t addr) {
        if (r.failures++ == 0) {
            r.counterexample = what + " k=" + std::to_string(k) + " window=" + mantissas(window) +
                               " address=" + std::to_string(addr);
        }
    };

    for (int k = 1; k <= 8; ++k) {
        for (std::size_t w = 0; w < opts.lut_windows; ++w) {
            const Format fmt = random_format(rng, 4, 24);
            const auto window = random_vector(rng, fmt, static_cast<std::size_t>(k));
            const TcLut tc = TcLut::build(window, k);
            const ObcLut obc = ObcLut::build(window, k);
            const std::uint32_t all = (std::uint32_t{1} << k) - 1;
            std::int64_t total = 0;
            for (const Fx& x : window) total += x.mantissa();

            if (tc.at(0) != 0) fail("tc entries[0] != 0", k, window, 0);
            if (obc.at(all) != total) fail("obc all-plus entry != sum", k, window, all);
            if (obc.d_initial() != -total) fail("obc d_initial != -sum", k, window, 0);
            for (std::uint32_t a = 0; a <= all; ++a) {
                ++r.cases;
                std::int64_t subset = 0, signed_sum = 0;
                for (int i = 0; i < k; ++i) {
                    const std::int64_t x = window[static_cast<std::size_t>(i)].mantissa();
                    const bool set = (a >> i) & 1u;
                    subset += set ? x : 0;
                    signed_sum += set ? x : -x;
                }
                if (tc.at(a) != subset) fail("tc subset sum", k, window, a);
                if (tc.at(a) + tc.at(~a & all) != tc.at(all)) fail("tc complement identity", k, window, a);
                if (obc.at(a) != signed_sum) fail("obc signed sum", k, window, a);
                if (obc.at(a) != -obc.at(~a & all)) fail("obc mirror identity", k, window, a);
                if (k <= 6 && obc.at(a) != 2 * tc.at(a) - tc.at(all)) fail("tc/obc bridge", k, window, a);
            }
        }
    }
    r.seconds = timer.seconds();
    return r;
}

SuiteResult verify_slide_rebuild(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "slide_rebuild";
    PhiloxStream rng(opts.seed, 4);
    constexpr int kRun = 10;

    auto fail = [&](const std::string& what) {
        if (r.failures++ == 0) r.counterexample = what;
    };

    while (r.cases < opts.slide_shifts) {
        // Single tables.
        {
            const int k = static_cast<int>(uniform(rng, 1, 8));
            const Format fmt = random_format(rng, 4, 24);
            std::vector<Fx> window = random_vector(rng, fmt, static_cast<std::size_t>(k));
            TcLut tc = TcLut::build(window, k);
            ObcLut obc = ObcLut::build(window, k);
            for (int s = 0; s < kRun; ++s) {
                const Fx x(random_mantissa(rng, fmt), fmt);
                window.insert(window.begin(), x);
                window.pop_back();
                tc.slide(x);
                obc.slide(x);
                r.cases += 2;
                if (!(tc == TcLut::build(window, k))) fail("tc slide k=" + std::to_string(k) + " window=" + mantissas(window));
                if (!(obc == ObcLut::build(window, k))) fail("obc slide k=" + std::to_string(k) + " window=" + mantissas(window));
            }
        }
        // Banks, including padded tails.
        {
            const int taps = static_cast<int>(uniform(rng, 1, 16));
            const int k = static_cast<int>(uniform(rng, 1, std::min(taps, 8)));
            const Scheme scheme = uniform(rng, 0, 1) ? Scheme::TC : Scheme::OBC;
            const Format fmt = random_format(rng, 4, 24);
            const int units = (taps + k - 1) / k;
            std::vector<Fx> window = random_vector(rng, fmt, static_cast<std::size_t>(units * k));
            LutBank bank = LutBank::build(window, taps, k, scheme);
            for (int s = 0; s < kRun; ++s) {
                const Fx x(random_mantissa(rng, fmt), fmt);
                window.insert(window.begin(), x);
                window.pop_back();
                bank.slide(x);
                ++r.cases;
                if (!(bank == LutBank::build(window, taps, k, scheme))) {
                    fail(std::string("bank slide scheme=") + to_string(scheme) + " N=" + std::to_string(taps) +
                         " k=" + std::to_string(k) + " window=" + mantissas(window));
                }
            }
        }
    }
    r.seconds = timer.seconds();
    return r;
}

SuiteResult verify_bank_monolithic(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "bank_monolithic";
    PhiloxStream rng(opts.seed, 5);

    for (int taps = 8; taps <= 16; ++taps) {
        for (int k : {2, 4, 8}) {
            const int padded = (taps + k - 1) / k * k;
            for (std::size_t w = 0; w < opts.bank_windows; ++w) {
                const Format fmt = random_format(rng, 4, 24);
                const auto window = random_vector(rng, fmt, static_cast<std::size_t>(padded));
                const LutBank tc_bank = LutBank::build(window, taps, k, Scheme::TC);
                const LutBank obc_bank = LutBank::build(window, taps, k, Scheme::OBC);
                const TcLut tc_mono = TcLut::build(window, padded);
                const ObcLut obc_mono = ObcLut::build(window, padded);
                for (std::size_t a = 0; a < opts.bank_addresses; ++a) {
                    std::vector<std::uint8_t> bits(static_cast<std::size_t>(padded));
                    std::vector<std::int8_t> signs(bits.size());
                    for (std::size_t i = 0; i < bits.size(); ++i) {
                        // Padded taps carry zero coefficients: TC bit 0, OBC -1.
                        bits[i] = i < static_cast<std::size_t>(taps) ? static_cast<std::uint8_t>(uniform(rng, 0, 1)) : 0;
                        signs[i] = static_cast<std::int8_t>(2 * bits[i] - 1);
                    }
                    r.cases += 2;
                    const bool tc_ok = tc_bank.lookup_tc(bits) == tc_mono.lookup(bits);
                    const bool obc_ok = obc_bank.lookup_obc(signs) == obc_mono.lookup(signs);
                    if ((!tc_ok || !obc_ok) && r.failures++ == 0) {
                        r.counterexample = std::string(tc_ok ? "obc" : "tc") + " N=" + std::to_string(taps) +
                                           " k=" + std::to_string(k) + " window=" + mantissas(window) +
                                           " address=" + join(std::vector<int>(bits.begin(), bits.end()));
                    }
                }
            }
        }
    }
    r.seconds = timer.seconds();
    return r;
}

namespace {

struct Stream {
    FilterConfig cfg;
    std::vector<Fx> x;
    std::vector<Fx> d;
};

// System-identification style data: a random plant observed in light noise.
Stream random_stream(PhiloxStream& rng, std::size_t samples, Scheme scheme) {
    Stream s;
    FilterConfig& f = s.cfg;
    f.taps = static_cast<int>(uniform(rng, 1, 8));
    f.coeff_bits = static_cast<int>(uniform(rng, 4, 12));
    f.lut_bits = static_cast<int>(uniform(rng, 1, f.taps));
    f.scheme = scheme;
    f.input = Format{12, 9};
    f.output = Format{24, 14};
    f.error = Format{20, 14};
    f.mu = StepSize::shift(static_cast<int>(uniform(rng, 3, 6)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> plant(static_cast<std::size_t>(f.taps));
    for (double& w : plant) w = to_real(quantize(uni(rng) * 0.9, f.coeff()));
    std::vector<double> hist(plant.size(), 0.0);
    for (std::size_t n = 0; n < samples; ++n) {
        const Fx x = quantize(gauss(rng), f.input);
        std::rotate(hist.rbegin(), hist.rbegin() + 1, hist.rend());
        hist[0] = to_real(x);
        double y = 0.0;
        for (std::size_t i = 0; i < plant.size(); ++i) y += plant[i] * hist[i];
        s.x.push_back(x);
        s.d.push_back(quantize(y + 0.01 * gauss(rng), f.output));
    }
    return s;
}

std::string first_divergence(const std::vector<TrajectoryPoint>& a, const std::vector<TrajectoryPoint>& b) {
    for (std::size_t n = 0; n < std::min(a.size(), b.size()); ++n) {
        if (!(a[n].y == b[n].y) || !(a[n].e == b[n].e) || a[n].coeffs != b[n].coeffs) {
            return "iteration " + std::to_string(n) + ": y " + std::to_string(a[n].y.mantissa()) + " vs " +
                   std::to_string(b[n].y.mantissa()) + ", e " + std::to_string(a[n].e.mantissa()) + " vs " +
                   std::to_string(b[n].e.mantissa()) + ", w " + join(a[n].coeffs) + " vs " + join(b[n].coeffs);
        }
    }
    return a.size() == b.size() ? "" : "length mismatch";
}

std::string describe_stream(const Stream& s) {
    std::ostringstream os;
    os << "N=" << s.cfg.taps << " B=" << s.cfg.coeff_bits << " k=" << s.cfg.lut_bits
       << " scheme=" << to_string(s.cfg.scheme) << " mu=2^-" << s.cfg.mu.frac;
    return os.str();
}

}  // namespace

SuiteResult verify_degeneracies(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "degeneracies";
    PhiloxStream rng(opts.seed, 6);
    for (Scheme scheme : {Scheme::TC, Scheme::OBC}) {
        const Stream s = random_stream(rng, opts.degeneracy_samples, scheme);
        auto lms = make_da_filter(s.cfg, Variant::lms());
        auto dlms = make_da_filter(s.cfg, Variant::dlms(0));
        auto blms = make_da_filter(s.cfg, Variant::blms(1));
        const auto base = record_trajectory(*lms, s.x, s.d);
        const auto with_delay = record_trajectory(*dlms, s.x, s.d);
        const auto with_block = record_trajectory(*blms, s.x, s.d);
        r.cases += 2 * base.size();
        for (const auto* other : {&with_delay, &with_block}) {
            const std::string diff = first_divergence(base, *other);
            if (!diff.empty() && r.failures++ == 0) {
                r.counterexample = std::string(other == &with_delay ? "DLMS(D=0)" : "BLMS(L=1)") + " vs LMS, " +
                                   describe_stream(s) + ", " + diff;
            }
        }
    }
    r.seconds = timer.seconds();
    return r;
}

SuiteResult verify_oracle_trajectories(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "oracle_trajectories";
    PhiloxStream rng(opts.seed, 7);
    for (Scheme scheme : {Scheme::TC, Scheme::OBC}) {
        for (const Variant& variant : {Variant::lms(), Variant::dlms(3), Variant::blms(4)}) {
            Stream s = random_stream(rng, opts.oracle_samples, scheme);
            const auto oracle = reference_lms(s.cfg, variant, s.x, s.d);
            for (RefreshPolicy policy : {RefreshPolicy::Slide, RefreshPolicy::Rebuild}) {
                s.cfg.refresh = policy;
                auto da = make_da_filter(s.cfg, variant);
                const auto got = record_trajectory(*da, s.x, s.d);
                r.cases += got.size();
                const std::string diff = first_divergence(got, oracle);
                if (!diff.empty() && r.failures++ == 0) {
                    r.counterexample = "variant=" + variant.to_string() +
                                       (policy == RefreshPolicy::Slide ? " refresh=slide " : " refresh=rebuild ") +
                                       describe_stream(s) + ", " + diff;
                }
            }
        }
    }
    r.seconds = timer.seconds();
    return r;
}

SuiteResult verify_cost_relations(const VerifyOptions& opts) {
    Timer timer;
    SuiteResult r;
    r.name = "cost_relations";
    auto fail = [&](const std::string& what) {
        if (r.failures++ == 0) r.counterexample = what;
    };
    for (int taps = 1; taps <= opts.cost_max_taps; ++taps) {
        for (int k = 1; k <= taps; ++k) {
            ++r.cases;
            const CostReport tc = estimate(CostScheme::TC, taps, 12, k);
            const CostReport obc = estimate(CostScheme::OBC, taps, 12, k);
            const std::string at = " N=" + std::to_string(taps) + " k=" + std::to_string(k);
            if (2 * obc.total_lut_words != tc.total_lut_words) fail("OBC words not half of TC" + at);
            if (tc.total_lut_words != tc.lut_units * tc.words_per_unit) fail("TC total != units * words" + at);
            if (obc.total_lut_words != obc.lut_units * obc.words_per_unit) fail("OBC total != units * words" + at);
        }
    }
    const Format fmt{8, 4};
    for (int k = 1; k <= 12; ++k) {
        ++r.cases;
        const std::vector<Fx> window(static_cast<std::size_t>(k), Fx(0, fmt));
        const LutBank tc = LutBank::build(window, k, k, Scheme::TC);
        const LutBank obc = LutBank::build(window, k, k, Scheme::OBC);
        if (TcLut::build(window, k).entries().size() != estimate(CostScheme::TC, k, 12, k).words_per_unit) {
            fail("TC built size differs from words_per_unit at k=" + std::to_string(k));
        }
        if (ObcLut::build(window, k).entries().size() != estimate(CostScheme::OBC, k, 12, k).words_per_unit) {
            fail("OBC built size differs from words_per_unit at k=" + std::to_string(k));
        }
        if (static_cast<std::uint64_t>(tc.units()) != estimate(CostScheme::TC, k, 12, k).lut_units ||
            static_cast<std::uint64_t>(obc.units()) != estimate(CostScheme::OBC, k, 12, k).lut_units) {
            fail("built unit count differs at k=" + std::to_string(k));
        }
    }
    r.seconds = timer.seconds();
    return r;
}

VerifyReport verify(const VerifyOptions& opts) {
    VerifyReport report;
    report.suites.push_back(verify_reconstruction(opts));
    report.suites.push_back(verify_tc_exactness(opts));
    report.suites.push_back(verify_obc_equivalence(opts));
    report.suites.push_back(verify_lut_identities(opts));
    report.suites.push_back(verify_slide_rebuild(opts));
    report.suites.push_back(verify_bank_monolithic(opts));
    report.suites.push_back(verify_degeneracies(opts));
    report.suites.push_back(verify_oracle_trajectories(opts));
    report.suites.push_back(verify_cost_relations(opts));
    return report;
}

void write_report(std::ostream& os, const VerifyReport& report) {
    char buf[64];
    for (const SuiteResult& s : report.suites) {
        std::snprintf(buf, sizeof buf, "%.2fs", s.seconds);
        os << (s.passed() ? "PASS " : "FAIL ") << s.name << "  cases=" << s.cases << " failures=" << s.failures
           << " time=" << buf << '\n';
        if (!s.counterexample.empty()) os << "  counterexample: " << s.counterexample << '\n';
    }
    os << (report.passed() ? "all suites passed\n" : "verification FAILED\n");
}

}  // namespace dafilt
