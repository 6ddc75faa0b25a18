#include "dafilt/da_filter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dafilt {

StepSize StepSize::from_real(double value, int frac) {
    if (frac < 0 || frac > 62) throw std::invalid_argument("step size fraction bits must be in [0, 62]");
    const double scaled = std::round(std::ldexp(value, frac));
    if (!(scaled >= 1.0)) {
        std::ostringstream msg;
        msg << "step size " << value << " quantizes to " << scaled << " at " << frac
            << " fraction bits; need a positive mantissa";
        throw std::invalid_argument(msg.str());
    }
    if (scaled > 9.0e18) throw std::invalid_argument("step size mantissa overflows 64 bits");
    return StepSize{static_cast<std::int64_t>(scaled), frac};
}

double StepSize::value() const { return std::ldexp(static_cast<double>(mantissa), -frac); }

void FilterConfig::validate() const {
    std::ostringstream msg;
    if (taps < 1) msg << "taps must be >= 1";
    else if (coeff_bits < 2 || coeff_bits > 24) msg << "coefficient bits must be in [2, 24], got " << coeff_bits;
    else if (lut_bits < 1 || lut_bits > std::min(taps, kMaxLutBits))
        msg << "LUT size k=" << lut_bits << " must be in [1, min(N, 16)]";
    else if (input.word > 48) msg << "input word length must be <= 48";
    else if (mu.mantissa < 1) msg << "step size mantissa must be positive";
    else if (mu.frac < 0 || mu.frac > 62) msg << "step size fraction bits must be in [0, 62]";
    if (!msg.str().empty()) throw std::invalid_argument(msg.str());
    input.validate();
    output.validate();
    error.validate();

    // Update sums live in a 128-bit accumulator; 16 bits of headroom cover
    // block gradients of up to 65536 samples.
    const int coeff_frac = coeff_bits - 1;
    const int grad_frac = error.frac + input.frac + mu.frac;
    const int mu_bits = 64 - std::countl_zero(static_cast<std::uint64_t>(mu.mantissa));
    const int grad_bits = error.word + input.word + mu_bits + 1 + 16 + std::max(0, coeff_frac - grad_frac);
    const int coeff_span = coeff_bits + std::max(0, grad_frac - coeff_frac) + 1;
    if (grad_bits > 124 || coeff_span > 124) {
        throw std::invalid_argument("update precision exceeds the 128-bit accumulator; narrow the error, input or step-size formats");
    }
}

int column_sign(int j, int bits) {
    const int exponent = (bits - 1 - j) / (bits - 1);
    return exponent % 2 == 0 ? 1 : -1;
}

Fx form_error(const Fx& d, const Fx& y, Format fmt, Rounding mode) {
    const int frac = std::max(d.frac_len(), y.frac_len());
    const Wide diff = (Wide{d.mantissa()} << (frac - d.frac_len())) - (Wide{y.mantissa()} << (frac - y.frac_len()));
    return requantize(diff, frac, fmt, mode);
}

// ---------------------------------------------------------------------------

DaFilter::DaFilter(FilterConfig config) : cfg_(config) {
    cfg_.validate();
    coeffs_.assign(static_cast<std::size_t>(cfg_.taps), Fx(0, cfg_.coeff()));
    bits_ = CoeffBits(coeffs_, cfg_.coeff_bits);
    const int units = (cfg_.taps + cfg_.lut_bits - 1) / cfg_.lut_bits;
    window_.assign(static_cast<std::size_t>(units * cfg_.lut_bits), 0);
    set_window({});
}

DaFilter::DaFilter(FilterConfig config, std::span<const Fx> coeffs) : DaFilter(config) {
    set_coefficients(coeffs);
}

std::vector<std::int64_t> DaFilter::window_snapshot() const {
    return {window_.begin(), window_.begin() + cfg_.taps};
}

void DaFilter::set_coefficients(std::span<const Fx> coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(cfg_.taps)) {
        throw std::invalid_argument("set_coefficients: expected one coefficient per tap");
    }
    for (const Fx& w : coeffs) {
        if (w.format() != cfg_.coeff()) throw std::invalid_argument("set_coefficients: coefficient format must be (B, B-1)");
    }
    coeffs_.assign(coeffs.begin(), coeffs.end());
    bits_ = CoeffBits(coeffs_, cfg_.coeff_bits);
    refresh_addresses();
}

void DaFilter::set_window(std::span<const Fx> samples) {
    if (samples.size() > window_.size()) throw std::invalid_argument("set_window: too many samples");
    std::fill(window_.begin(), window_.end(), 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].format() != cfg_.input) throw std::invalid_argument("set_window: sample format mismatch");
        window_[i] = samples[i].mantissa();
    }
    std::vector<Fx> full;
    full.reserve(window_.size());
    for (std::int64_t m : window_) full.emplace_back(m, cfg_.input);
    bank_ = LutBank::build(full, cfg_.taps, cfg_.lut_bits, cfg_.scheme);
    refresh_addresses();
}

void DaFilter::shift_in(const Fx& x) {
    if (x.format() != cfg_.input) throw std::invalid_argument("shift_in: sample format mismatch");
    std::rotate(window_.rbegin(), window_.rbegin() + 1, window_.rend());
    window_[0] = x.mantissa();
    if (cfg_.refresh == RefreshPolicy::Slide) {
        bank_.slide(x);
    } else {
        std::vector<Fx> full;
        full.reserve(window_.size());
        for (std::int64_t m : window_) full.emplace_back(m, cfg_.input);
        bank_ = LutBank::build(full, cfg_.taps, cfg_.lut_bits, cfg_.scheme);
    }
}

void DaFilter::refresh_addresses() {
    const int units = bank_.units();
    const int k = cfg_.lut_bits;
    addresses_.assign(static_cast<std::size_t>(cfg_.coeff_bits * units), 0);
    for (int j = 0; j < cfg_.coeff_bits; ++j) {
        for (int u = 0; u < units; ++u) {
            addresses_[static_cast<std::size_t>(j * units + u)] = bits_.packed_column(j, u * k, k);
        }
    }
}

std::vector<std::int8_t> DaFilter::trace_address(int bit) const {
    const int padded = bank_.padded_taps();
    if (cfg_.scheme == Scheme::TC) {
        const auto col = bits_.tc_column(bit, 0, padded);
        return {col.begin(), col.end()};
    }
    return bits_.obc_column(bit, 0, padded);
}

Output DaFilter::output(bool with_trace) const {
    return cfg_.scheme == Scheme::TC ? output_tc(with_trace) : output_obc(with_trace);
}

Output DaFilter::output_tc(bool with_trace) const {
    if (cfg_.scheme != Scheme::TC) throw std::logic_error("output_tc requires a TC filter");
    const int bits = cfg_.coeff_bits;
    const int units = bank_.units();
    const auto& luts = bank_.tc_units();

    Output out;
    out.trace.scheme = Scheme::TC;
    out.trace.lut_frac = bank_.frac();
    out.trace.acc_frac = cfg_.input.frac + bits - 1;

    // LSB column first; column j carries weight 2^-j.
    Wide acc = 0;
    for (int j = bits - 1; j >= 0; --j) {
        std::int64_t b = 0;
        const std::uint32_t* addr = &addresses_[static_cast<std::size_t>(j * units)];
        for (int u = 0; u < units; ++u) b += luts[static_cast<std::size_t>(u)].at(addr[u]);
        const int sign = column_sign(j, bits);
        acc += Wide{sign * b} << (bits - 1 - j);
        if (with_trace) out.trace.cycles.push_back({j, trace_address(j), b, sign, acc});
    }
    out.exact = acc;
    out.y = requantize(acc, out.trace.acc_frac, cfg_.output, cfg_.rounding);
    return out;
}

Output DaFilter::output_obc(bool with_trace) const {
    if (cfg_.scheme != Scheme::OBC) throw std::logic_error("output_obc requires an OBC filter");
    const int bits = cfg_.coeff_bits;
    const int units = bank_.units();
    const auto& luts = bank_.obc_units();

    Output out;
    out.trace.scheme = Scheme::OBC;
    out.trace.lut_frac = bank_.frac();
    out.trace.acc_frac = bank_.frac() + bits - 1;

    // d_initial enters at weight 2^-(B-1), i.e. unshifted at this scale.
    Wide acc = bank_.d_initial();
    out.trace.initial = acc;
    for (int j = bits - 1; j >= 0; --j) {
        std::int64_t d = 0;
        const std::uint32_t* addr = &addresses_[static_cast<std::size_t>(j * units)];
        for (int u = 0; u < units; ++u) d += luts[static_cast<std::size_t>(u)].at(addr[u]);
        const int sign = column_sign(j, bits);
        acc += Wide{sign * d} << (bits - 1 - j);
        if (with_trace) out.trace.cycles.push_back({j, trace_address(j), d, sign, acc});
    }
    out.exact = acc;
    out.y = requantize(acc, out.trace.acc_frac, cfg_.output, cfg_.rounding);
    return out;
}

Fx DaFilter::form_error(const Fx& d, const Fx& y) const {
    return dafilt::form_error(d, y, cfg_.error, cfg_.rounding);
}

std::vector<Wide> DaFilter::gradient(std::span<const ErrorSample> batch) const {
    std::vector<Wide> grad(static_cast<std::size_t>(cfg_.taps), 0);
    for (const ErrorSample& s : batch) {
        if (s.error.format() != cfg_.error) throw std::invalid_argument("update: error format mismatch");
        if (s.window.size() < static_cast<std::size_t>(cfg_.taps)) {
            throw std::invalid_argument("update: window shorter than tap count");
        }
        const Wide e = s.error.mantissa();
        if (e == 0) continue;
        for (int i = 0; i < cfg_.taps; ++i) grad[static_cast<std::size_t>(i)] += e * s.window[static_cast<std::size_t>(i)];
    }
    return grad;
}

void DaFilter::update(std::span<const ErrorSample> batch) {
    if (cfg_.scheme == Scheme::TC) {
        update_tc(batch);
    } else {
        update_obc(batch);
    }
}

void DaFilter::update(const Fx& e, std::span<const std::int64_t> window) {
    const ErrorSample s{e, {window.begin(), window.end()}};
    update(std::span<const ErrorSample>(&s, 1));
}

void DaFilter::update_tc(std::span<const ErrorSample> batch) {
    if (cfg_.scheme != Scheme::TC) throw std::logic_error("update_tc requires a TC filter");
    const auto grad = gradient(batch);
    const int coeff_frac = cfg_.coeff_bits - 1;
    const int grad_frac = cfg_.error.frac + cfg_.input.frac + cfg_.mu.frac;
    const int frac = std::max(coeff_frac, grad_frac);

    std::vector<Fx> next(coeffs_);
    for (int i = 0; i < cfg_.taps; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (grad[idx] == 0) continue;
        const Wide w = shift_round(coeffs_[idx].mantissa(), coeff_frac - frac, cfg_.rounding);
        const Wide step = shift_round(Wide{cfg_.mu.mantissa} * grad[idx], grad_frac - frac, cfg_.rounding);
        next[idx] = requantize(w + step, frac, cfg_.coeff(), cfg_.rounding);
    }
    commit(std::move(next));
}

void DaFilter::update_obc(std::span<const ErrorSample> batch) {
    if (cfg_.scheme != Scheme::OBC) throw std::logic_error("update_obc requires an OBC filter");
    const auto grad = gradient(batch);
    const int bits = cfg_.coeff_bits;
    const int coeff_frac = bits - 1;
    const int grad_frac = cfg_.error.frac + cfg_.input.frac + cfg_.mu.frac;
    const int frac = std::max(coeff_frac, grad_frac);

    std::vector<Fx> next(coeffs_);
    for (int i = 0; i < cfg_.taps; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (grad[idx] == 0) continue;
        // Difference-matrix row dotted with the binary weights s, scale 2^-(B-1).
        Wide diff = 0;
        for (int j = 0; j < bits; ++j) {
            const Wide weight = Wide{1} << (bits - 1 - j);
            diff += (j == 0 ? -weight : weight) * bits_.obc(i, j);
        }
        // The difference form moves by 2 * mu * e * x.
        const Wide moved = shift_round(diff, coeff_frac - frac, cfg_.rounding) +
                           shift_round(2 * Wide{cfg_.mu.mantissa} * grad[idx], grad_frac - frac, cfg_.rounding);
        // Back to a value: w = 1/2 * (diff - 2^-(B-1)).
        const Wide twice = moved - shift_round(1, coeff_frac - frac, cfg_.rounding);
        if (twice % 2 != 0) throw std::logic_error("update_obc: difference form lost its offset");
        next[idx] = requantize(twice / 2, frac, cfg_.coeff(), cfg_.rounding);
    }
    commit(std::move(next));
}

void DaFilter::commit(std::vector<Fx> next) {
    coeffs_ = std::move(next);
    bits_ = CoeffBits(coeffs_, cfg_.coeff_bits);
    for (int i = 0; i < cfg_.taps; ++i) {
        // Rebuild the mantissa from its slices: sign bit weighs -2^(B-1).
        std::int64_t m = 0;
        for (int j = 0; j < cfg_.coeff_bits; ++j) {
            const std::int64_t weight = std::int64_t{1} << (cfg_.coeff_bits - 1 - j);
            m += (j == 0 ? -weight : weight) * bits_.tc(i, j);
        }
        if (m != coeffs_[static_cast<std::size_t>(i)].mantissa()) {
            throw std::logic_error("coefficient bit matrix out of sync with coefficients");
        }
    }
    refresh_addresses();
}

StepResult DaFilter::step(const Fx& x, const Fx& d) {
    shift_in(x);
    const Fx y = output().y;
    const Fx e = form_error(d, y);
    update(e, std::span<const std::int64_t>(window_.data(), static_cast<std::size_t>(cfg_.taps)));
    return {y, e};
}

void DaFilter::check_invariants() const {
    if (!(bits_ == CoeffBits(coeffs_, cfg_.coeff_bits))) throw std::logic_error("coefficient bit matrix drifted");
    if (bank_.window() != window_) throw std::logic_error("LUT bank window differs from the delay line");
}

}  // namespace dafilt
