#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dafilt/fixed_point.hpp"
#include "dafilt/lut.hpp"

namespace dafilt {

enum class RefreshPolicy { Rebuild, Slide };

/// Step size mu = mantissa * 2^-frac. Power-of-two steps are mantissa 1.
struct StepSize {
    std::int64_t mantissa = 1;
    int frac = 6;

    static StepSize shift(int exponent) { return StepSize{1, exponent}; }
    /// Throws std::invalid_argument if `value` rounds to zero or is negative at `frac` bits.
    static StepSize from_real(double value, int frac);

    bool is_power_of_two() const { return mantissa == 1; }
    double value() const;
    friend bool operator==(const StepSize&, const StepSize&) = default;
};

struct FilterConfig {
    int taps = 16;
    int coeff_bits = 12;
    int lut_bits = 4;
    Scheme scheme = Scheme::TC;
    RefreshPolicy refresh = RefreshPolicy::Slide;
    Format input{16, 12};
    Format output{32, 16};
    Format error{32, 16};
    StepSize mu = StepSize::shift(6);
    Rounding rounding = Rounding::Nearest;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
    Format coeff() const { return coeff_format(coeff_bits); }
};

/// Sign applied to the partial product of bit column j: (-1)^floor((B-1-j)/(B-1)).
int column_sign(int j, int bits);

struct CycleRecord {
    int cycle = 0;
    std::vector<std::int8_t> address;  // 0/1 (TC) or -1/+1 (OBC), one per padded tap
    std::int64_t lut_value = 0;        // bank lookup, scale 2^-lut_frac
    int sign = 1;
    Wide accumulator = 0;              // partial output after this cycle, scale 2^-acc_frac
};

/// Per-cycle record of one bit-serial output, cycles in processing order
/// (j = B-1 first, the sign-inverted MSB column last).
struct CycleTrace {
    Scheme scheme = Scheme::TC;
    int lut_frac = 0;
    int acc_frac = 0;
    Wide initial = 0;  // OBC: d_initial * 2^-(B-1); TC: 0
    std::vector<CycleRecord> cycles;
};

struct Output {
    Fx y;
    Wide exact = 0;  // unrounded accumulator, scale 2^-trace.acc_frac
    CycleTrace trace;
};

/// Error together with the input window it pairs with in the update.
struct ErrorSample {
    Fx error;
    std::vector<std::int64_t> window;  // input mantissas, newest first, at least N long
};

struct StepResult {
    Fx y;
    Fx e;
};

/// e = d - y, rounded once into `fmt`.
Fx form_error(const Fx& d, const Fx& y, Format fmt, Rounding mode = Rounding::Nearest);

/**
 * Distributed-arithmetic LMS filter.
 *
 * Coefficients (B, B-1) are bit-sliced; each bit column addresses a bank of
 * input-sample LUTs, and the column partial products are shift-accumulated
 * over B cycles with a sign inversion on the MSB column. All accumulation is
 * exact; y is rounded once into the output format.
 */
class DaFilter {
public:
    explicit DaFilter(FilterConfig config);
    DaFilter(FilterConfig config, std::span<const Fx> coeffs);

    const FilterConfig& config() const { return cfg_; }
    std::span<const Fx> coefficients() const { return coeffs_; }
    const CoeffBits& coeff_bits() const { return bits_; }
    const LutBank& bank() const { return bank_; }
    LutBank& bank_mut() { return bank_; }

    /// Padded delay line, newest first.
    std::span<const std::int64_t> window() const { return window_; }
    /// The first N samples of the delay line.
    std::vector<std::int64_t> window_snapshot() const;

    void set_coefficients(std::span<const Fx> coeffs);
    void set_window(std::span<const Fx> samples);

    /// Push a new sample into the delay line and refresh the LUT bank.
    void shift_in(const Fx& x);

    Output output(bool with_trace = false) const;
    Output output_tc(bool with_trace = false) const;
    Output output_obc(bool with_trace = false) const;

    Fx form_error(const Fx& d, const Fx& y) const;

    /// w <- quantize(w + mu * sum(e_l * x_l)), one rounding per tap.
    void update(std::span<const ErrorSample> batch);
    void update_tc(std::span<const ErrorSample> batch);
    void update_obc(std::span<const ErrorSample> batch);
    void update(const Fx& e, std::span<const std::int64_t> window);

    StepResult step(const Fx& x, const Fx& d);

    /// Throws std::logic_error if the bit matrix or bank window drifted from the state.
    void check_invariants() const;

private:
    std::vector<Wide> gradient(std::span<const ErrorSample> batch) const;
    void commit(std::vector<Fx> next);
    void refresh_addresses();
    std::vector<std::int8_t> trace_address(int bit) const;

    FilterConfig cfg_;
    std::vector<Fx> coeffs_;
    CoeffBits bits_;
    std::vector<std::int64_t> window_;
    LutBank bank_;
    // addresses_[j * units + u]: packed bit column j for unit u.
    std::vector<std::uint32_t> addresses_;
};

}  // namespace dafilt
