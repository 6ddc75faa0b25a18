#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dafilt {

// Exact intermediate type for sums of products before the final rounding.
using Wide = __int128;

enum class Rounding {
    Nearest,   // round half away from zero
    Truncate,  // drop LSBs (floor, two's complement truncation)
};

/// Q-format: `word` total bits including sign, `frac` fractional bits.
struct Format {
    int word = 16;
    int frac = 15;

    std::int64_t max_mantissa() const { return (std::int64_t{1} << (word - 1)) - 1; }
    std::int64_t min_mantissa() const { return -(std::int64_t{1} << (word - 1)); }

    /// Throws std::invalid_argument unless 2 <= word <= 62 and 0 <= frac <= word - 1.
    void validate() const;

    friend bool operator==(const Format&, const Format&) = default;
};

/// Coefficient format (B, B-1): pure fraction in [-1, 1 - 2^-(B-1)].
inline Format coeff_format(int bits) { return Format{bits, bits - 1}; }

/**
 * Fixed-point scalar: value = mantissa * 2^-frac.
 *
 * The saturated flag is sticky: it is set when the value was produced by
 * clamping and survives copies, so callers can audit overflow after the fact.
 */
class Fx {
public:
    Fx() = default;
    /// Throws std::invalid_argument if the mantissa is outside the format range.
    Fx(std::int64_t mantissa, Format fmt, bool saturated = false);

    std::int64_t mantissa() const { return mantissa_; }
    Format format() const { return fmt_; }
    int word_len() const { return fmt_.word; }
    int frac_len() const { return fmt_.frac; }
    bool saturated() const { return saturated_; }

    friend bool operator==(const Fx& a, const Fx& b) {
        return a.mantissa_ == b.mantissa_ && a.fmt_ == b.fmt_;
    }

private:
    std::int64_t mantissa_ = 0;
    Format fmt_{};
    bool saturated_ = false;
};

/// Nearest representable value under `mode`, clamped to the format range on overflow.
Fx quantize(double v, Format fmt, Rounding mode = Rounding::Nearest);

/// Rescale the exact value `value * 2^-frac` into `fmt`, rounding once and saturating.
Fx requantize(Wide value, int frac, Format fmt, Rounding mode = Rounding::Nearest);

/// Arithmetic right shift of `value` by `shift` bits under `mode` (shift may be <= 0).
Wide shift_round(Wide value, int shift, Rounding mode);

double to_real(const Fx& a);
double to_real(Wide value, int frac);

// Bit-slicing. Bit 0 is the sign bit (weight -1), bit j has weight 2^-j.
std::vector<std::uint8_t> slice_tc(const Fx& w);
// Offset-binary rows: obc[j] = 2 * tc[j] - 1.
std::vector<std::int8_t> slice_obc(const Fx& w);

double reconstruct_tc(std::span<const std::uint8_t> bits);
double reconstruct_obc(std::span<const std::int8_t> row);

/// N x B bit-slice matrix of a coefficient vector, row-major.
class CoeffBits {
public:
    CoeffBits() = default;
    CoeffBits(std::span<const Fx> coeffs, int bits);

    int taps() const { return taps_; }
    int bits() const { return bits_; }

    std::uint8_t tc(int tap, int bit) const { return tc_[static_cast<std::size_t>(tap * bits_ + bit)]; }
    std::int8_t obc(int tap, int bit) const { return static_cast<std::int8_t>(2 * tc(tap, bit) - 1); }

    std::span<const std::uint8_t> tc_row(int tap) const {
        return {tc_.data() + static_cast<std::size_t>(tap * bits_), static_cast<std::size_t>(bits_)};
    }
    std::vector<std::int8_t> obc_row(int tap) const;

    // Column j across taps [first, first + count); taps beyond taps() read as zero coefficients.
    std::vector<std::uint8_t> tc_column(int bit, int first = 0, int count = -1) const;
    std::vector<std::int8_t> obc_column(int bit, int first = 0, int count = -1) const;

    // Packed address: bit i of the result is tc(first + i, bit).
    std::uint32_t packed_column(int bit, int first, int count) const;

    friend bool operator==(const CoeffBits&, const CoeffBits&) = default;

private:
    int taps_ = 0;
    int bits_ = 0;
    std::vector<std::uint8_t> tc_;
};

}  // namespace dafilt
