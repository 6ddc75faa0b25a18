#include "dafilt/fixed_point.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dafilt {

void Format::validate() const {
    if (word < 2 || word > 62 || frac < 0 || frac > word - 1) {
        std::ostringstream msg;
        msg << "invalid fixed-point format Q(" << word << "," << frac
            << "): need 2 <= word <= 62 and 0 <= frac <= word-1";
        throw std::invalid_argument(msg.str());
    }
}

Fx::Fx(std::int64_t mantissa, Format fmt, bool saturated)
    : mantissa_(mantissa), fmt_(fmt), saturated_(saturated) {
    fmt_.validate();
    if (mantissa < fmt_.min_mantissa() || mantissa > fmt_.max_mantissa()) {
        std::ostringstream msg;
        msg << "mantissa " << mantissa << " out of range for Q(" << fmt_.word << "," << fmt_.frac << ")";
        throw std::invalid_argument(msg.str());
    }
}

namespace {

Fx clamp_to(Wide m, Format fmt) {
    if (m > fmt.max_mantissa()) return Fx(fmt.max_mantissa(), fmt, true);
    if (m < fmt.min_mantissa()) return Fx(fmt.min_mantissa(), fmt, true);
    return Fx(static_cast<std::int64_t>(m), fmt);
}

int bit_length(Wide v) {
    unsigned __int128 u = v < 0 ? static_cast<unsigned __int128>(-(v + 1)) : static_cast<unsigned __int128>(v);
    int n = 0;
    while (u != 0) {
        u >>= 1;
        ++n;
    }
    return n;
}

}  // namespace

Wide shift_round(Wide value, int shift, Rounding mode) {
    if (shift <= 0) {
        const int left = -shift;
        if (value != 0 && bit_length(value) + left > 126) {
            throw std::overflow_error("shift_round: left shift overflows the wide accumulator");
        }
        return value * (Wide{1} << left);
    }
    if (shift > 125) {
        // |value| < 2^126 always rounds to 0 (nearest) or the sign (floor).
        return (mode == Rounding::Truncate && value < 0) ? Wide{-1} : Wide{0};
    }
    if (mode == Rounding::Truncate) return value >> shift;
    const Wide half = Wide{1} << (shift - 1);
    if (value >= 0) return (value + half) >> shift;
    return -((-value + half) >> shift);
}

Fx requantize(Wide value, int frac, Format fmt, Rounding mode) {
    fmt.validate();
    const int shift = frac - fmt.frac;
    if (shift < 0 && value != 0 && bit_length(value) - shift > 100) {
        // Far outside any 62-bit word.
        return clamp_to(value > 0 ? Wide{fmt.max_mantissa()} + 1 : Wide{fmt.min_mantissa()} - 1, fmt);
    }
    return clamp_to(shift_round(value, shift, mode), fmt);
}

Fx quantize(double v, Format fmt, Rounding mode) {
    fmt.validate();
    if (std::isnan(v)) throw std::invalid_argument("quantize: NaN");
    const double scaled = std::ldexp(v, fmt.frac);
    const double r = mode == Rounding::Nearest ? std::round(scaled) : std::floor(scaled);
    if (r > static_cast<double>(fmt.max_mantissa())) return Fx(fmt.max_mantissa(), fmt, true);
    if (r < static_cast<double>(fmt.min_mantissa())) return Fx(fmt.min_mantissa(), fmt, true);
    return Fx(static_cast<std::int64_t>(r), fmt);
}

double to_real(const Fx& a) { return std::ldexp(static_cast<double>(a.mantissa()), -a.frac_len()); }

double to_real(Wide value, int frac) { return std::ldexp(static_cast<double>(value), -frac); }

namespace {

void require_coeff_format(const Fx& w) {
    const Format f = w.format();
    if (f.frac != f.word - 1 || f.word > 31) {
        std::ostringstream msg;
        msg << "coefficient must use format (B, B-1) with B <= 31, got Q(" << f.word << "," << f.frac << ")";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

std::vector<std::uint8_t> slice_tc(const Fx& w) {
    require_coeff_format(w);
    const int bits = w.word_len();
    const auto pattern = static_cast<std::uint64_t>(w.mantissa()) & ((std::uint64_t{1} << bits) - 1);
    std::vector<std::uint8_t> row(static_cast<std::size_t>(bits));
    for (int j = 0; j < bits; ++j) {
        row[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((pattern >> (bits - 1 - j)) & 1u);
    }
    return row;
}

std::vector<std::int8_t> slice_obc(const Fx& w) {
    const auto tc = slice_tc(w);
    std::vector<std::int8_t> row(tc.size());
    for (std::size_t j = 0; j < tc.size(); ++j) {
        // b - complement(b)
        row[j] = static_cast<std::int8_t>(tc[j] - (1 - tc[j]));
    }
    return row;
}

double reconstruct_tc(std::span<const std::uint8_t> bits) {
    if (bits.empty()) return 0.0;
    double v = -static_cast<double>(bits[0]);
    for (std::size_t j = 1; j < bits.size(); ++j) v += std::ldexp(bits[j], -static_cast<int>(j));
    return v;
}

double reconstruct_obc(std::span<const std::int8_t> row) {
    if (row.empty()) return 0.0;
    const int bits = static_cast<int>(row.size());
    double v = -static_cast<double>(row[0]);
    for (int j = 1; j < bits; ++j) v += std::ldexp(row[static_cast<std::size_t>(j)], -j);
    v -= std::ldexp(1.0, -(bits - 1));
    return 0.5 * v;
}

CoeffBits::CoeffBits(std::span<const Fx> coeffs, int bits)
    : taps_(static_cast<int>(coeffs.size())), bits_(bits), tc_(coeffs.size() * static_cast<std::size_t>(bits)) {
    for (int i = 0; i < taps_; ++i) {
        const Fx& w = coeffs[static_cast<std::size_t>(i)];
        if (w.format() != coeff_format(bits)) {
            throw std::invalid_argument("CoeffBits: coefficient format does not match bit width");
        }
        const auto row = slice_tc(w);
        std::copy(row.begin(), row.end(), tc_.begin() + static_cast<std::ptrdiff_t>(i * bits_));
    }
}

std::vector<std::int8_t> CoeffBits::obc_row(int tap) const {
    std::vector<std::int8_t> row(static_cast<std::size_t>(bits_));
    for (int j = 0; j < bits_; ++j) row[static_cast<std::size_t>(j)] = obc(tap, j);
    return row;
}

std::vector<std::uint8_t> CoeffBits::tc_column(int bit, int first, int count) const {
    if (count < 0) count = taps_ - first;
    std::vector<std::uint8_t> col(static_cast<std::size_t>(count), 0);
    for (int i = 0; i < count; ++i) {
        if (first + i < taps_) col[static_cast<std::size_t>(i)] = tc(first + i, bit);
    }
    return col;
}

std::vector<std::int8_t> CoeffBits::obc_column(int bit, int first, int count) const {
    const auto tc_col = tc_column(bit, first, count);
    std::vector<std::int8_t> col(tc_col.size());
    for (std::size_t i = 0; i < col.size(); ++i) col[i] = static_cast<std::int8_t>(2 * tc_col[i] - 1);
    return col;
}

std::uint32_t CoeffBits::packed_column(int bit, int first, int count) const {
    std::uint32_t addr = 0;
    for (int i = 0; i < count && first + i < taps_; ++i) {
        addr |= static_cast<std::uint32_t>(tc(first + i, bit)) << i;
    }
    return addr;
}

}  // namespace dafilt
