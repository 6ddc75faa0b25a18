#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dafilt/fixed_point.hpp"

namespace dafilt {

enum class Scheme { TC, OBC };

const char* to_string(Scheme s);
Scheme parse_scheme(const char* text);

inline constexpr int kMaxLutBits = 16;

// Address convention shared by every table: bit i of an address selects
// window[i], and window[0] is the newest sample.

/**
 * Two's-complement DA table: entries[a] is the subset sum of the window
 * samples selected by a. Entries are input mantissas (scale 2^-F_x).
 */
class TcLut {
public:
    TcLut() = default;

    /// Throws std::invalid_argument unless 1 <= k <= max_bits, window.size() == k
    /// and all samples share one format.
    static TcLut build(std::span<const Fx> window, int k, int max_bits = kMaxLutBits);

    int taps() const { return taps_; }
    Format input_format() const { return input_; }
    int frac() const { return input_.frac; }
    std::span<const std::int64_t> entries() const { return entries_; }
    std::span<const std::int64_t> window() const { return window_; }

    std::int64_t at(std::uint32_t addr) const { return entries_[addr]; }
    std::int64_t lookup(std::span<const std::uint8_t> addr) const;

    /// Shift the window by one (oldest dropped, `sample` becomes newest),
    /// reusing the previous partial sums.
    void slide(const Fx& sample);

    // Test hook: perturb one stored entry.
    void inject_fault(std::uint32_t addr, std::int64_t delta) { entries_.at(addr) += delta; }

    friend bool operator==(const TcLut&, const TcLut&) = default;

private:
    int taps_ = 0;
    Format input_{};
    std::vector<std::int64_t> window_;
    std::vector<std::int64_t> entries_;
};

/**
 * Offset-binary DA table. Conceptually holds 1/2 * sum(c_i * window[i]) for
 * every sign vector c in {-1,+1}^k; only the half with c_{k-1} = +1 is stored,
 * the other half being its negation. Entries and d_initial are stored at
 * scale 2^-(F_x + 1) so the 1/2 factor stays exact.
 *
 * Signed address bits: bit i set means c_i = +1.
 */
class ObcLut {
public:
    ObcLut() = default;

    static ObcLut build(std::span<const Fx> window, int k, int max_bits = kMaxLutBits);

    int taps() const { return taps_; }
    Format input_format() const { return input_; }
    int frac() const { return input_.frac + 1; }
    std::span<const std::int64_t> entries() const { return entries_; }
    std::span<const std::int64_t> window() const { return window_; }
    /// -1/2 * sum(window), same scale as entries.
    std::int64_t d_initial() const { return d_initial_; }

    std::int64_t at(std::uint32_t signed_addr) const {
        const std::uint32_t low_mask = (std::uint32_t{1} << (taps_ - 1)) - 1;
        if ((signed_addr >> (taps_ - 1)) & 1u) return entries_[signed_addr & low_mask];
        return -entries_[~signed_addr & low_mask];
    }
    std::int64_t lookup(std::span<const std::int8_t> addr) const;

    void slide(const Fx& sample);

    void inject_fault(std::uint32_t addr, std::int64_t delta) { entries_.at(addr) += delta; }

    friend bool operator==(const ObcLut&, const ObcLut&) = default;

private:
    int taps_ = 0;
    Format input_{};
    std::vector<std::int64_t> window_;
    std::vector<std::int64_t> entries_;
    std::int64_t d_initial_ = 0;
};

/**
 * A bank of ceil(N/k) small tables covering N taps. Unit u serves taps
 * [u*k, u*k + k). The padded tail of the last unit still shifts samples
 * through; its taps always carry zero coefficients so they contribute nothing
 * to a filter output.
 */
class LutBank {
public:
    LutBank() = default;

    /// `window` holds between `taps` and padded_taps samples, newest first;
    /// missing tail samples are zero. Throws on k < 1, k > taps or k > max_bits.
    static LutBank build(std::span<const Fx> window, int taps, int k, Scheme scheme,
                         int max_bits = kMaxLutBits);

    Scheme scheme() const { return scheme_; }
    int lut_bits() const { return k_; }
    int taps() const { return taps_; }
    int padded_taps() const { return units() * k_; }
    int units() const { return units_; }
    int frac() const;
    Format input_format() const { return input_; }

    const std::vector<TcLut>& tc_units() const { return tc_; }
    const std::vector<ObcLut>& obc_units() const { return obc_; }
    std::vector<TcLut>& tc_units_mut() { return tc_; }
    std::vector<ObcLut>& obc_units_mut() { return obc_; }

    /// Full padded window, newest first.
    std::vector<std::int64_t> window() const;

    /// Sum over units of the unit lookup on its address slice. Addresses are
    /// padded_taps() long.
    std::int64_t lookup_tc(std::span<const std::uint8_t> addr) const;
    std::int64_t lookup_obc(std::span<const std::int8_t> addr) const;

    /// Sum of per-unit d_initial (OBC only).
    std::int64_t d_initial() const;

    void slide(const Fx& sample);

    friend bool operator==(const LutBank&, const LutBank&) = default;

private:
    Scheme scheme_ = Scheme::TC;
    int k_ = 0;
    int taps_ = 0;
    int units_ = 0;
    Format input_{};
    std::vector<TcLut> tc_;
    std::vector<ObcLut> obc_;
};

}  // namespace dafilt
