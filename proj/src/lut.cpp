#include "dafilt/lut.hpp"

#include <bit>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace dafilt {

const char* to_string(Scheme s) { return s == Scheme::TC ? "tc" : "obc"; }

Scheme parse_scheme(const char* text) {
    if (std::strcmp(text, "tc") == 0 || std::strcmp(text, "TC") == 0) return Scheme::TC;
    if (std::strcmp(text, "obc") == 0 || std::strcmp(text, "OBC") == 0) return Scheme::OBC;
    throw std::invalid_argument(std::string("unknown scheme '") + text + "' (expected tc|obc)");
}

namespace {

// Input words wider than this could overflow 64-bit entries at k = 16.
constexpr int kMaxInputWord = 48;

Format check_window(std::span<const Fx> window, int k, int max_bits) {
    if (max_bits < 1 || max_bits > kMaxLutBits) {
        throw std::invalid_argument("LUT bit limit must be in [1, 16]");
    }
    if (k < 1 || k > max_bits) {
        std::ostringstream msg;
        msg << "LUT size k=" << k << " outside [1, " << max_bits << "]";
        throw std::invalid_argument(msg.str());
    }
    if (window.size() != static_cast<std::size_t>(k)) {
        std::ostringstream msg;
        msg << "LUT window has " << window.size() << " samples, expected " << k;
        throw std::invalid_argument(msg.str());
    }
    const Format fmt = window[0].format();
    for (const Fx& x : window) {
        if (x.format() != fmt) throw std::invalid_argument("LUT window samples must share one format");
    }
    if (fmt.word > kMaxInputWord) throw std::invalid_argument("LUT input word length exceeds 48 bits");
    return fmt;
}

void check_sample(const Fx& x, Format fmt) {
    if (x.format() != fmt) throw std::invalid_argument("slide: sample format differs from table format");
}

}  // namespace

// ---------------------------------------------------------------------------

TcLut TcLut::build(std::span<const Fx> window, int k, int max_bits) {
    TcLut lut;
    lut.input_ = check_window(window, k, max_bits);
    lut.taps_ = k;
    lut.window_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) lut.window_[static_cast<std::size_t>(i)] = window[static_cast<std::size_t>(i)].mantissa();

    const std::uint32_t size = std::uint32_t{1} << k;
    lut.entries_.assign(size, 0);
    for (std::uint32_t a = 1; a < size; ++a) {
        const int low = std::countr_zero(a);
        lut.entries_[a] = lut.entries_[a & (a - 1)] + lut.window_[static_cast<std::size_t>(low)];
    }
    return lut;
}

std::int64_t TcLut::lookup(std::span<const std::uint8_t> addr) const {
    if (addr.size() != static_cast<std::size_t>(taps_)) {
        throw std::invalid_argument("lookup_tc: address length does not match table size");
    }
    std::uint32_t a = 0;
    for (int i = 0; i < taps_; ++i) a |= static_cast<std::uint32_t>(addr[static_cast<std::size_t>(i)] & 1u) << i;
    return entries_[a];
}

void TcLut::slide(const Fx& sample) {
    check_sample(sample, input_);
    // New window is [sample, w0 .. w_{k-2}]. Entries that skip the oldest
    // sample (the lower half) carry over shifted up by one address bit:
    //   new[2m] = old[m], new[2m+1] = old[m] + sample.
    // Walking m downward never overwrites an old[m] still to be read.
    const std::int64_t x = sample.mantissa();
    const std::uint32_t half = std::uint32_t{1} << (taps_ - 1);
    for (std::uint32_t m = half; m-- > 0;) {
        const std::int64_t prev = entries_[m];
        entries_[2 * m] = prev;
        entries_[2 * m + 1] = prev + x;
    }
    for (std::size_t i = window_.size() - 1; i > 0; --i) window_[i] = window_[i - 1];
    window_[0] = x;
}

// ---------------------------------------------------------------------------

ObcLut ObcLut::build(std::span<const Fx> window, int k, int max_bits) {
    ObcLut lut;
    lut.input_ = check_window(window, k, max_bits);
    lut.taps_ = k;
    lut.window_.resize(static_cast<std::size_t>(k));
    std::int64_t total = 0;
    for (int i = 0; i < k; ++i) {
        lut.window_[static_cast<std::size_t>(i)] = window[static_cast<std::size_t>(i)].mantissa();
        total += lut.window_[static_cast<std::size_t>(i)];
    }
    lut.d_initial_ = -total;

    // At scale 2^-(F+1) the stored value for sign vector c is sum(c_i * x_i).
    // Address 0 means c = (-1, .., -1, +1); setting bit i flips c_i to +1.
    const std::uint32_t size = std::uint32_t{1} << (k - 1);
    lut.entries_.assign(size, 0);
    lut.entries_[0] = 2 * lut.window_[static_cast<std::size_t>(k - 1)] - total;
    for (std::uint32_t a = 1; a < size; ++a) {
        const int low = std::countr_zero(a);
        lut.entries_[a] = lut.entries_[a & (a - 1)] + 2 * lut.window_[static_cast<std::size_t>(low)];
    }
    return lut;
}

std::int64_t ObcLut::lookup(std::span<const std::int8_t> addr) const {
    if (addr.size() != static_cast<std::size_t>(taps_)) {
        throw std::invalid_argument("lookup_obc: address length does not match table size");
    }
    std::uint32_t a = 0;
    for (int i = 0; i < taps_; ++i) {
        const std::int8_t c = addr[static_cast<std::size_t>(i)];
        if (c != 1 && c != -1) throw std::invalid_argument("lookup_obc: address entries must be +1 or -1");
        if (c > 0) a |= std::uint32_t{1} << i;
    }
    return at(a);
}

void ObcLut::slide(const Fx& sample) {
    check_sample(sample, input_);
    const std::int64_t x = sample.mantissa();
    const std::int64_t oldest = window_.back();
    if (taps_ == 1) {
        entries_[0] = x;
    } else {
        // New sign vector c' = (c'_0, c_0 .. c_{k-2}) with c'_{k-1} = c_{k-2} = +1.
        // Reuse the stored half whose old top-but-one bit is set, drop the
        // oldest sample and add +/- the newest:
        //   even: old - (oldest + x), odd: old + (x - oldest).
        const std::uint32_t size = std::uint32_t{1} << (taps_ - 1);
        const std::uint32_t carry = std::uint32_t{1} << (taps_ - 2);
        std::vector<std::int64_t> next(size);
        for (std::uint32_t m = 0; m < size / 2; ++m) {
            const std::int64_t prev = entries_[m | carry];
            next[2 * m] = prev - oldest - x;
            next[2 * m + 1] = prev - oldest + x;
        }
        entries_ = std::move(next);
    }
    d_initial_ += oldest - x;
    for (std::size_t i = window_.size() - 1; i > 0; --i) window_[i] = window_[i - 1];
    window_[0] = x;
}

// ---------------------------------------------------------------------------

LutBank LutBank::build(std::span<const Fx> window, int taps, int k, Scheme scheme, int max_bits) {
    if (taps < 1) throw std::invalid_argument("bank_build: need at least one tap");
    if (k < 1 || k > taps) {
        std::ostringstream msg;
        msg << "bank_build: LUT size k=" << k << " must satisfy 1 <= k <= N=" << taps;
        throw std::invalid_argument(msg.str());
    }
    LutBank bank;
    bank.scheme_ = scheme;
    bank.k_ = k;
    bank.taps_ = taps;
    bank.units_ = (taps + k - 1) / k;
    const auto padded = static_cast<std::size_t>(bank.units_ * k);
    if (window.size() < static_cast<std::size_t>(taps) || window.size() > padded) {
        throw std::invalid_argument("bank_build: window length must be between N and the padded tap count");
    }
    bank.input_ = window[0].format();

    std::vector<Fx> full(window.begin(), window.end());
    full.resize(padded, Fx(0, bank.input_));

    for (int u = 0; u < bank.units_; ++u) {
        const std::span<const Fx> slice(full.data() + static_cast<std::size_t>(u * k), static_cast<std::size_t>(k));
        if (scheme == Scheme::TC) {
            bank.tc_.push_back(TcLut::build(slice, k, max_bits));
        } else {
            bank.obc_.push_back(ObcLut::build(slice, k, max_bits));
        }
    }
    return bank;
}

int LutBank::frac() const { return scheme_ == Scheme::TC ? input_.frac : input_.frac + 1; }

std::vector<std::int64_t> LutBank::window() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(padded_taps()));
    for (int u = 0; u < units_; ++u) {
        const auto w = scheme_ == Scheme::TC ? tc_[static_cast<std::size_t>(u)].window()
                                             : obc_[static_cast<std::size_t>(u)].window();
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

std::int64_t LutBank::lookup_tc(std::span<const std::uint8_t> addr) const {
    if (scheme_ != Scheme::TC) throw std::logic_error("lookup_tc on an OBC bank");
    if (addr.size() != static_cast<std::size_t>(padded_taps())) {
        throw std::invalid_argument("bank_lookup: address length does not match padded tap count");
    }
    std::int64_t sum = 0;
    for (int u = 0; u < units_; ++u) {
        sum += tc_[static_cast<std::size_t>(u)].lookup(addr.subspan(static_cast<std::size_t>(u * k_), static_cast<std::size_t>(k_)));
    }
    return sum;
}

std::int64_t LutBank::lookup_obc(std::span<const std::int8_t> addr) const {
    if (scheme_ != Scheme::OBC) throw std::logic_error("lookup_obc on a TC bank");
    if (addr.size() != static_cast<std::size_t>(padded_taps())) {
        throw std::invalid_argument("bank_lookup: address length does not match padded tap count");
    }
    std::int64_t sum = 0;
    for (int u = 0; u < units_; ++u) {
        sum += obc_[static_cast<std::size_t>(u)].lookup(addr.subspan(static_cast<std::size_t>(u * k_), static_cast<std::size_t>(k_)));
    }
    return sum;
}

std::int64_t LutBank::d_initial() const {
    if (scheme_ != Scheme::OBC) throw std::logic_error("d_initial on a TC bank");
    std::int64_t sum = 0;
    for (const auto& u : obc_) sum += u.d_initial();
    return sum;
}

void LutBank::slide(const Fx& sample) {
    // Each unit hands its oldest sample to the next unit.
    Fx carry = sample;
    for (int u = 0; u < units_; ++u) {
        const auto idx = static_cast<std::size_t>(u);
        const std::int64_t oldest = scheme_ == Scheme::TC ? tc_[idx].window().back() : obc_[idx].window().back();
        if (scheme_ == Scheme::TC) {
            tc_[idx].slide(carry);
        } else {
            obc_[idx].slide(carry);
        }
        carry = Fx(oldest, input_);
    }
}

}  // namespace dafilt
