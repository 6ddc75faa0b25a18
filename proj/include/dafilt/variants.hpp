#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dafilt/da_filter.hpp"

namespace dafilt {

struct Variant {
    enum class Kind { Lms, Dlms, Blms };
    Kind kind = Kind::Lms;
    int delay = 0;  // DLMS pipeline depth D
    int block = 1;  // BLMS block length L

    static Variant lms() { return {}; }
    static Variant dlms(int d) { return {Kind::Dlms, d, 1}; }
    static Variant blms(int l) { return {Kind::Blms, 0, l}; }

    /// Parses "lms", "dlms:D" or "blms:L".
    static Variant parse(const std::string& text);
    std::string to_string() const;
    void validate() const;
};

/// Common driving surface for the DA filters and the direct-form oracle.
class AdaptiveFilter {
public:
    virtual ~AdaptiveFilter() = default;
    virtual StepResult step(const Fx& x, const Fx& d) = 0;
    virtual std::span<const Fx> coefficients() const = 0;
    virtual std::size_t updates() const = 0;

    /// When enabled, DA filters keep the cycle trace of their latest output.
    void capture_traces(bool on) { capture_ = on; }
    const CycleTrace& last_trace() const { return last_trace_; }

protected:
    Fx traced_output(const DaFilter& inner);

private:
    bool capture_ = false;
    CycleTrace last_trace_;
};

class LmsFilter final : public AdaptiveFilter {
public:
    explicit LmsFilter(DaFilter inner) : inner_(std::move(inner)) {}

    StepResult step(const Fx& x, const Fx& d) override;
    std::span<const Fx> coefficients() const override { return inner_.coefficients(); }
    std::size_t updates() const override { return updates_; }

    const DaFilter& inner() const { return inner_; }
    DaFilter& inner() { return inner_; }

private:
    DaFilter inner_;
    std::size_t updates_ = 0;
};

/**
 * Delayed LMS: the update applied at iteration n uses the error and input
 * window of iteration n - D. Nothing is applied until the pipe fills.
 */
class DlmsFilter final : public AdaptiveFilter {
public:
    DlmsFilter(DaFilter inner, int delay);

    StepResult step(const Fx& x, const Fx& d) override;
    std::span<const Fx> coefficients() const override { return inner_.coefficients(); }
    std::size_t updates() const override { return updates_; }

    int delay() const { return delay_; }
    std::size_t pending() const { return pipe_.size(); }
    const DaFilter& inner() const { return inner_; }

private:
    DaFilter inner_;
    int delay_;
    std::deque<ErrorSample> pipe_;
    std::size_t updates_ = 0;
};

struct BlockResult {
    std::vector<Fx> y;
    std::vector<Fx> e;
};

/**
 * Block LMS: L outputs share one coefficient vector, then a single update
 * w <- w + mu * sum_l e_l x_l. The gradient is the plain block sum.
 */
class BlmsFilter final : public AdaptiveFilter {
public:
    BlmsFilter(DaFilter inner, int block);

    /// Throws std::invalid_argument unless both blocks hold exactly L samples.
    BlockResult step_block(std::span<const Fx> x_block, std::span<const Fx> d_block);

    /// Sample-at-a-time form; updates when the block buffer fills.
    StepResult step(const Fx& x, const Fx& d) override;
    std::span<const Fx> coefficients() const override { return inner_.coefficients(); }
    std::size_t updates() const override { return updates_; }

    int block() const { return block_; }
    std::size_t buffered() const { return buffer_.size(); }
    const DaFilter& inner() const { return inner_; }

private:
    DaFilter inner_;
    int block_;
    std::vector<ErrorSample> buffer_;
    std::size_t updates_ = 0;
};

std::unique_ptr<AdaptiveFilter> make_da_filter(const FilterConfig& config, const Variant& variant,
                                               std::span<const Fx> coeffs = {});

}  // namespace dafilt
