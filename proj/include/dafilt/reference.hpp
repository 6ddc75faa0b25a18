#pragma once

#include <deque>
#include <span>
#include <vector>

#include "dafilt/da_filter.hpp"
#include "dafilt/variants.hpp"

namespace dafilt {

/**
 * Direct-form fixed-point LMS/DLMS/BLMS: plain multiply-accumulate output
 * and update, with the same quantization contract as the DA filters
 * (exact sums, one rounding into each destination format). This is the
 * bit-exact oracle the DA engines are checked against; it shares nothing
 * with them beyond the scalar rounding primitive.
 */
class ReferenceLms final : public AdaptiveFilter {
public:
    ReferenceLms(FilterConfig config, Variant variant, std::span<const Fx> coeffs = {});

    StepResult step(const Fx& x, const Fx& d) override;
    std::span<const Fx> coefficients() const override { return coeffs_; }
    std::size_t updates() const override { return updates_; }

    /// y for the current window, without adapting.
    Fx output() const;

private:
    struct Pending {
        std::int64_t e;
        std::vector<std::int64_t> x;
    };
    void apply(std::span<const Pending> batch);

    FilterConfig cfg_;
    Variant variant_;
    std::vector<Fx> coeffs_;
    std::vector<std::int64_t> window_;
    std::deque<Pending> pending_;
    std::size_t updates_ = 0;
};

/// One recorded iteration of a fixed-point trajectory.
struct TrajectoryPoint {
    Fx y;
    Fx e;
    std::vector<std::int64_t> coeffs;  // mantissas after the iteration
};

/// Drive `filter` over the stream and record every iteration.
std::vector<TrajectoryPoint> record_trajectory(AdaptiveFilter& filter, std::span<const Fx> x, std::span<const Fx> d);

/// reference_lms: run the direct-form oracle over a stream.
std::vector<TrajectoryPoint> reference_lms(const FilterConfig& config, const Variant& variant,
                                           std::span<const Fx> x, std::span<const Fx> d,
                                           std::span<const Fx> initial = {});

/// Unquantized double-precision twin of the same adaptive loop.
class FloatLms {
public:
    FloatLms(int taps, double mu, Variant variant);

    struct Step {
        double y;
        double e;
    };
    Step step(double x, double d);
    const std::vector<double>& coefficients() const { return w_; }

private:
    double mu_;
    Variant variant_;
    std::vector<double> w_;
    std::vector<double> window_;
    std::deque<std::pair<double, std::vector<double>>> pending_;
};

}  // namespace dafilt
