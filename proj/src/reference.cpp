#include "dafilt/reference.hpp"

#include <algorithm>
#include <stdexcept>

namespace dafilt {

ReferenceLms::ReferenceLms(FilterConfig config, Variant variant, std::span<const Fx> coeffs)
    : cfg_(config), variant_(variant) {
    cfg_.validate();
    variant_.validate();
    if (coeffs.empty()) {
        coeffs_.assign(static_cast<std::size_t>(cfg_.taps), Fx(0, cfg_.coeff()));
    } else {
        if (coeffs.size() != static_cast<std::size_t>(cfg_.taps)) throw std::invalid_argument("reference: tap count mismatch");
        coeffs_.assign(coeffs.begin(), coeffs.end());
    }
    window_.assign(static_cast<std::size_t>(cfg_.taps), 0);
}

Fx ReferenceLms::output() const {
    Wide acc = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) acc += Wide{coeffs_[i].mantissa()} * window_[i];
    return requantize(acc, cfg_.coeff_bits - 1 + cfg_.input.frac, cfg_.output, cfg_.rounding);
}

StepResult ReferenceLms::step(const Fx& x, const Fx& d) {
    if (x.format() != cfg_.input) throw std::invalid_argument("reference: sample format mismatch");
    std::copy_backward(window_.begin(), window_.end() - 1, window_.end());
    window_[0] = x.mantissa();

    const Fx y = output();
    const int frac = std::max(d.frac_len(), y.frac_len());
    const Wide diff = Wide{d.mantissa()} * (Wide{1} << (frac - d.frac_len())) -
                      Wide{y.mantissa()} * (Wide{1} << (frac - y.frac_len()));
    const Fx e = requantize(diff, frac, cfg_.error, cfg_.rounding);

    pending_.push_back({e.mantissa(), window_});
    switch (variant_.kind) {
        case Variant::Kind::Lms: {
            const std::vector<Pending> batch{pending_.front()};
            pending_.clear();
            apply(batch);
            break;
        }
        case Variant::Kind::Dlms:
            if (pending_.size() > static_cast<std::size_t>(variant_.delay)) {
                const std::vector<Pending> batch{pending_.front()};
                pending_.pop_front();
                apply(batch);
            }
            break;
        case Variant::Kind::Blms:
            if (pending_.size() == static_cast<std::size_t>(variant_.block)) {
                const std::vector<Pending> batch(pending_.begin(), pending_.end());
                pending_.clear();
                apply(batch);
            }
            break;
    }
    return {y, e};
}

void ReferenceLms::apply(std::span<const Pending> batch) {
    ++updates_;
    const int coeff_frac = cfg_.coeff_bits - 1;
    const int grad_frac = cfg_.error.frac + cfg_.input.frac + cfg_.mu.frac;
    const int frac = std::max(coeff_frac, grad_frac);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        Wide grad = 0;
        for (const Pending& p : batch) grad += Wide{p.e} * p.x[i];
        if (grad == 0) continue;
        const Wide total = Wide{coeffs_[i].mantissa()} * (Wide{1} << (frac - coeff_frac)) +
                           Wide{cfg_.mu.mantissa} * grad * (Wide{1} << (frac - grad_frac));
        coeffs_[i] = requantize(total, frac, cfg_.coeff(), cfg_.rounding);
    }
}

std::vector<TrajectoryPoint> record_trajectory(AdaptiveFilter& filter, std::span<const Fx> x, std::span<const Fx> d) {
    if (x.size() != d.size()) throw std::invalid_argument("trajectory: x and d lengths differ");
    std::vector<TrajectoryPoint> out;
    out.reserve(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const StepResult r = filter.step(x[n], d[n]);
        TrajectoryPoint p{r.y, r.e, {}};
        const auto w = filter.coefficients();
        p.coeffs.reserve(w.size());
        for (const Fx& c : w) p.coeffs.push_back(c.mantissa());
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<TrajectoryPoint> reference_lms(const FilterConfig& config, const Variant& variant,
                                           std::span<const Fx> x, std::span<const Fx> d,
                                           std::span<const Fx> initial) {
    ReferenceLms ref(config, variant, initial);
    return record_trajectory(ref, x, d);
}

// ---------------------------------------------------------------------------

FloatLms::FloatLms(int taps, double mu, Variant variant)
    : mu_(mu), variant_(variant), w_(static_cast<std::size_t>(taps), 0.0), window_(static_cast<std::size_t>(taps), 0.0) {
    variant_.validate();
}

FloatLms::Step FloatLms::step(double x, double d) {
    std::copy_backward(window_.begin(), window_.end() - 1, window_.end());
    window_[0] = x;
    double y = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) y += w_[i] * window_[i];
    const double e = d - y;
    pending_.emplace_back(e, window_);

    auto apply = [&](std::size_t count) {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            double g = 0.0;
            for (std::size_t l = 0; l < count; ++l) g += pending_[l].first * pending_[l].second[i];
            w_[i] += mu_ * g;
        }
        pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(count));
    };
    switch (variant_.kind) {
        case Variant::Kind::Lms: apply(1); break;
        case Variant::Kind::Dlms:
            if (pending_.size() > static_cast<std::size_t>(variant_.delay)) apply(1);
            break;
        case Variant::Kind::Blms:
            if (pending_.size() == static_cast<std::size_t>(variant_.block)) apply(pending_.size());
            break;
    }
    return {y, e};
}

}  // namespace dafilt
