#include "dafilt/variants.hpp"

#include <sstream>
#include <stdexcept>

namespace dafilt {

Variant Variant::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    int arg = -1;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            arg = std::stoi(text.substr(colon + 1), &used);
            if (used != text.size() - colon - 1) arg = -1;
        } catch (const std::exception&) {
            arg = -1;
        }
        if (arg < 0) throw std::invalid_argument("bad variant parameter in '" + text + "'");
    }
    Variant v;
    if (name == "lms") {
        if (colon != std::string::npos) throw std::invalid_argument("lms takes no parameter");
        v = lms();
    } else if (name == "dlms") {
        v = dlms(colon == std::string::npos ? 1 : arg);
    } else if (name == "blms") {
        v = blms(colon == std::string::npos ? 1 : arg);
    } else {
        throw std::invalid_argument("unknown variant '" + text + "' (expected lms, dlms:D or blms:L)");
    }
    v.validate();
    return v;
}

std::string Variant::to_string() const {
    switch (kind) {
        case Kind::Lms: return "lms";
        case Kind::Dlms: return "dlms:" + std::to_string(delay);
        case Kind::Blms: return "blms:" + std::to_string(block);
    }
    return "lms";
}

void Variant::validate() const {
    if (delay < 0) throw std::invalid_argument("DLMS delay must be >= 0");
    if (block < 1) throw std::invalid_argument("BLMS block length must be >= 1");
}

Fx AdaptiveFilter::traced_output(const DaFilter& inner) {
    if (!capture_) return inner.output().y;
    Output out = inner.output(true);
    last_trace_ = std::move(out.trace);
    return out.y;
}

StepResult LmsFilter::step(const Fx& x, const Fx& d) {
    inner_.shift_in(x);
    const Fx y = traced_output(inner_);
    const Fx e = inner_.form_error(d, y);
    inner_.update(e, inner_.window().first(static_cast<std::size_t>(inner_.config().taps)));
    ++updates_;
    return {y, e};
}

DlmsFilter::DlmsFilter(DaFilter inner, int delay) : inner_(std::move(inner)), delay_(delay) {
    if (delay < 0) throw std::invalid_argument("DLMS delay must be >= 0");
}

StepResult DlmsFilter::step(const Fx& x, const Fx& d) {
    inner_.shift_in(x);
    const Fx y = traced_output(inner_);
    const Fx e = inner_.form_error(d, y);
    pipe_.push_back({e, inner_.window_snapshot()});
    if (pipe_.size() > static_cast<std::size_t>(delay_)) {
        const ErrorSample due = std::move(pipe_.front());
        pipe_.pop_front();
        inner_.update(std::span<const ErrorSample>(&due, 1));
        ++updates_;
    }
    return {y, e};
}

BlmsFilter::BlmsFilter(DaFilter inner, int block) : inner_(std::move(inner)), block_(block) {
    if (block < 1) throw std::invalid_argument("BLMS block length must be >= 1");
    buffer_.reserve(static_cast<std::size_t>(block));
}

StepResult BlmsFilter::step(const Fx& x, const Fx& d) {
    inner_.shift_in(x);
    const Fx y = traced_output(inner_);
    const Fx e = inner_.form_error(d, y);
    buffer_.push_back({e, inner_.window_snapshot()});
    if (buffer_.size() == static_cast<std::size_t>(block_)) {
        inner_.update(buffer_);
        buffer_.clear();
        ++updates_;
    }
    return {y, e};
}

BlockResult BlmsFilter::step_block(std::span<const Fx> x_block, std::span<const Fx> d_block) {
    if (x_block.size() != static_cast<std::size_t>(block_) || d_block.size() != static_cast<std::size_t>(block_)) {
        std::ostringstream msg;
        msg << "blms_step: expected blocks of " << block_ << " samples, got " << x_block.size() << " and "
            << d_block.size();
        throw std::invalid_argument(msg.str());
    }
    if (!buffer_.empty()) throw std::logic_error("blms_step: a partial block is pending");
    BlockResult out;
    out.y.reserve(x_block.size());
    out.e.reserve(x_block.size());
    for (std::size_t l = 0; l < x_block.size(); ++l) {
        const StepResult r = step(x_block[l], d_block[l]);
        out.y.push_back(r.y);
        out.e.push_back(r.e);
    }
    return out;
}

std::unique_ptr<AdaptiveFilter> make_da_filter(const FilterConfig& config, const Variant& variant,
                                               std::span<const Fx> coeffs) {
    variant.validate();
    DaFilter inner = coeffs.empty() ? DaFilter(config) : DaFilter(config, coeffs);
    switch (variant.kind) {
        case Variant::Kind::Lms: return std::make_unique<LmsFilter>(std::move(inner));
        case Variant::Kind::Dlms: return std::make_unique<DlmsFilter>(std::move(inner), variant.delay);
        case Variant::Kind::Blms: return std::make_unique<BlmsFilter>(std::move(inner), variant.block);
    }
    throw std::invalid_argument("unknown variant");
}

}  // namespace dafilt
