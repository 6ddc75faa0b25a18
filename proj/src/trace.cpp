#include "dafilt/trace.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dafilt/variants.hpp"

namespace dafilt {

namespace {

std::string address_bits(const CycleRecord& c, Scheme scheme) {
    std::string s;
    s.reserve(c.address.size());
    for (std::int8_t v : c.address) {
        if (scheme == Scheme::TC) s.push_back(v ? '1' : '0');
        else s.push_back(v > 0 ? '+' : '-');
    }
    return s;
}

}  // namespace

void write_trace_header(std::ostream& os) { os << "iter,cycle,addr_bits,lut_value,sign,acc\n"; }

void write_trace_rows(std::ostream& os, std::size_t iter, const CycleTrace& trace) {
    char buf[128];
    for (const CycleRecord& c : trace.cycles) {
        std::snprintf(buf, sizeof buf, ",%.17g,%d,%.17g\n", to_real(Wide{c.lut_value}, trace.lut_frac), c.sign,
                      to_real(c.accumulator, trace.acc_frac));
        os << iter << ',' << c.cycle << ',' << address_bits(c, trace.scheme) << buf;
    }
}

void write_lut_csv(std::ostream& os, const LutBank& bank) {
    os << "unit,address,entry_mantissa,entry_real\n";
    char buf[64];
    auto dump = [&](int unit, std::span<const std::int64_t> entries, int frac) {
        for (std::size_t a = 0; a < entries.size(); ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", to_real(Wide{entries[a]}, frac));
            os << unit << ',' << a << ',' << entries[a] << ',' << buf << '\n';
        }
    };
    for (int u = 0; u < bank.units(); ++u) {
        if (bank.scheme() == Scheme::TC) {
            dump(u, bank.tc_units()[static_cast<std::size_t>(u)].entries(), bank.frac());
        } else {
            dump(u, bank.obc_units()[static_cast<std::size_t>(u)].entries(), bank.frac());
        }
    }
}

TraceRun run_trace(const ExperimentConfig& config, int iters, std::ostream& trace_csv) {
    if (iters < 1) throw std::invalid_argument("trace: --iters must be positive");
    ExperimentConfig cfg = config;
    cfg.iterations = iters;
    cfg.validate();
    const TrialData data = generate_trial(cfg, cfg.trial_offset);

    auto filter = make_da_filter(cfg.filter, cfg.variant);
    filter->capture_traces(true);
    TraceRun out;
    write_trace_header(trace_csv);
    for (int n = 0; n < iters; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        filter->step(data.x[idx], data.d[idx]);
        write_trace_rows(trace_csv, idx, filter->last_trace());
        out.rows += filter->last_trace().cycles.size();
    }
    if (auto* lms = dynamic_cast<LmsFilter*>(filter.get())) out.final_bank = lms->inner().bank();
    else if (auto* dl = dynamic_cast<DlmsFilter*>(filter.get())) out.final_bank = dl->inner().bank();
    else if (auto* bl = dynamic_cast<BlmsFilter*>(filter.get())) out.final_bank = bl->inner().bank();
    return out;
}

}  // namespace dafilt
