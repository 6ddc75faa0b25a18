#pragma once

#include <cstddef>
#include <iosfwd>

#include "dafilt/da_filter.hpp"
#include "dafilt/experiment.hpp"
#include "dafilt/lut.hpp"

namespace dafilt {

// trace.csv: iter,cycle,addr_bits,lut_value,sign,acc
void write_trace_header(std::ostream& os);
void write_trace_rows(std::ostream& os, std::size_t iter, const CycleTrace& trace);

// LUT dump: unit,address,entry_mantissa,entry_real (all stored words of every unit).
void write_lut_csv(std::ostream& os, const LutBank& bank);

struct TraceRun {
    std::size_t rows = 0;
    LutBank final_bank;
};

/// Drive the first trial of `config` for `iters` iterations, writing one
/// trace row per cycle of every output.
TraceRun run_trace(const ExperimentConfig& config, int iters, std::ostream& trace_csv);

}  // namespace dafilt
