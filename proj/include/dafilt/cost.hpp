#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dafilt/lut.hpp"
#include "dafilt/variants.hpp"

namespace dafilt {

// Architecture-level accounting only: table words, adders, cycles.
enum class CostScheme {
    TC,
    OBC,
    ObcEvenOdd,  // OBC table split into even/odd halves; approximate
};

CostScheme parse_cost_scheme(const std::string& text);
const char* to_string(CostScheme s);
inline CostScheme cost_scheme(Scheme s) { return s == Scheme::TC ? CostScheme::TC : CostScheme::OBC; }

struct CostReport {
    CostScheme scheme = CostScheme::TC;
    int taps = 0;
    int coeff_bits = 0;
    int lut_bits = 0;
    Variant variant;

    std::uint64_t lut_units = 0;
    std::uint64_t words_per_unit = 0;
    std::uint64_t total_lut_words = 0;
    std::uint64_t lookup_adders = 0;      // per cycle, to sum the unit outputs
    std::uint64_t cycles_per_output = 0;  // bit-serial: one cycle per coefficient bit
    std::uint64_t outputs_per_update = 1;
    double updates_per_output = 1.0;
    std::uint64_t delay_registers = 0;
    bool approximate = false;
};

/// Throws std::invalid_argument unless 1 <= k <= N, k <= 62 and B >= 2.
CostReport estimate(CostScheme scheme, int taps, int coeff_bits, int lut_bits, const Variant& variant = {});

/// Words of a single undecomposed table over N taps (N <= 62).
std::uint64_t monolithic_words(CostScheme scheme, int taps);

void write_cost_csv_header(std::ostream& os);
void write_cost_csv_row(std::ostream& os, const CostReport& r);
void write_cost_table(std::ostream& os, const std::vector<CostReport>& rows);

}  // namespace dafilt
