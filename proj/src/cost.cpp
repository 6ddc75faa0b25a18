#include "dafilt/cost.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dafilt {

CostScheme parse_cost_scheme(const std::string& text) {
    if (text == "tc" || text == "TC") return CostScheme::TC;
    if (text == "obc" || text == "OBC") return CostScheme::OBC;
    if (text == "obc-eo" || text == "obc_even_odd") return CostScheme::ObcEvenOdd;
    throw std::invalid_argument("unknown scheme '" + text + "' (expected tc, obc or obc-eo)");
}

const char* to_string(CostScheme s) {
    switch (s) {
        case CostScheme::TC: return "tc";
        case CostScheme::OBC: return "obc";
        case CostScheme::ObcEvenOdd: return "obc-eo";
    }
    return "?";
}

std::uint64_t monolithic_words(CostScheme scheme, int taps) {
    if (taps < 1 || taps > 62) throw std::invalid_argument("monolithic table needs 1 <= N <= 62");
    return estimate(scheme, taps, 2, taps).words_per_unit;
}

CostReport estimate(CostScheme scheme, int taps, int coeff_bits, int lut_bits, const Variant& variant) {
    if (taps < 1 || lut_bits < 1 || lut_bits > taps || lut_bits > 62) {
        std::ostringstream msg;
        msg << "cost estimate needs 1 <= k <= N (and k <= 62), got N=" << taps << " k=" << lut_bits;
        throw std::invalid_argument(msg.str());
    }
    if (coeff_bits < 2) throw std::invalid_argument("cost estimate needs B >= 2");
    if (scheme == CostScheme::ObcEvenOdd && lut_bits < 3) {
        throw std::invalid_argument("even/odd OBC split needs k >= 3");
    }
    variant.validate();

    CostReport r;
    r.scheme = scheme;
    r.taps = taps;
    r.coeff_bits = coeff_bits;
    r.lut_bits = lut_bits;
    r.variant = variant;

    const auto units = static_cast<std::uint64_t>((taps + lut_bits - 1) / lut_bits);
    switch (scheme) {
        case CostScheme::TC:
            r.lut_units = units;
            r.words_per_unit = std::uint64_t{1} << lut_bits;
            break;
        case CostScheme::OBC:
            r.lut_units = units;
            r.words_per_unit = std::uint64_t{1} << (lut_bits - 1);
            break;
        case CostScheme::ObcEvenOdd:
            // Two tables of 2^(k-3) words per unit: a quarter of TC.
            r.lut_units = 2 * units;
            r.words_per_unit = std::uint64_t{1} << (lut_bits - 3);
            r.approximate = true;
            break;
    }
    r.total_lut_words = r.lut_units * r.words_per_unit;
    r.lookup_adders = units - 1;
    r.cycles_per_output = static_cast<std::uint64_t>(coeff_bits);

    if (variant.kind == Variant::Kind::Blms) {
        r.outputs_per_update = static_cast<std::uint64_t>(variant.block);
        r.updates_per_output = 1.0 / variant.block;
    }
    if (variant.kind == Variant::Kind::Dlms) r.delay_registers = static_cast<std::uint64_t>(variant.delay);
    return r;
}

void write_cost_csv_header(std::ostream& os) {
    os << "scheme,variant,n,b,k,lut_units,words_per_unit,total_lut_words,lookup_adders,"
          "cycles_per_output,outputs_per_update,delay_registers,approximate\n";
}

void write_cost_csv_row(std::ostream& os, const CostReport& r) {
    os << to_string(r.scheme) << ',' << r.variant.to_string() << ',' << r.taps << ',' << r.coeff_bits << ','
       << r.lut_bits << ',' << r.lut_units << ',' << r.words_per_unit << ',' << r.total_lut_words << ','
       << r.lookup_adders << ',' << r.cycles_per_output << ',' << r.outputs_per_update << ','
       << r.delay_registers << ',' << (r.approximate ? 1 : 0) << '\n';
}

void write_cost_table(std::ostream& os, const std::vector<CostReport>& rows) {
    os << std::left << std::setw(8) << "scheme" << std::setw(9) << "variant" << std::right << std::setw(5) << "N"
       << std::setw(4) << "B" << std::setw(4) << "k" << std::setw(7) << "units" << std::setw(12) << "words/unit"
       << std::setw(13) << "total words" << std::setw(8) << "adders" << std::setw(8) << "cycles"
       << std::setw(9) << "out/upd" << std::setw(7) << "delay" << '\n';
    for (const auto& r : rows) {
        os << std::left << std::setw(8) << to_string(r.scheme) << std::setw(9) << r.variant.to_string()
           << std::right << std::setw(5) << r.taps << std::setw(4) << r.coeff_bits << std::setw(4) << r.lut_bits
           << std::setw(7) << r.lut_units << std::setw(12) << r.words_per_unit << std::setw(13)
           << r.total_lut_words << std::setw(8) << r.lookup_adders << std::setw(8) << r.cycles_per_output
           << std::setw(9) << r.outputs_per_update << std::setw(7) << r.delay_registers
           << (r.approximate ? "  (approx)" : "") << '\n';
    }
}

}  // namespace dafilt
