#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dafilt {

enum class Sweep { Small, Full };

struct VerifyOptions {
    std::uint64_t seed = 0x5eedda1f;
    std::size_t output_cases = 100000;      // TC exactness and OBC equivalence
    std::size_t lut_windows = 8;            // random windows per k for exhaustive LUT identities
    std::size_t slide_shifts = 10000;
    std::size_t bank_windows = 16;          // per (N, k)
    std::size_t bank_addresses = 256;       // per window
    std::size_t degeneracy_samples = 10000;
    std::size_t oracle_samples = 10000;     // per (scheme, variant, refresh)
    int reconstruction_max_bits = 10;
    int cost_max_taps = 32;
    bool inject_fault = false;              // corrupt one TC LUT word per case (sanity hook)

    static VerifyOptions for_sweep(Sweep sweep);
};

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string counterexample;  // first (shrunk) failing case
    double seconds = 0.0;

    bool passed() const { return failures == 0 && cases > 0; }
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool passed() const;
};

SuiteResult verify_reconstruction(const VerifyOptions& opts);
SuiteResult verify_tc_exactness(const VerifyOptions& opts);
SuiteResult verify_obc_equivalence(const VerifyOptions& opts);
SuiteResult verify_lut_identities(const VerifyOptions& opts);
SuiteResult verify_slide_rebuild(const VerifyOptions& opts);
SuiteResult verify_bank_monolithic(const VerifyOptions& opts);
SuiteResult verify_degeneracies(const VerifyOptions& opts);
SuiteResult verify_oracle_trajectories(const VerifyOptions& opts);
SuiteResult verify_cost_relations(const VerifyOptions& opts);

/// Every suite above, in that order.
VerifyReport verify(const VerifyOptions& opts);

void write_report(std::ostream& os, const VerifyReport& report);

}  // namespace dafilt
