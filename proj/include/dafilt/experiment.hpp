#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dafilt/da_filter.hpp"
#include "dafilt/variants.hpp"

namespace dafilt {

enum class InputModel { White, Ar1 };
enum class Engine { Da, Reference, Float };

struct ExperimentConfig {
    FilterConfig filter;
    Variant variant;

    // Plant: random uniform coefficients, or an explicit list (plant_file / plant_coeffs).
    std::string plant_file;
    std::vector<double> plant_coeffs;

    InputModel input = InputModel::White;
    double ar1_rho = 0.9;
    double input_std = 1.0;
    double snr_db = 30.0;  // +inf disables observation noise

    int iterations = 5000;
    int ensemble = 100;
    int trial_offset = 0;  // first trial index; substreams are keyed by absolute index
    std::uint64_t seed = 1;
    int threads = 0;       // 0 = hardware concurrency
    Engine engine = Engine::Da;

    std::string curve_out;
    std::string trace_out;
    std::string lut_out;

    /// Throws std::invalid_argument with a diagnostic for unusable settings.
    void validate() const;
};

/**
 * Parses the flat key/value experiment file. Lines are `key = value`,
 * `#` starts a comment and `[section]` headers prefix the keys that follow
 * (`[filter]` + `taps = 8` sets `filter.taps`). Unknown keys are errors.
 */
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Apply one `section.key = value` setting.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct LearningCurve {
    std::vector<double> mse;
    std::vector<double> mse_db;
    std::vector<double> coef_err;
    std::vector<double> coef_err_db;
};

struct TrialOutcome {
    std::vector<double> plant;
    std::vector<double> final_coeffs;
    double signal_power = 0.0;  // plant output power
    double noise_power = 0.0;   // injected noise variance
    double measured_snr_db = 0.0;
};

struct RunResult {
    LearningCurve curve;
    std::vector<TrialOutcome> trials;
    double noise_floor = 0.0;  // mean injected noise variance
};

/// Generated signals of one trial, before any filter touches them.
struct TrialData {
    std::vector<Fx> plant;
    std::vector<Fx> x;
    std::vector<Fx> d;
    std::vector<double> clean;  // noiseless plant output
    std::vector<double> noise;
    double noise_power = 0.0;
};

/// Deterministic in (config.seed, trial).
TrialData generate_trial(const ExperimentConfig& config, int trial);

RunResult run(const ExperimentConfig& config);

void write_curve_csv(std::ostream& os, const LearningCurve& curve);
std::string curve_csv(const LearningCurve& curve);

}  // namespace dafilt
