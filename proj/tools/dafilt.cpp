// dafilt: command-line driver for the DA adaptive filter library.
//
//   dafilt run    --config exp.cfg [--seed S] [--out curve.csv]
//   dafilt verify [--sweep small|full] [--inject-fault]
//   dafilt trace  --config exp.cfg --iters K --out trace.csv [--lut-out lut.csv]
//   dafilt cost   --scheme tc|obc|obc-eo --n N --b B [--k K] [--variant lms|dlms:D|blms:L]
//
// Exit status: 0 ok, 1 usage or configuration error, 2 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "dafilt/cost.hpp"
#include "dafilt/experiment.hpp"
#include "dafilt/trace.hpp"
#include "dafilt/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    return os;
}

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_run(const RunArgs& a) {
    dafilt::ExperimentConfig cfg = dafilt::load_config(a.config);
    if (a.seed) cfg.seed = *a.seed;
    if (!a.out.empty()) cfg.curve_out = a.out;
    cfg.validate();

    const dafilt::RunResult result = dafilt::run(cfg);
    if (cfg.curve_out.empty()) {
        dafilt::write_curve_csv(std::cout, result.curve);
    } else {
        auto os = open_out(cfg.curve_out);
        dafilt::write_curve_csv(os, result.curve);
    }

    const auto& c = result.curve;
    const std::size_t tail = std::min<std::size_t>(c.mse.size(), 1000);
    double ss = 0.0;
    for (std::size_t n = c.mse.size() - tail; n < c.mse.size(); ++n) ss += c.mse[n];
    ss /= static_cast<double>(tail);
    std::fprintf(stderr, "trials=%d iterations=%d steady_mse_db=%.3f noise_floor_db=%.3f coef_err_db: %.3f -> %.3f\n",
                 cfg.ensemble, cfg.iterations, 10.0 * std::log10(ss), 10.0 * std::log10(result.noise_floor),
                 c.coef_err_db.front(), c.coef_err_db.back());
    return kOk;
}

struct VerifyArgs {
    std::string sweep = "full";
    bool inject_fault = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> output_cases;
    std::optional<std::size_t> slide_shifts;
    std::optional<std::size_t> oracle_samples;
};

int cmd_verify(const VerifyArgs& a) {
    auto opts = dafilt::VerifyOptions::for_sweep(a.sweep == "small" ? dafilt::Sweep::Small : dafilt::Sweep::Full);
    opts.inject_fault = a.inject_fault;
    if (a.seed) opts.seed = *a.seed;
    if (a.output_cases) opts.output_cases = *a.output_cases;
    if (a.slide_shifts) opts.slide_shifts = *a.slide_shifts;
    if (a.oracle_samples) opts.oracle_samples = *a.oracle_samples;
    const dafilt::VerifyReport report = dafilt::verify(opts);
    dafilt::write_report(std::cout, report);
    return report.passed() ? kOk : kVerifyFailed;
}

struct TraceArgs {
    std::string config;
    int iters = 1;
    std::string out;
    std::string lut_out;
};

int cmd_trace(const TraceArgs& a) {
    dafilt::ExperimentConfig cfg = dafilt::load_config(a.config);
    const std::string out = a.out.empty() ? cfg.trace_out : a.out;
    const std::string lut_out = a.lut_out.empty() ? cfg.lut_out : a.lut_out;
    if (out.empty()) throw std::invalid_argument("trace: --out (or output.trace in the config) is required");

    auto os = open_out(out);
    const dafilt::TraceRun run = dafilt::run_trace(cfg, a.iters, os);
    if (!lut_out.empty()) {
        auto lut = open_out(lut_out);
        dafilt::write_lut_csv(lut, run.final_bank);
    }
    std::fprintf(stderr, "wrote %zu trace rows to %s\n", run.rows, out.c_str());
    return kOk;
}

struct CostArgs {
    std::string scheme = "tc";
    int n = 16;
    int b = 12;
    std::optional<int> k;
    std::string variant = "lms";
    std::string format = "table";
};

int cmd_cost(const CostArgs& a) {
    const dafilt::CostScheme scheme = dafilt::parse_cost_scheme(a.scheme);
    const dafilt::Variant variant = dafilt::Variant::parse(a.variant);
    std::vector<dafilt::CostReport> rows;
    if (a.k) {
        rows.push_back(dafilt::estimate(scheme, a.n, a.b, *a.k, variant));
    } else {
        const int min_k = scheme == dafilt::CostScheme::ObcEvenOdd ? 3 : 1;
        for (int k = min_k; k <= std::min(a.n, 62); ++k) rows.push_back(dafilt::estimate(scheme, a.n, a.b, k, variant));
    }
    if (a.format == "csv") {
        dafilt::write_cost_csv_header(std::cout);
        for (const auto& r : rows) dafilt::write_cost_csv_row(std::cout, r);
    } else {
        dafilt::write_cost_table(std::cout, rows);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bit-accurate distributed-arithmetic LMS adaptive filters"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Ensemble system-identification experiment");
    run->add_option("--config", run_args.config, "Experiment config file")->required();
    run->add_option("--seed", run_args.seed, "Override experiment.seed");
    run->add_option("--out", run_args.out, "Learning-curve CSV (default: stdout)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Oracle-equivalence suites");
    verify->add_option("--sweep", verify_args.sweep, "Sweep size")->check(CLI::IsMember({"small", "full"}));
    verify->add_flag("--inject-fault", verify_args.inject_fault, "Corrupt one TC LUT word per case");
    verify->add_option("--seed", verify_args.seed, "Sweep seed");
    verify->add_option("--output-cases", verify_args.output_cases, "Cases for TC exactness and OBC equivalence");
    verify->add_option("--slide-shifts", verify_args.slide_shifts, "Random LUT shifts checked against rebuilds");
    verify->add_option("--oracle-samples", verify_args.oracle_samples, "Samples per oracle trajectory");

    TraceArgs trace_args;
    auto* trace = app.add_subcommand("trace", "Per-cycle DA trace of one trial");
    trace->add_option("--config", trace_args.config, "Experiment config file")->required();
    trace->add_option("--iters", trace_args.iters, "Iterations to trace")->required()->check(CLI::PositiveNumber);
    trace->add_option("--out", trace_args.out, "Trace CSV");
    trace->add_option("--lut-out", trace_args.lut_out, "Final LUT contents CSV");

    CostArgs cost_args;
    auto* cost = app.add_subcommand("cost", "Architecture cost model");
    cost->add_option("--scheme", cost_args.scheme, "tc, obc or obc-eo");
    cost->add_option("--n", cost_args.n, "Taps");
    cost->add_option("--b", cost_args.b, "Coefficient bits");
    cost->add_option("--k", cost_args.k, "LUT address bits (omit to sweep)");
    cost->add_option("--variant", cost_args.variant, "lms, dlms:D or blms:L");
    cost->add_option("--format", cost_args.format, "Output format")->check(CLI::IsMember({"csv", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*run) return cmd_run(run_args);
        if (*verify) return cmd_verify(verify_args);
        if (*trace) return cmd_trace(trace_args);
        if (*cost) return cmd_cost(cost_args);
    } catch (const std::exception& e) {
        std::cerr << "dafilt: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
