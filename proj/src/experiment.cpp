#include "dafilt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dafilt/reference.hpp"
#include "dafilt/rng.hpp"

namespace dafilt {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long n = std::stoll(v, &used, 0);
        if (used == v.size() && n >= INT32_MIN && n <= INT32_MAX) return static_cast<int>(n);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + v + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const unsigned long long n = std::stoull(v, &used, 0);
        if (used == v.size() && v.find('-') == std::string::npos) return n;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: '" + key + "' expects an unsigned integer, got '" + v + "'");
}

double to_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "+inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
}

std::vector<double> read_plant_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open plant file '" + path + "'");
    std::vector<double> out;
    std::string token;
    while (in >> token) {
        if (token[0] == '#') {
            std::getline(in, token);
            continue;
        }
        for (char& c : token) {
            if (c == ',') c = ' ';
        }
        std::istringstream parts(token);
        double v = 0.0;
        while (parts >> v) out.push_back(v);
    }
    return out;
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    FilterConfig& f = cfg.filter;
    if (key == "filter.taps") f.taps = to_int(key, value);
    else if (key == "filter.coeff_bits") f.coeff_bits = to_int(key, value);
    else if (key == "filter.lut_bits") f.lut_bits = to_int(key, value);
    else if (key == "filter.scheme") f.scheme = parse_scheme(value.c_str());
    else if (key == "filter.refresh") {
        if (value == "slide") f.refresh = RefreshPolicy::Slide;
        else if (value == "rebuild") f.refresh = RefreshPolicy::Rebuild;
        else throw std::invalid_argument("config: filter.refresh must be slide or rebuild");
    } else if (key == "filter.rounding") {
        if (value == "nearest") f.rounding = Rounding::Nearest;
        else if (value == "truncate") f.rounding = Rounding::Truncate;
        else throw std::invalid_argument("config: filter.rounding must be nearest or truncate");
    }
    else if (key == "format.input_word") f.input.word = to_int(key, value);
    else if (key == "format.input_frac") f.input.frac = to_int(key, value);
    else if (key == "format.output_word") f.output.word = to_int(key, value);
    else if (key == "format.output_frac") f.output.frac = to_int(key, value);
    else if (key == "format.error_word") f.error.word = to_int(key, value);
    else if (key == "format.error_frac") f.error.frac = to_int(key, value);
    else if (key == "adapt.variant") cfg.variant = Variant::parse(value);
    else if (key == "adapt.mu_shift") f.mu = StepSize::shift(to_int(key, value));
    else if (key == "adapt.mu_frac") f.mu.frac = to_int(key, value);
    else if (key == "adapt.mu") f.mu = StepSize::from_real(to_double(key, value), f.mu.frac);
    else if (key == "experiment.plant") {
        if (value == "random") cfg.plant_file.clear();
        else cfg.plant_file = value;
    }
    else if (key == "experiment.input") {
        if (value == "white") cfg.input = InputModel::White;
        else if (value == "ar1") cfg.input = InputModel::Ar1;
        else throw std::invalid_argument("config: experiment.input must be white or ar1");
    }
    else if (key == "experiment.ar1_rho") cfg.ar1_rho = to_double(key, value);
    else if (key == "experiment.input_std") cfg.input_std = to_double(key, value);
    else if (key == "experiment.snr_db") cfg.snr_db = to_double(key, value);
    else if (key == "experiment.iterations") cfg.iterations = to_int(key, value);
    else if (key == "experiment.ensemble") cfg.ensemble = to_int(key, value);
    else if (key == "experiment.trial_offset") cfg.trial_offset = to_int(key, value);
    else if (key == "experiment.seed") cfg.seed = to_u64(key, value);
    else if (key == "experiment.threads") cfg.threads = to_int(key, value);
    else if (key == "experiment.engine") {
        if (value == "da") cfg.engine = Engine::Da;
        else if (value == "reference") cfg.engine = Engine::Reference;
        else if (value == "float") cfg.engine = Engine::Float;
        else throw std::invalid_argument("config: experiment.engine must be da, reference or float");
    }
    else if (key == "output.curve") cfg.curve_out = value;
    else if (key == "output.trace") cfg.trace_out = value;
    else if (key == "output.lut") cfg.lut_out = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string section;
    std::string line;
    int lineno = 0;
    // adapt.mu is applied after mu_frac.
    std::string mu_real;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
        try {
            if (key == "adapt.mu") {
                mu_real = value;
            } else {
                apply_setting(cfg, key, value);
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!mu_real.empty()) apply_setting(cfg, "adapt.mu", mu_real);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
    ExperimentConfig cfg = parse_config(in);
    if (!cfg.plant_file.empty()) cfg.plant_coeffs = read_plant_file(cfg.plant_file);
    return cfg;
}

void ExperimentConfig::validate() const {
    filter.validate();
    variant.validate();
    std::ostringstream msg;
    if (iterations < 1) msg << "iterations must be positive";
    else if (ensemble < 1) msg << "ensemble must be positive";
    else if (trial_offset < 0) msg << "trial_offset must be >= 0";
    else if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) msg << "snr_db must be a number or +inf";
    else if (!(input_std > 0.0) || !std::isfinite(input_std)) msg << "input_std must be positive";
    else if (input == InputModel::Ar1 && !(std::abs(ar1_rho) < 1.0)) msg << "ar1_rho must satisfy |rho| < 1";
    else if (!plant_coeffs.empty() && plant_coeffs.size() != static_cast<std::size_t>(filter.taps))
        msg << "plant has " << plant_coeffs.size() << " coefficients, filter has " << filter.taps << " taps";
    else if (threads < 0) msg << "threads must be >= 0";
    if (!msg.str().empty()) throw std::invalid_argument(msg.str());
}

// ---------------------------------------------------------------------------

TrialData generate_trial(const ExperimentConfig& config, int trial) {
    const FilterConfig& f = config.filter;
    const auto n_taps = static_cast<std::size_t>(f.taps);
    const auto iters = static_cast<std::size_t>(config.iterations);
    const auto stream = static_cast<std::uint64_t>(trial) * 4;

    TrialData data;
    data.plant.reserve(n_taps);
    if (!config.plant_coeffs.empty()) {
        for (double w : config.plant_coeffs) data.plant.push_back(quantize(w, f.coeff(), f.rounding));
    } else {
        PhiloxStream rng(config.seed, stream + 0);
        const double top = 1.0 - std::ldexp(1.0, -(f.coeff_bits - 1));
        std::uniform_real_distribution<double> uni(-1.0, top);
        for (std::size_t i = 0; i < n_taps; ++i) data.plant.push_back(quantize(uni(rng), f.coeff(), f.rounding));
    }

    {
        PhiloxStream rng(config.seed, stream + 1);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double innov = config.input == InputModel::Ar1 ? std::sqrt(1.0 - config.ar1_rho * config.ar1_rho) : 1.0;
        double prev = 0.0;
        data.x.reserve(iters);
        for (std::size_t n = 0; n < iters; ++n) {
            const double g = gauss(rng);
            double v = g;
            if (config.input == InputModel::Ar1 && n > 0) v = config.ar1_rho * prev + innov * g;
            prev = v;
            data.x.push_back(quantize(v * config.input_std, f.input, f.rounding));
        }
    }

    // Exact plant output.
    data.clean.resize(iters);
    const int frac = f.coeff_bits - 1 + f.input.frac;
    double power = 0.0;
    for (std::size_t n = 0; n < iters; ++n) {
        Wide acc = 0;
        for (std::size_t i = 0; i < n_taps && i <= n; ++i) acc += Wide{data.plant[i].mantissa()} * data.x[n - i].mantissa();
        data.clean[n] = to_real(acc, frac);
        power += data.clean[n] * data.clean[n];
    }
    power /= static_cast<double>(iters);

    data.noise.assign(iters, 0.0);
    if (std::isfinite(config.snr_db)) {
        data.noise_power = power / std::pow(10.0, config.snr_db / 10.0);
        const double sigma = std::sqrt(data.noise_power);
        PhiloxStream rng(config.seed, stream + 2);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t n = 0; n < iters; ++n) data.noise[n] = sigma * gauss(rng);
    }
    data.d.reserve(iters);
    for (std::size_t n = 0; n < iters; ++n) data.d.push_back(quantize(data.clean[n] + data.noise[n], f.output, f.rounding));
    return data;
}

namespace {

struct TrialTrace {
    std::vector<double> sq_err;
    std::vector<double> coef_err;
    TrialOutcome outcome;
};

TrialTrace run_trial(const ExperimentConfig& config, int trial) {
    const TrialData data = generate_trial(config, trial);
    const auto iters = data.x.size();
    const auto n_taps = data.plant.size();

    TrialTrace t;
    t.sq_err.resize(iters);
    t.coef_err.resize(iters);
    for (const Fx& w : data.plant) t.outcome.plant.push_back(to_real(w));
    t.outcome.noise_power = data.noise_power;

    double signal = 0.0, noise = 0.0;
    for (std::size_t n = 0; n < iters; ++n) {
        signal += data.clean[n] * data.clean[n];
        noise += data.noise[n] * data.noise[n];
    }
    t.outcome.signal_power = signal / static_cast<double>(iters);
    t.outcome.measured_snr_db = noise > 0.0 ? 10.0 * std::log10(signal / noise) : std::numeric_limits<double>::infinity();

    auto coef_error = [&](auto&& value_at) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_taps; ++i) {
            const double diff = t.outcome.plant[i] - value_at(i);
            s += diff * diff;
        }
        return s;
    };

    if (config.engine == Engine::Float) {
        FloatLms filter(config.filter.taps, config.filter.mu.value(), config.variant);
        for (std::size_t n = 0; n < iters; ++n) {
            const auto r = filter.step(to_real(data.x[n]), to_real(data.d[n]));
            t.sq_err[n] = r.e * r.e;
            t.coef_err[n] = coef_error([&](std::size_t i) { return filter.coefficients()[i]; });
        }
        t.outcome.final_coeffs = filter.coefficients();
        return t;
    }

    std::unique_ptr<AdaptiveFilter> filter;
    if (config.engine == Engine::Reference) {
        filter = std::make_unique<ReferenceLms>(config.filter, config.variant);
    } else {
        filter = make_da_filter(config.filter, config.variant);
    }
    for (std::size_t n = 0; n < iters; ++n) {
        const StepResult r = filter->step(data.x[n], data.d[n]);
        const double e = to_real(r.e);
        t.sq_err[n] = e * e;
        const auto w = filter->coefficients();
        t.coef_err[n] = coef_error([&](std::size_t i) { return to_real(w[i]); });
    }
    for (const Fx& w : filter->coefficients()) t.outcome.final_coeffs.push_back(to_real(w));
    return t;
}

double to_db(double v) { return 10.0 * std::log10(v); }

}  // namespace

RunResult run(const ExperimentConfig& config) {
    config.validate();
    const auto trials = static_cast<std::size_t>(config.ensemble);
    std::vector<TrialTrace> results(trials);

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t t = next++; t < trials && !failed; t = next++) {
            try {
                results[t] = run_trial(config, config.trial_offset + static_cast<int>(t));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Reduce in trial order.
    const auto iters = static_cast<std::size_t>(config.iterations);
    RunResult out;
    LearningCurve& c = out.curve;
    c.mse.assign(iters, 0.0);
    c.coef_err.assign(iters, 0.0);
    for (const TrialTrace& t : results) {
        for (std::size_t n = 0; n < iters; ++n) {
            c.mse[n] += t.sq_err[n];
            c.coef_err[n] += t.coef_err[n];
        }
        out.noise_floor += t.outcome.noise_power;
    }
    const double scale = 1.0 / static_cast<double>(trials);
    c.mse_db.resize(iters);
    c.coef_err_db.resize(iters);
    for (std::size_t n = 0; n < iters; ++n) {
        c.mse[n] *= scale;
        c.coef_err[n] *= scale;
        c.mse_db[n] = to_db(c.mse[n]);
        c.coef_err_db[n] = to_db(c.coef_err[n]);
    }
    out.noise_floor *= scale;
    out.trials.reserve(trials);
    for (auto& t : results) out.trials.push_back(std::move(t.outcome));
    return out;
}

void write_curve_csv(std::ostream& os, const LearningCurve& curve) {
    os << "iter,mse,mse_db,coef_err,coef_err_db\n";
    char buf[160];
    for (std::size_t n = 0; n < curve.mse.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%.12e,%.6f,%.12e,%.6f\n", n, curve.mse[n], curve.mse_db[n],
                      curve.coef_err[n], curve.coef_err_db[n]);
        os << buf;
    }
}

std::string curve_csv(const LearningCurve& curve) {
    std::ostringstream os;
    write_curve_csv(os, curve);
    return os.str();
}

}  // namespace dafilt
