#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dafilt/cost.hpp"
#include "dafilt/experiment.hpp"
#include "dafilt/reference.hpp"
#include "dafilt/variants.hpp"
#include "dafilt/verify.hpp"

namespace py = pybind11;
using namespace dafilt;

namespace {

std::vector<std::int64_t> mantissas(std::span<const Fx> v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const Fx& x : v) out.push_back(x.mantissa());
    return out;
}

std::vector<Fx> from_mantissas(const std::vector<std::int64_t>& m, Format f) {
    std::vector<Fx> out;
    out.reserve(m.size());
    for (auto v : m) out.emplace_back(v, f);
    return out;
}

std::vector<Fx> from_reals(const std::vector<double>& v, Format f, Rounding mode) {
    std::vector<Fx> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(quantize(x, f, mode));
    return out;
}

// Adaptive filter driven with real-valued samples; inputs are quantized to the configured formats.
class PyFilter {
public:
    PyFilter(const FilterConfig& cfg, const Variant& variant, bool reference)
        : cfg_(cfg) {
        cfg_.validate();
        if (reference) impl_ = std::make_unique<ReferenceLms>(cfg_, variant);
        else impl_ = make_da_filter(cfg_, variant);
    }

    py::tuple step(double x, double d) {
        const StepResult r = impl_->step(quantize(x, cfg_.input, cfg_.rounding), quantize(d, cfg_.output, cfg_.rounding));
        return py::make_tuple(to_real(r.y), to_real(r.e));
    }

    py::dict run(const std::vector<double>& x, const std::vector<double>& d) {
        if (x.size() != d.size()) throw std::invalid_argument("x and d lengths differ");
        std::vector<double> y, e;
        for (std::size_t n = 0; n < x.size(); ++n) {
            const StepResult r = impl_->step(quantize(x[n], cfg_.input, cfg_.rounding), quantize(d[n], cfg_.output, cfg_.rounding));
            y.push_back(to_real(r.y));
            e.push_back(to_real(r.e));
        }
        py::dict out;
        out["y"] = y;
        out["e"] = e;
        return out;
    }

    std::vector<double> coefficients() const {
        std::vector<double> w;
        for (const Fx& c : impl_->coefficients()) w.push_back(to_real(c));
        return w;
    }
    std::vector<std::int64_t> coefficient_mantissas() const { return mantissas(impl_->coefficients()); }
    std::size_t updates() const { return impl_->updates(); }

private:
    FilterConfig cfg_;
    std::unique_ptr<AdaptiveFilter> impl_;
};

py::dict lut_dict(std::span<const std::int64_t> entries, int frac) {
    std::vector<double> real;
    for (auto v : entries) real.push_back(to_real(Wide{v}, frac));
    py::dict d;
    d["entries"] = std::vector<std::int64_t>(entries.begin(), entries.end());
    d["values"] = real;
    d["frac"] = frac;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bit-accurate distributed-arithmetic LMS adaptive filters";

    py::enum_<Rounding>(m, "Rounding")
        .value("NEAREST", Rounding::Nearest)
        .value("TRUNCATE", Rounding::Truncate);
    py::enum_<Scheme>(m, "Scheme").value("TC", Scheme::TC).value("OBC", Scheme::OBC);
    py::enum_<RefreshPolicy>(m, "Refresh")
        .value("REBUILD", RefreshPolicy::Rebuild)
        .value("SLIDE", RefreshPolicy::Slide);

    py::class_<Format>(m, "Format")
        .def(py::init([](int word, int frac) {
                 Format f{word, frac};
                 f.validate();
                 return f;
             }),
             py::arg("word"), py::arg("frac"))
        .def_readwrite("word", &Format::word)
        .def_readwrite("frac", &Format::frac)
        .def("__eq__", [](const Format& a, const Format& b) { return a == b; })
        .def("__repr__", [](const Format& f) {
            return "Format(" + std::to_string(f.word) + ", " + std::to_string(f.frac) + ")";
        });

    py::class_<StepSize>(m, "StepSize")
        .def(py::init<>())
        .def(py::init([](std::int64_t mantissa, int frac) { return StepSize{mantissa, frac}; }),
             py::arg("mantissa"), py::arg("frac"))
        .def_static("shift", &StepSize::shift)
        .def_static("from_real", &StepSize::from_real, py::arg("value"), py::arg("frac"))
        .def_readwrite("mantissa", &StepSize::mantissa)
        .def_readwrite("frac", &StepSize::frac)
        .def_property_readonly("value", &StepSize::value);

    py::class_<FilterConfig>(m, "FilterConfig")
        .def(py::init<>())
        .def_readwrite("taps", &FilterConfig::taps)
        .def_readwrite("coeff_bits", &FilterConfig::coeff_bits)
        .def_readwrite("lut_bits", &FilterConfig::lut_bits)
        .def_readwrite("scheme", &FilterConfig::scheme)
        .def_readwrite("refresh", &FilterConfig::refresh)
        .def_readwrite("input", &FilterConfig::input)
        .def_readwrite("output", &FilterConfig::output)
        .def_readwrite("error", &FilterConfig::error)
        .def_readwrite("mu", &FilterConfig::mu)
        .def_readwrite("rounding", &FilterConfig::rounding)
        .def("validate", &FilterConfig::validate);

    py::class_<Variant>(m, "Variant")
        .def(py::init(&Variant::parse), py::arg("text") = "lms")
        .def_readonly("delay", &Variant::delay)
        .def_readonly("block", &Variant::block)
        .def("__str__", &Variant::to_string);

    // Scalar fixed point.
    m.def("quantize", [](double v, const Format& f, Rounding mode) {
        const Fx x = quantize(v, f, mode);
        return py::make_tuple(x.mantissa(), x.saturated());
    }, py::arg("value"), py::arg("fmt"), py::arg("rounding") = Rounding::Nearest,
       "Returns (mantissa, saturated).");
    m.def("to_real", [](std::int64_t mantissa, const Format& f) { return to_real(Fx(mantissa, f)); });
    m.def("slice_tc", [](std::int64_t mantissa, int bits) { return slice_tc(Fx(mantissa, coeff_format(bits))); });
    m.def("slice_obc", [](std::int64_t mantissa, int bits) { return slice_obc(Fx(mantissa, coeff_format(bits))); });
    m.def("reconstruct_tc", [](const std::vector<std::uint8_t>& b) { return reconstruct_tc(b); });
    m.def("reconstruct_obc", [](const std::vector<std::int8_t>& b) { return reconstruct_obc(b); });

    // Tables.
    m.def("build_tc", [](const std::vector<std::int64_t>& window, const Format& f) {
        const auto w = from_mantissas(window, f);
        const TcLut lut = TcLut::build(w, static_cast<int>(w.size()));
        return lut_dict(lut.entries(), lut.frac());
    }, py::arg("window"), py::arg("fmt"));
    m.def("build_obc", [](const std::vector<std::int64_t>& window, const Format& f) {
        const auto w = from_mantissas(window, f);
        const ObcLut lut = ObcLut::build(w, static_cast<int>(w.size()));
        py::dict d = lut_dict(lut.entries(), lut.frac());
        d["d_initial"] = to_real(Wide{lut.d_initial()}, lut.frac());
        return d;
    }, py::arg("window"), py::arg("fmt"));

    // One output of a fixed filter.
    m.def("da_output", [](const FilterConfig& cfg, const std::vector<double>& coeffs, const std::vector<double>& window) {
        DaFilter f(cfg, from_reals(coeffs, cfg.coeff(), cfg.rounding));
        f.set_window(from_reals(window, cfg.input, cfg.rounding));
        return to_real(f.output().y);
    }, py::arg("config"), py::arg("coeffs"), py::arg("window"));

    py::class_<PyFilter>(m, "Filter")
        .def(py::init<const FilterConfig&, const Variant&, bool>(), py::arg("config"),
             py::arg("variant") = Variant{}, py::arg("reference") = false)
        .def("step", &PyFilter::step, py::arg("x"), py::arg("d"))
        .def("run", &PyFilter::run, py::arg("x"), py::arg("d"))
        .def_property_readonly("coefficients", &PyFilter::coefficients)
        .def_property_readonly("coefficient_mantissas", &PyFilter::coefficient_mantissas)
        .def_property_readonly("updates", &PyFilter::updates);

    m.def("cost", [](const std::string& scheme, int n, int b, int k, const std::string& variant) {
        const CostReport r = estimate(parse_cost_scheme(scheme), n, b, k, Variant::parse(variant));
        py::dict d;
        d["lut_units"] = r.lut_units;
        d["words_per_unit"] = r.words_per_unit;
        d["total_lut_words"] = r.total_lut_words;
        d["lookup_adders"] = r.lookup_adders;
        d["cycles_per_output"] = r.cycles_per_output;
        d["outputs_per_update"] = r.outputs_per_update;
        d["updates_per_output"] = r.updates_per_output;
        d["delay_registers"] = r.delay_registers;
        d["approximate"] = r.approximate;
        return d;
    }, py::arg("scheme"), py::arg("n"), py::arg("b"), py::arg("k"), py::arg("variant") = "lms");

    m.def("run_experiment", [](const std::string& config_text, py::object seed) {
        std::istringstream in(config_text);
        ExperimentConfig cfg = parse_config(in);
        if (!seed.is_none()) cfg.seed = seed.cast<std::uint64_t>();
        RunResult r;
        {
            py::gil_scoped_release release;
            r = run(cfg);
        }
        py::dict d;
        d["mse"] = r.curve.mse;
        d["mse_db"] = r.curve.mse_db;
        d["coef_err"] = r.curve.coef_err;
        d["coef_err_db"] = r.curve.coef_err_db;
        d["noise_floor"] = r.noise_floor;
        d["csv"] = curve_csv(r.curve);
        return d;
    }, py::arg("config_text"), py::arg("seed") = py::none(),
       "Run an ensemble experiment from config text; returns the learning curve.");

    m.def("verify", [](const std::string& sweep, bool inject_fault) {
        auto opts = VerifyOptions::for_sweep(sweep == "full" ? Sweep::Full : Sweep::Small);
        opts.inject_fault = inject_fault;
        VerifyReport r;
        {
            py::gil_scoped_release release;
            r = verify(opts);
        }
        py::list suites;
        for (const auto& s : r.suites) {
            py::dict d;
            d["name"] = s.name;
            d["cases"] = s.cases;
            d["failures"] = s.failures;
            d["counterexample"] = s.counterexample;
            d["passed"] = s.passed();
            suites.append(d);
        }
        return suites;
    }, py::arg("sweep") = "small", py::arg("inject_fault") = false);
}
