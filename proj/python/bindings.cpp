#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "primeperiod/chaos.hpp"
#include "primeperiod/correlation.hpp"
#include "primeperiod/error.hpp"
#include "primeperiod/lnseq.hpp"
#include "primeperiod/pipeline.hpp"
#include "primeperiod/primes.hpp"
#include "primeperiod/telegraph.hpp"

namespace py = pybind11;
namespace pp = primeperiod;

namespace {

pp::PrimeSequence as_sequence(std::vector<std::uint64_t> values) {
    return {std::move(values), pp::SequenceOrigin::full};
}

pp::GapSequence as_gaps(std::vector<std::uint64_t> gaps) {
    const std::size_t n = gaps.size() + 1;
    return {std::move(gaps), n};
}

pp::AutocorrelationSeries as_series(std::vector<double> values) {
    pp::AutocorrelationSeries s;
    s.values = std::move(values);
    return s;
}

std::vector<int> signs(const pp::TelegraphSignal& s) { return {s.values.begin(), s.values.end()}; }

template <class V>
py::array_t<double> to_array(const V& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict estimate_dict(const std::optional<pp::PeriodEstimate>& e) {
    py::dict d;
    if (!e) return d;
    d["half_period"] = e->half_period;
    d["uncertainty"] = e->uncertainty;
    d["method"] = std::string(pp::to_string(e->method));
    d["fundamental_period"] = e->fundamental_period;
    d["scale"] = e->scale_used;
    return d;
}

py::dict analysis_dict(const pp::IntervalAnalysis& a) {
    py::dict d;
    d["interval"] = py::make_tuple(a.interval.start, a.interval.end);
    d["acf"] = a.acf.values;
    d["first_minimum"] = estimate_dict(a.first_minimum);
    d["spectral"] = estimate_dict(a.spectral);
    d["notes"] = a.notes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Prime-gap telegraph signals, autocorrelation and hidden-period recovery";
    m.attr("__version__") = "0.1.0";

    static py::exception<pp::Error> error(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const pp::Error& e) {
            py::set_error(error, (e.name() + ": " + e.what()).c_str());
        }
    });

    // primes
    m.def("first_n_primes", [](std::size_t n) { return pp::first_n_primes(n).values; }, py::arg("count"));
    m.def("primes_up_to", [](std::uint64_t limit) { return pp::primes_up_to(limit).values; },
          py::arg("limit"));
    m.def("gaps", [](std::vector<std::uint64_t> v) { return pp::gaps(as_sequence(std::move(v))).gaps; },
          py::arg("primes"));
    m.def("twin_pairs", [](std::vector<std::uint64_t> v) { return pp::twin_pairs(as_sequence(std::move(v))); },
          py::arg("primes"));
    m.def("kill_twins",
          [](std::vector<std::uint64_t> v) { return pp::kill_twins(as_sequence(std::move(v))).values; },
          py::arg("primes"));
    m.def("gap_histogram",
          [](std::vector<std::uint64_t> g) {
              const auto h = pp::gap_histogram(as_gaps(std::move(g)));
              return py::make_tuple(h.counts, h.mode);
          },
          py::arg("gaps"), "Returns (counts, mode); ties go to the smallest gap.");

    // ln-sequence
    m.def("ln_sequence",
          [](std::vector<std::uint64_t> g, double scale) {
              return pp::ln_sequence(as_gaps(std::move(g)), scale).values;
          },
          py::arg("gaps"), py::arg("scale") = pp::kDefaultScale);

    // telegraph signals
    m.def("telegraph_from_changepoints",
          [](std::vector<std::int64_t> points, std::int64_t start, std::int64_t end, int sign) {
              return signs(pp::telegraph_from_changepoints(points, start, end, sign));
          },
          py::arg("points"), py::arg("domain_start"), py::arg("domain_end"), py::arg("initial_sign") = 1);
    m.def("telegraph_from_crossings",
          [](std::vector<double> times, double t0, double t1, double step, int sign) {
              return signs(pp::telegraph_from_crossings(times, t0, t1, step, sign));
          },
          py::arg("times"), py::arg("horizon_start"), py::arg("horizon_end"), py::arg("grid_step"),
          py::arg("initial_sign") = 1);
    m.def("simulate_model_telegraph",
          [](double period, std::size_t length, double flip_probability, std::uint64_t seed,
             std::optional<double> phase, double grid_step) {
              pp::ModelTelegraphParams p;
              p.period = period;
              p.length = length;
              p.phase = phase;
              p.grid_step = grid_step;
              return signs(pp::simulate_model_telegraph(p, flip_probability, seed));
          },
          py::arg("period"), py::arg("length"), py::arg("flip_probability"), py::arg("seed"),
          py::arg("phase") = py::none(), py::arg("grid_step") = 1.0);

    // correlation
    m.def("autocorrelation",
          [](const std::vector<int>& values, std::int64_t start_index, std::int64_t window_start,
             std::int64_t window_end, std::size_t max_lag) {
              pp::TelegraphSignal s;
              s.start_index = start_index;
              for (int v : values) {
                  if (v != 1 && v != -1) throw pp::InvalidArgumentError("signal values must be +-1");
                  s.values.push_back(static_cast<std::int8_t>(v));
              }
              return pp::autocorrelation(s, window_start, window_end, max_lag).values;
          },
          py::arg("values"), py::arg("start_index"), py::arg("window_start"), py::arg("window_end"),
          py::arg("max_lag"));
    m.def("model_autocorrelation", &pp::model_autocorrelation, py::arg("q"), py::arg("period"),
          py::arg("tau"));
    m.def("ensemble_model_acf",
          [](double period, std::size_t length, double flip_probability, std::size_t realizations,
             std::size_t max_lag, std::uint64_t seed, double grid_step) {
              pp::ModelTelegraphParams p;
              p.period = period;
              p.length = length;
              p.grid_step = grid_step;
              const auto r = pp::ensemble_model_acf(p, flip_probability, realizations, max_lag, seed);
              return py::make_tuple(r.series.values, r.standard_error);
          },
          py::arg("period"), py::arg("length"), py::arg("flip_probability"), py::arg("realizations"),
          py::arg("max_lag"), py::arg("seed"), py::arg("grid_step") = 1.0);
    m.def("rescale",
          [](std::vector<double> values, double lag_factor, double amplitude_factor) {
              return pp::rescale(as_series(std::move(values)), lag_factor, amplitude_factor).values;
          },
          py::arg("values"), py::arg("lag_factor"), py::arg("amplitude_factor"));
    m.def("estimate_period",
          [](std::vector<double> values, const std::string& method, std::size_t smoothing_window,
             double prominence, double scale) {
              const auto e = pp::estimate_period(as_series(std::move(values)),
                                                 pp::parse_period_method(method),
                                                 {smoothing_window, prominence}, scale);
              return estimate_dict(e);
          },
          py::arg("values"), py::arg("method") = "first-minimum", py::arg("smoothing_window") = 3,
          py::arg("prominence") = 0.02, py::arg("scale") = pp::kDefaultScale);
    m.def("recover_fundamental_period", &pp::recover_fundamental_period, py::arg("half_period"),
          py::arg("scale") = pp::kDefaultScale);
    m.def("linear_decay_endpoint",
          [](std::vector<double> values, double r2) {
              return pp::linear_decay_endpoint(as_series(std::move(values)), r2);
          },
          py::arg("values"), py::arg("r2_threshold") = 0.98);

    // chaos
    m.def("rossler_derivative",
          [](pp::State3 s, double a, double b, double c) {
              return pp::rossler_derivative(s, {a, b, c, 7.0});
          },
          py::arg("state"), py::arg("a") = 0.15, py::arg("b") = 0.20, py::arg("c") = 10.0);
    m.def("integrate_rossler",
          [](double dt, double t_end, double transient, pp::State3 initial, double a, double b,
             double c) {
              const auto t = pp::integrate({a, b, c, 7.0}, {initial, dt, t_end, transient});
              py::dict d;
              d["t0"] = t.t0;
              d["dt"] = t.dt;
              d["x"] = to_array(t.x);
              d["y"] = to_array(t.y);
              d["z"] = to_array(t.z);
              return d;
          },
          py::arg("dt") = 0.01, py::arg("t_end") = 5200.0, py::arg("transient") = 200.0,
          py::arg("initial") = pp::State3{1.0, 1.0, 1.0}, py::arg("a") = 0.15, py::arg("b") = 0.20,
          py::arg("c") = 10.0);
    m.def("upward_crossings",
          [](std::vector<double> x, double t0, double dt, double threshold) {
              pp::Trajectory t;
              t.t0 = t0;
              t.dt = dt;
              t.x = std::move(x);
              return pp::upward_crossings(t, threshold);
          },
          py::arg("x"), py::arg("t0"), py::arg("dt"), py::arg("threshold") = 7.0);
    m.def("fundamental_period",
          [](std::vector<double> x, double dt) {
              pp::Trajectory t;
              t.dt = dt;
              t.x = std::move(x);
              return pp::fundamental_period(t);
          },
          py::arg("x"), py::arg("dt"));

    // pipeline
    m.def("run_fig1_fig2",
          [](std::size_t prime_count, std::size_t max_lag) {
              pp::ExperimentConfig c;
              c.prime_count = prime_count;
              c.max_lag = max_lag;
              const auto r = pp::run_fig1_fig2(c);
              py::dict d;
              d["fig1"] = analysis_dict(r.fig1);
              d["fig2"] = analysis_dict(r.fig2);
              d["rossler_fundamental_period"] = r.rossler.fundamental_period;
              d["rossler_mean_crossing_interval"] = r.rossler.mean_crossing_interval;
              d["notes"] = r.notes;
              return d;
          },
          py::arg("prime_count") = 10000, py::arg("max_lag") = 150);
    m.def("run_fig567",
          [](std::vector<std::pair<std::int64_t, std::int64_t>> intervals, std::size_t max_lag) {
              pp::ExperimentConfig c;
              c.k2_max_lag = max_lag;
              std::vector<pp::Interval> ivs;
              for (const auto& [a, b] : intervals) ivs.push_back({a, b});
              const auto r = pp::run_fig567(c, ivs);
              py::list out;
              for (const auto& k : r.intervals) {
                  auto d = analysis_dict(k.analysis);
                  d["decay_endpoint"] = k.decay_endpoint ? py::cast(*k.decay_endpoint) : py::none();
                  d["flip_count"] = k.flip_count;
                  out.append(d);
              }
              return out;
          },
          py::arg("intervals") = std::vector<std::pair<std::int64_t, std::int64_t>>{
              {6000, 6600}, {12000, 13000}, {19000, 20000}},
          py::arg("max_lag") = 60);
}
