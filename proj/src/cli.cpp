#include "primeperiod/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "primeperiod/csv.hpp"
#include "primeperiod/error.hpp"
#include "primeperiod/pipeline.hpp"

namespace primeperiod::cli {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Values shared by every subcommand; each subcommand binds only the flags
// it understands.
struct Options {
    ExperimentConfig config;
    std::size_t count = 10000;
    std::uint64_t limit = 0;
    std::string interval = "9e4:1e5";
    std::string k2_interval = "6000:6600";
    std::size_t max_lag = 0;
    std::string figure = "all";
    std::string out;
    std::string config_path;
};

void describe(std::ostream& os, const char* label, const std::optional<PeriodEstimate>& e) {
    if (!e) {
        os << label << ": unavailable\n";
        return;
    }
    os << label << ": T_hat = " << num(e->half_period) << " +- " << num(e->uncertainty, 3)
       << ", T0 = " << num(e->fundamental_period) << "\n";
}

void describe(std::ostream& os, const IntervalAnalysis& a, double ratio) {
    os << "interval " << to_string(a.interval) << "\n";
    describe(os, "  first-minimum", a.first_minimum);
    describe(os, "  spectral", a.spectral);
    if (a.methods_disagree(ratio)) os << "  warning: estimators disagree\n";
}

void print_notes(std::ostream& err, const std::vector<std::string>& notes) {
    for (const auto& n : notes) err << "note: " << n << "\n";
}

// Pre-scan for --config so its values can fill in options the user left out.
std::string find_config_path(std::span<const std::string> args) {
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_flat_config(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw InvalidArgumentError("config line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(std::string_view(body).substr(0, eq));
        auto value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw InvalidArgumentError("config line " + std::to_string(lineno) + ": empty key");
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    auto& cfg = o.config;

    CLI::App app{"Hidden-period analysis of the prime sequence", "primeperiod"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto add_config = [&](CLI::App* s) {
        s->add_option("--config", o.config_path, "Flat key = value file; explicit flags win");
    };
    auto add_count = [&](CLI::App* s) {
        s->add_option("--count", o.count, "Number of primes")->check(CLI::PositiveNumber);
    };
    auto add_scale = [&](CLI::App* s) {
        s->add_option("--scale", cfg.scale, "Multiplier applied to cumulative log-gaps")
            ->check(CLI::PositiveNumber);
    };
    auto add_seed = [&](CLI::App* s) { s->add_option("--seed", cfg.seed, "Base random seed"); };
    auto add_rossler = [&](CLI::App* s) {
        s->add_option("--dt", cfg.integration.dt, "RK4 step")->check(CLI::PositiveNumber);
        s->add_option("--t-end", cfg.integration.t_end, "Integration end time");
        s->add_option("--transient", cfg.integration.transient, "Discarded initial span");
        s->add_option("--threshold", cfg.rossler.threshold_x, "Upward-crossing threshold on x");
    };
    auto add_model = [&](CLI::App* s) {
        s->add_option("--q", cfg.model.persistence_q, "Persistence q of the analytic model")
            ->check(CLI::Range(0.0, 1.0));
        s->add_option("--flip-prob", cfg.flip_probability,
                      "Per-event flip probability of the simulation [default: 1 - q]")
            ->check(CLI::Range(0.0, 1.0));
        s->add_option("--period-T", cfg.model.period, "Event period T in grid units")
            ->check(CLI::PositiveNumber);
        s->add_option("--realizations", cfg.realizations, "Monte Carlo realizations")
            ->check(CLI::Range(100, 100000000));
    };

    auto* primes_cmd = app.add_subcommand("primes", "Print primes or write them as CSV");
    add_config(primes_cmd);
    add_count(primes_cmd);
    primes_cmd->add_option("--limit", o.limit, "Emit all primes <= limit instead of --count");
    primes_cmd->add_option("--out", o.out, "CSV file (column value)");

    auto* lnseq_cmd = app.add_subcommand("lnseq", "Build the ln-sequence of the first --count primes");
    add_config(lnseq_cmd);
    add_count(lnseq_cmd);
    add_scale(lnseq_cmd);
    lnseq_cmd->add_option("--out", o.out, "CSV file (column lnseq)");

    auto* telegraph_cmd = app.add_subcommand("telegraph", "Sample v(n) of the ln-sequence on an interval");
    add_config(telegraph_cmd);
    add_count(telegraph_cmd);
    add_scale(telegraph_cmd);
    telegraph_cmd->add_option("--interval", o.interval, "Open interval start:end");
    telegraph_cmd->add_option("--out", o.out, "CSV file (columns n,v)");

    auto* rossler_cmd = app.add_subcommand("rossler", "Integrate the Rössler system and find crossings");
    add_config(rossler_cmd);
    add_rossler(rossler_cmd);
    rossler_cmd->add_option("--out", o.out, "Directory for trajectory.csv and crossings.csv");

    o.max_lag = cfg.max_lag;
    auto* acf_cmd = app.add_subcommand("acf", "Autocorrelation of v(n) and the recovered period");
    add_config(acf_cmd);
    add_count(acf_cmd);
    add_scale(acf_cmd);
    acf_cmd->add_option("--interval", o.interval, "Open interval start:end");
    acf_cmd->add_option("--max-lag", o.max_lag, "Largest lag");
    acf_cmd->add_option("--out", o.out, "CSV file (columns tau,c)");

    auto* model_cmd = app.add_subcommand("model", "Analytic telegraph ACF against Monte Carlo");
    add_config(model_cmd);
    add_model(model_cmd);
    add_seed(model_cmd);
    model_cmd->add_option("--max-lag", cfg.model_max_lag, "Largest lag");
    model_cmd->add_option("--out", o.out, "CSV file (columns tau,c_model,c_mc,se)");

    auto* k2_cmd = app.add_subcommand("k2", "Twin-killed prime signal ACF on an interval");
    add_config(k2_cmd);
    k2_cmd->add_option("--interval", o.k2_interval, "Open interval start:end");
    k2_cmd->add_option("--max-lag", cfg.k2_max_lag, "Largest lag");
    k2_cmd->add_option("--out", o.out, "CSV file (columns tau,c)");

    auto* repro_cmd = app.add_subcommand("reproduce", "Write the dataset behind each figure");
    add_config(repro_cmd);
    repro_cmd->add_option("--figure", o.figure, "Figure to reproduce")
        ->check(CLI::IsMember({"1", "2", "3", "5", "6", "7", "all"}));
    add_count(repro_cmd);
    add_scale(repro_cmd);
    repro_cmd->add_option("--max-lag", cfg.max_lag, "Largest lag for the ln-sequence ACF");
    add_model(repro_cmd);
    add_rossler(repro_cmd);
    add_seed(repro_cmd);
    repro_cmd->add_option("--out", o.out, "Output directory")->default_str(".");

    // --config may also precede the subcommand.
    app.add_option("--config", o.config_path, "Flat key = value file; explicit flags win");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(argv_rev);

        CLI::App* sub = app.get_subcommands().front();
        if (const auto path = find_config_path(args); !path.empty()) {
            std::ifstream f(path);
            if (!f) throw CLI::ValidationError("--config", "cannot read " + path);
            std::stringstream ss;
            ss << f.rdbuf();
            std::set<std::string> known;
            for (auto* s : app.get_subcommands({}))
                for (const auto* opt : s->get_options())
                    for (const auto& name : opt->get_lnames()) known.insert(name);
            try {
                for (const auto& [key, value] : parse_flat_config(ss.str())) {
                    if (!known.contains(key))
                        throw CLI::ValidationError("--config", "unknown key '" + key + "' in " + path);
                    if (key == "config") continue;
                    CLI::Option* opt = nullptr;
                    try {
                        opt = sub->get_option("--" + key);
                    } catch (const CLI::OptionNotFound&) {
                        continue;  // belongs to another subcommand
                    }
                    if (opt->count() > 0) continue;
                    opt->add_result(value);
                    opt->run_callback();
                }
            } catch (const InvalidArgumentError& e) {
                throw CLI::ValidationError("--config", e.what());
            }
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    cfg.prime_count = o.count;
    if (!o.out.empty() && name == "reproduce") cfg.output_dir = o.out;
    if (name == "reproduce" && o.out.empty()) cfg.output_dir = ".";

    try {
        if (name == "primes") {
            const auto seq = o.limit ? primes_up_to(o.limit) : first_n_primes(o.count);
            if (!o.out.empty()) {
                const std::vector<CsvColumn> cols{
                    {"value", {seq.values.begin(), seq.values.end()}, true}};
                write_csv(o.out, cfg.hash(), cols);
            } else {
                for (std::size_t i = 0; i < seq.size(); ++i)
                    out << (i ? " " : "") << seq.values[i];
                out << "\n";
            }
        } else if (name == "lnseq") {
            const auto seq = ln_sequence(gaps(first_n_primes(o.count)), cfg.scale);
            if (seq.dropped_duplicates)
                err << "note: " << seq.dropped_duplicates << " duplicates dropped after rounding\n";
            if (!o.out.empty()) {
                const std::vector<CsvColumn> cols{
                    {"lnseq", {seq.values.begin(), seq.values.end()}, true}};
                write_csv(o.out, cfg.hash(), cols);
            } else {
                for (std::size_t i = 0; i < seq.values.size(); ++i)
                    out << (i ? " " : "") << seq.values[i];
                out << "\n";
            }
        } else if (name == "telegraph") {
            const auto iv = parse_interval(o.interval);
            const auto ln = build_ln_signal(o.count, cfg.scale, iv.end);
            std::vector<double> n, v;
            for (std::int64_t k = iv.start + 1; k < iv.end; ++k) {
                n.push_back(static_cast<double>(k));
                v.push_back(ln.signal.at(k));
            }
            const auto flips = std::count_if(
                ln.signal.change_points.begin(), ln.signal.change_points.end(),
                [&](std::int64_t c) { return c > iv.start && c < iv.end; });
            out << "interval " << to_string(iv) << ": " << n.size() << " points, " << flips
                << " sign changes\n";
            if (!o.out.empty()) {
                const std::vector<CsvColumn> cols{{"n", n, true}, {"v", v, true}};
                write_csv(o.out, cfg.hash(), cols);
            }
        } else if (name == "rossler") {
            const auto traj = integrate(cfg.rossler, cfg.integration);
            const auto crossings = upward_crossings(traj, cfg.rossler.threshold_x);
            out << "samples: " << traj.size() << "\n";
            out << "fundamental period (spectral): " << num(fundamental_period(traj)) << "\n";
            out << "upward crossings of x = " << num(cfg.rossler.threshold_x) << ": "
                << crossings.size() << "\n";
            if (crossings.size() >= 2)
                out << "mean crossing interval: "
                    << num((crossings.back() - crossings.front()) /
                           static_cast<double>(crossings.size() - 1))
                    << "\n";
            if (!o.out.empty()) {
                std::vector<double> t(traj.size());
                for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.time(i);
                const std::filesystem::path dir = o.out;
                const std::vector<CsvColumn> tcols{{"t", t}, {"x", traj.x}, {"y", traj.y}, {"z", traj.z}};
                write_csv(dir / "trajectory.csv", cfg.hash(), tcols);
                const std::vector<CsvColumn> ccols{{"t_cross", crossings}};
                write_csv(dir / "crossings.csv", cfg.hash(), ccols);
            }
        } else if (name == "acf") {
            const auto iv = parse_interval(o.interval);
            const auto ln = build_ln_signal(o.count, cfg.scale, iv.end);
            const auto a = analyze_interval(ln.signal, iv, o.max_lag, cfg.period_options, cfg.scale);
            describe(out, a, cfg.disagreement_ratio);
            print_notes(err, a.notes);
            if (!o.out.empty()) {
                std::vector<double> tau(a.acf.values.size());
                for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = static_cast<double>(i);
                const std::vector<CsvColumn> cols{{"tau", tau, true}, {"c", a.acf.values}};
                write_csv(o.out, cfg.hash(), cols);
            }
        } else if (name == "model") {
            const auto r = run_fig3(cfg);
            out << "q = " << num(r.q) << ", flip probability = " << num(r.flip_probability)
                << ", realizations = " << cfg.realizations << "\n";
            out << "tau c_model c_mc se\n";
            for (std::size_t i = 0; i < r.analytic.size(); ++i)
                out << i << " " << num(r.analytic[i]) << " " << num(r.ensemble.series.values[i])
                    << " " << num(r.ensemble.standard_error[i], 3) << "\n";
            out << "max |mc - model| / se = " << num(r.max_z, 4) << "\n";
            if (!o.out.empty()) {
                auto c = cfg;
                const std::filesystem::path p = o.out;
                c.output_dir = p.parent_path();
                write_fig3(r, c, p.filename().string());
            }
        } else if (name == "k2") {
            const Interval iv = parse_interval(o.k2_interval);
            const auto r = run_fig567(cfg, std::span(&iv, 1));
            const auto& k = r.intervals.front();
            describe(out, k.analysis, cfg.disagreement_ratio);
            out << "  linear decay endpoint: "
                << (k.decay_endpoint ? std::to_string(*k.decay_endpoint) : "none") << "\n";
            out << "  sign changes inside: " << k.flip_count << "\n";
            print_notes(err, r.notes);
            if (!o.out.empty()) {
                auto c = cfg;
                const std::filesystem::path p = o.out;
                c.output_dir = p.parent_path();
                write_k2_dataset(k, c, p.filename().string());
            }
        } else if (name == "reproduce") {
            const auto wants = [&](char f) { return o.figure == "all" || o.figure == std::string(1, f); };
            std::vector<std::filesystem::path> written;
            if (wants('1') || wants('2')) {
                const auto r = run_fig1_fig2(cfg);
                if (wants('1')) describe(out, r.fig1, cfg.disagreement_ratio);
                if (wants('2')) describe(out, r.fig2, cfg.disagreement_ratio);
                out << "Rössler telegraph: first minimum " << num(r.rossler.first_minimum.half_period)
                    << " grid steps, spectral period " << num(r.rossler.fundamental_period)
                    << ", mean crossing interval " << num(r.rossler.mean_crossing_interval) << "\n";
                print_notes(err, r.notes);
                auto w = write_fig1_fig2(r, cfg, wants('1'), wants('2'));
                written.insert(written.end(), w.begin(), w.end());
            }
            if (wants('3')) {
                const auto r = run_fig3(cfg);
                out << "fig3: q = " << num(r.q) << ", max |mc - model| / se = " << num(r.max_z, 4)
                    << "\n";
                written.push_back(write_fig3(r, cfg));
            }
            std::vector<std::pair<Interval, std::string>> k2;
            for (char f : {'5', '6', '7'})
                if (wants(f))
                    k2.emplace_back(cfg.k2_intervals[static_cast<std::size_t>(f - '5')],
                                    std::string("fig") + f + ".csv");
            if (!k2.empty()) {
                std::vector<Interval> ivs;
                for (const auto& [iv, file] : k2) ivs.push_back(iv);
                const auto r = run_fig567(cfg, ivs);
                for (std::size_t i = 0; i < k2.size(); ++i) {
                    const auto& k = r.intervals[i];
                    describe(out, k.analysis, cfg.disagreement_ratio);
                    out << "  linear decay endpoint: "
                        << (k.decay_endpoint ? std::to_string(*k.decay_endpoint) : "none") << "\n";
                    written.push_back(write_k2_dataset(k, cfg, k2[i].second));
                }
                print_notes(err, r.notes);
            }
            for (const auto& p : written) out << "wrote " << p.string() << "\n";
        }
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: io-error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace primeperiod::cli
