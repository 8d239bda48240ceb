// recwalk -- CLI front end: closed-form tables, generating-function series,
// Monte Carlo simulation, and price-data record analysis.
//
// Output contract: one machine-readable table per run. CSV (default) carries a
// single `# manifest: {json}` preamble line followed by a header row and data
// rows; `--json` emits {"manifest": ..., "columns": [...], "rows": [{...}]}.
// Timestamps live only in the manifest, so reruns with identical parameters
// produce byte-identical data sections. Exit codes: 0 success, 2 usage error,
// 1 runtime/data error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "recwalk/analytic.hpp"
#include "recwalk/findata.hpp"
#include "recwalk/montecarlo.hpp"
#include "recwalk/series.hpp"
#include "recwalk/version.hpp"

namespace {

using ojson = nlohmann::ordered_json;

std::string now_utc() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct Table {
    ojson manifest;
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;

    void add_row(std::vector<ojson> cells) { rows.push_back(std::move(cells)); }
};

std::string format_cell(const ojson& cell) {
    if (cell.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", cell.get<double>());
        return buf;
    }
    if (cell.is_string()) return cell.get<std::string>();
    return cell.dump();
}

void write_table(const Table& table, bool as_json, const std::string& out_path) {
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    if (as_json) {
        ojson doc;
        doc["manifest"] = table.manifest;
        doc["columns"] = table.columns;
        ojson rows = ojson::array();
        for (const auto& r : table.rows) {
            ojson obj;
            for (std::size_t i = 0; i < table.columns.size(); ++i)
                obj[table.columns[i]] = r[i];
            rows.push_back(std::move(obj));
        }
        doc["rows"] = std::move(rows);
        out << doc.dump(2) << '\n';
        return;
    }

    out << "# manifest: " << table.manifest.dump() << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "," : "") << format_cell(r[i]);
        out << '\n';
    }
}

ojson base_manifest(const std::string& subcommand, ojson params) {
    ojson m;
    m["subcommand"] = subcommand;
    m["version"] = recwalk::kVersion;
    m["parameters"] = std::move(params);
    m["started"] = now_utc();
    return m;
}

// ---------------- theory ----------------

struct TheoryArgs {
    std::string quantity;
    std::string regime = "symmetric";
    double c = 0.0;
    double sigma = 1.0;
    long n_max = 100;
};

Table run_theory(const TheoryArgs& a) {
    using namespace recwalk::analytic;
    const DriftParams p{a.c, a.sigma};
    validate(p);

    Table t;
    t.manifest = base_manifest("theory", ojson{{"quantity", a.quantity},
                                               {"regime", a.regime},
                                               {"c", a.c},
                                               {"sigma", a.sigma},
                                               {"n_max", a.n_max}});

    const bool symmetric = a.regime == "symmetric";
    const bool small = a.regime == "small-drift";
    const bool large = a.regime == "large-drift";

    if (a.quantity == "asymptotic-rate") {
        if (a.c == 0.0)
            throw std::invalid_argument("asymptotic-rate requires a nonzero --c");
        t.columns = {"c", "sigma", "ratio", "rate", "small_branch", "large_branch",
                     "switch_ratio"};
        t.add_row({a.c, a.sigma, p.ratio(), asymptotic_record_rate(p),
                   asymptotic_record_rate_small_branch(p),
                   asymptotic_record_rate_large_branch(p),
                   asymptotic_rate_crossover_ratio()});
        return t;
    }
    if (a.quantity == "crossover") {
        if (a.c == 0.0) throw std::invalid_argument("crossover requires a nonzero --c");
        t.columns = {"c", "sigma", "n_star"};
        t.add_row({a.c, a.sigma, crossover_time(p)});
        return t;
    }

    // Per-step quantities. The asymptotic regimes start at n = 1 (their
    // formulas are undefined at n = 0); the exact symmetric forms start at 0.
    const long n_lo = symmetric ? 0 : 1;
    if (a.quantity == "record-rate") {
        t.columns = {"n", "record_rate"};
        for (long n = n_lo; n <= a.n_max; ++n) {
            const double v = symmetric ? record_rate_symmetric(n)
                             : small   ? record_rate_small_drift(n, p)
                                       : asymptotic_record_rate_large_branch(p);
            t.add_row({n, v});
        }
    } else if (a.quantity == "mean-records") {
        t.columns = {"n", "mean_records"};
        for (long n = n_lo; n <= a.n_max; ++n) {
            const double v = symmetric ? mean_records_symmetric(n)
                             : small   ? mean_records_small_drift(n, p)
                                       : mean_records_large_drift(n, p);
            t.add_row({n, v});
        }
    } else if (a.quantity == "survival") {
        t.columns = {"n", "q_plus", "q_minus"};
        for (long n = n_lo; n <= a.n_max; ++n) {
            double qp, qm;
            if (symmetric) {
                qp = qm = record_rate_symmetric(n);
            } else if (small) {
                qp = survival_small_drift(n, p, Sign::plus);
                qm = survival_small_drift(n, p, Sign::minus);
            } else {
                qp = asymptotic_record_rate_large_branch(p);  // saturation value
                qm = survival_large_drift(n, p);
            }
            t.add_row({n, qp, qm});
        }
    } else {  // first-passage
        t.columns = {"n", "f_plus", "f_minus"};
        if (symmetric) {
            t.add_row({0L, 0.0, 0.0});
            for (long n = 1; n <= a.n_max; ++n) {
                const double f = record_rate_symmetric(n - 1) - record_rate_symmetric(n);
                t.add_row({n, f, f});
            }
        } else if (small) {
            for (long n = 1; n <= a.n_max; ++n)
                t.add_row({n, first_passage_small_drift(n, p, Sign::plus),
                           first_passage_small_drift(n, p, Sign::minus)});
        } else {
            // Telescoped from the large-drift survival form, defined from n = 2.
            for (long n = 2; n <= a.n_max; ++n)
                t.add_row({n, 0.0,
                           survival_large_drift(n - 1, p) - survival_large_drift(n, p)});
        }
    }
    if (!symmetric && !small && !large)
        throw std::invalid_argument("unknown regime: " + a.regime);
    return t;
}

// ---------------- series ----------------

struct SeriesArgs {
    double c = 0.0;
    double sigma = 1.0;
    long order = 5000;
    std::string emit;
    long m = 1;
};

Table run_series(const SeriesArgs& a) {
    using namespace recwalk;
    const analytic::DriftParams p{a.c, a.sigma};
    analytic::validate(p);
    if (a.order < 0) throw std::invalid_argument("--order must be >= 0");
    if (a.m < 1) throw std::invalid_argument("--m must be >= 1");
    const auto N = std::size_t(a.order);

    Table t;
    t.manifest = base_manifest("series", ojson{{"c", a.c},
                                               {"sigma", a.sigma},
                                               {"order", a.order},
                                               {"emit", a.emit},
                                               {"m", a.m}});

    const auto p_minus = series::gaussian_sign_probabilities(p, analytic::Sign::minus, N);
    const auto q_minus = series::sparre_andersen_survival(p_minus);

    if (a.emit == "q" || a.emit == "f") {
        const auto p_plus = series::gaussian_sign_probabilities(p, analytic::Sign::plus, N);
        const auto q_plus = series::sparre_andersen_survival(p_plus);
        if (a.emit == "q") {
            t.columns = {"n", "q_plus", "q_minus"};
            for (std::size_t n = 0; n <= N; ++n)
                t.add_row({n, q_plus[n], q_minus[n]});
        } else {
            const auto f_plus = series::first_passage_from_survival(q_plus);
            const auto f_minus = series::first_passage_from_survival(q_minus);
            t.columns = {"n", "f_plus", "f_minus"};
            for (std::size_t n = 0; n <= N; ++n)
                t.add_row({n, f_plus[n], f_minus[n]});
        }
    } else if (a.emit == "pi") {
        const auto f_minus = series::first_passage_from_survival(q_minus);
        const auto pi =
            series::record_number_distribution(f_minus, q_minus, std::size_t(a.m));
        t.columns = {"n", "pi"};
        for (std::size_t n = 0; n <= N; ++n) t.add_row({n, pi[n]});
    } else if (a.emit == "mean") {
        const auto mean = series::mean_record_series(q_minus);
        t.columns = {"n", "mean_records"};
        for (std::size_t n = 0; n <= N; ++n) t.add_row({n, mean[n]});
    } else {  // rate
        const auto mean = series::mean_record_series(q_minus);
        const auto rate = series::record_rate_from_mean(mean);
        t.columns = {"n", "record_rate"};
        for (std::size_t n = 0; n <= N; ++n) t.add_row({n, rate[n]});
    }
    return t;
}

// ---------------- simulate ----------------

struct SimulateArgs {
    std::string dist = "gaussian";
    double c = 0.0;
    double sigma = 1.0;
    long steps = 100;
    long reals = 1'000'000;
    std::uint64_t seed = 42;
    std::string emit;
};

// The series engine is the exact reference but costs O(steps^2); skip the
// column for very long walks.
constexpr long kSeriesRefMaxSteps = 20'000;

Table run_simulate(const SimulateArgs& a) {
    using namespace recwalk;
    mc::SimConfig cfg;
    cfg.jump = a.dist == "uniform" ? mc::JumpFamily::uniform : mc::JumpFamily::gaussian;
    cfg.c = a.c;
    cfg.sigma = a.sigma;
    cfg.n_steps = std::size_t(a.steps);
    cfg.n_realizations = std::size_t(a.reals);
    cfg.seed = a.seed;
    mc::validate(cfg);
    const analytic::DriftParams p{a.c, a.sigma};
    const bool symmetric = a.c == 0.0;
    const bool with_series = a.steps <= kSeriesRefMaxSteps;

    Table t;
    t.manifest = base_manifest("simulate", ojson{{"dist", a.dist},
                                                 {"c", a.c},
                                                 {"sigma", a.sigma},
                                                 {"steps", a.steps},
                                                 {"reals", a.reals},
                                                 {"seed", a.seed},
                                                 {"emit", a.emit}});
    t.manifest["workers"] = mc::resolve_workers(0);

    if (a.emit == "scaling") {
        if (!(a.c > 0.0))
            throw std::invalid_argument("--emit scaling requires a positive --c");
        const double cs[] = {a.c};
        const auto pts = mc::estimate_scaling_function(cs, cfg);
        t.columns = {"c", "n", "x", "g", "g_std_error", "g_ref"};
        for (const auto& pt : pts)
            t.add_row({pt.c, pt.n, pt.x, pt.g, pt.g_std_error,
                       analytic::scaling_function_limits(pt.x)});
        return t;
    }

    const bool survival = a.emit == "survival-pos" || a.emit == "survival-neg";
    t.columns = {"n", "estimate", "std_error", "analytic_ref"};
    if (with_series) t.columns.push_back("series_ref");

    std::vector<mc::SimEstimate> est;
    std::vector<double> series_ref;
    std::function<double(std::size_t)> analytic_ref;

    if (survival) {
        const auto sign =
            a.emit == "survival-pos" ? analytic::Sign::plus : analytic::Sign::minus;
        est = mc::simulate_survival(cfg, sign);
        analytic_ref = [=](std::size_t n) {
            if (n == 0) return 1.0;
            return symmetric ? analytic::record_rate_symmetric(long(n))
                             : analytic::survival_small_drift(long(n), p, sign);
        };
        if (with_series) {
            const auto ps = series::gaussian_sign_probabilities(p, sign, cfg.n_steps);
            series_ref = series::sparre_andersen_survival(ps).coeffs;
        }
    } else if (a.emit == "record-rate" || a.emit == "mean-records") {
        const auto res = mc::simulate_record_stats(cfg);
        const bool rate = a.emit == "record-rate";
        est = rate ? res.upper_rate : res.upper_mean;
        analytic_ref = [=](std::size_t n) {
            if (n == 0) return 1.0;
            if (rate)
                return symmetric ? analytic::record_rate_symmetric(long(n))
                                 : analytic::record_rate_small_drift(long(n), p);
            return symmetric ? analytic::mean_records_symmetric(long(n))
                             : analytic::mean_records_small_drift(long(n), p);
        };
        if (with_series) {
            const auto pm =
                series::gaussian_sign_probabilities(p, analytic::Sign::minus, cfg.n_steps);
            const auto qm = series::sparre_andersen_survival(pm);
            const auto mean = series::mean_record_series(qm);
            series_ref =
                rate ? series::record_rate_from_mean(mean).coeffs : mean.coeffs;
        }
    } else {
        throw std::invalid_argument("unknown --emit: " + a.emit);
    }

    for (std::size_t n = 0; n < est.size(); ++n) {
        std::vector<ojson> row{n, est[n].value, est[n].std_error, analytic_ref(n)};
        if (with_series) row.push_back(series_ref[n]);
        t.add_row(std::move(row));
    }
    return t;
}

// ---------------- analyze ----------------

struct AnalyzeArgs {
    std::string input;
    std::vector<double> synthetic;  // n_tickers, n_steps, mean_c_over_sigma
    std::string emit;
    long window_len = 0;
    std::string sigma_mode = "detrended";
    std::uint64_t seed = 42;
};

Table run_analyze(const AnalyzeArgs& a) {
    using namespace recwalk::findata;

    ojson params{{"emit", a.emit}, {"sigma_mode", a.sigma_mode}, {"seed", a.seed}};
    if (!a.input.empty()) params["input"] = a.input;
    if (a.window_len > 0) params["window_len"] = a.window_len;

    std::vector<PriceSeries> series;
    std::vector<std::string> warnings;
    if (!a.input.empty()) {
        LoadOptions opt;
        opt.min_rows = 3;  // downstream trend fits need >= 3 rows
        series = load_prices_file(a.input, opt, &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
        if (series.empty()) throw std::runtime_error("no usable series in " + a.input);
    } else {
        SyntheticSpec spec;
        spec.n_tickers = std::size_t(a.synthetic[0]);
        spec.n_steps = std::size_t(a.synthetic[1]);
        spec.mean_c_over_sigma = a.synthetic[2];
        spec.seed = a.seed;
        params["synthetic"] = ojson{{"n_tickers", spec.n_tickers},
                                    {"n_steps", spec.n_steps},
                                    {"mean_c_over_sigma", spec.mean_c_over_sigma}};
        series = synthetic_ensemble(spec);
    }

    Table t;
    t.manifest = base_manifest("analyze", std::move(params));
    t.manifest["n_tickers_loaded"] = series.size();

    if (a.emit == "raw-records" || a.emit == "detrended-records") {
        const auto reports = detrended_record_counts(series);
        t.manifest["n_series"] = reports.raw.n_series;
        t.manifest["horizon"] = reports.raw.horizon;
        if (a.emit == "raw-records") {
            t.columns = {"step", "upper_mean", "lower_mean"};
            for (std::size_t k = 0; k <= reports.raw.horizon; ++k)
                t.add_row({k, reports.raw.upper_mean[k], reports.raw.lower_mean[k]});
        } else {
            t.columns = {"step", "raw_upper_mean", "raw_lower_mean",
                         "detrended_upper_mean", "detrended_lower_mean"};
            for (std::size_t k = 0; k <= reports.raw.horizon; ++k)
                t.add_row({k, reports.raw.upper_mean[k], reports.raw.lower_mean[k],
                           reports.detrended.upper_mean[k],
                           reports.detrended.lower_mean[k]});
        }
    } else if (a.emit == "windowed") {
        if (a.window_len <= 0)
            throw std::invalid_argument("--emit windowed requires --window-len");
        const auto report = windowed_analysis(series, std::size_t(a.window_len));
        t.manifest["n_windows"] = report.n_series;
        t.columns = {"step", "upper_mean", "lower_mean"};
        for (std::size_t k = 0; k <= report.horizon; ++k)
            t.add_row({k, report.upper_mean[k], report.lower_mean[k]});
    } else if (a.emit == "drift-summary") {
        const auto mode =
            a.sigma_mode == "raw" ? SigmaMode::raw : SigmaMode::detrended;
        std::vector<DetrendFit> fits;
        fits.reserve(series.size());
        t.columns = {"ticker", "c_hat", "sigma_hat", "c_over_sigma", "degenerate"};
        for (const auto& s : series) {
            fits.push_back(fit_linear_trend(log_transform(s), mode));
            const auto& f = fits.back();
            std::vector<ojson> row{s.ticker, f.c_hat, f.sigma_hat, nullptr,
                                   f.degenerate};
            if (!f.degenerate) row[3] = f.c_hat / f.sigma_hat;
            t.add_row(std::move(row));
        }
        t.manifest["normalized_drift_average"] = normalized_drift_average(fits);
    } else {
        throw std::invalid_argument("unknown --emit: " + a.emit);
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Record statistics of drifted random walks: closed-form tables, "
                 "generating-function series, Monte Carlo simulation, and daily-price "
                 "record analysis."};
    app.require_subcommand(1);

    bool as_json = false;
    std::string out_path;
    const auto add_io = [&](CLI::App* sub) {
        sub->add_flag("--json", as_json, "emit JSON instead of CSV");
        sub->add_option("--output,-o", out_path, "write the table to a file (default: stdout)");
    };

    TheoryArgs ta;
    auto* theory = app.add_subcommand("theory", "closed-form and asymptotic formulas");
    theory->add_option("--quantity", ta.quantity, "what to tabulate")
        ->required()
        ->check(CLI::IsMember({"record-rate", "mean-records", "survival", "first-passage",
                               "asymptotic-rate", "crossover"}));
    theory->add_option("--regime", ta.regime, "formula regime")
        ->capture_default_str()
        ->check(CLI::IsMember({"symmetric", "small-drift", "large-drift"}));
    theory->add_option("--c", ta.c, "drift per step")->capture_default_str();
    theory->add_option("--sigma", ta.sigma, "jump standard deviation")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    theory->add_option("--n-max", ta.n_max, "largest step index")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    add_io(theory);

    SeriesArgs sa;
    auto* series_cmd = app.add_subcommand(
        "series", "exact generating-function series for arbitrary drift");
    series_cmd->add_option("--c", sa.c, "drift per step")->capture_default_str();
    series_cmd->add_option("--sigma", sa.sigma, "jump standard deviation")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    series_cmd->add_option("--order", sa.order, "truncation order N")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    series_cmd->add_option("--emit", sa.emit, "which series to print")
        ->required()
        ->check(CLI::IsMember({"q", "f", "pi", "mean", "rate"}));
    series_cmd->add_option("--m", sa.m, "record count for --emit pi")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_io(series_cmd);

    SimulateArgs ma;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo walk simulation");
    simulate->add_option("--dist", ma.dist, "jump distribution")
        ->capture_default_str()
        ->check(CLI::IsMember({"gaussian", "uniform"}));
    simulate->add_option("--c", ma.c, "drift per step")->capture_default_str();
    simulate->add_option("--sigma", ma.sigma, "jump standard deviation")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--steps", ma.steps, "walk length")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--reals", ma.reals, "number of realizations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", ma.seed, "RNG seed")->capture_default_str();
    simulate->add_option("--emit", ma.emit, "which estimate to print")
        ->required()
        ->check(CLI::IsMember(
            {"record-rate", "mean-records", "survival-pos", "survival-neg", "scaling"}));
    add_io(simulate);

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "record analysis of daily price data");
    auto* input_opt =
        analyze->add_option("--input", aa.input, "CSV with columns date,ticker,close");
    auto* synth_opt =
        analyze
            ->add_option("--synthetic", aa.synthetic,
                         "generate a fixture: n_tickers n_steps mean_c_over_sigma")
            ->expected(3);
    input_opt->excludes(synth_opt);
    analyze->add_option("--emit", aa.emit, "which report to print")
        ->required()
        ->check(CLI::IsMember(
            {"raw-records", "detrended-records", "windowed", "drift-summary"}));
    analyze->add_option("--window-len", aa.window_len, "window length for --emit windowed")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--sigma-mode", aa.sigma_mode,
                        "increment source for sigma_hat")
        ->capture_default_str()
        ->check(CLI::IsMember({"raw", "detrended"}));
    analyze->add_option("--seed", aa.seed, "RNG seed for --synthetic")
        ->capture_default_str();
    add_io(analyze);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        Table t;
        if (theory->parsed()) {
            t = run_theory(ta);
        } else if (series_cmd->parsed()) {
            t = run_series(sa);
        } else if (simulate->parsed()) {
            t = run_simulate(ma);
        } else {
            if (aa.input.empty() && aa.synthetic.size() != 3) {
                std::cerr << "error: analyze needs --input or --synthetic\n";
                return 2;
            }
            t = run_analyze(aa);
        }
        t.manifest["finished"] = now_utc();
        write_table(t, as_json, out_path);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
