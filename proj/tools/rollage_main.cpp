// Command-line surface: simulate, gen-model, acf, pacf, fit-ar, rollage,
// durbin, experiment. Exit codes: 0 ok, 2 usage/validation, 3 I/O,
// 4 total experiment failure.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "experiment.hpp"
#include "rollage/rollage.hpp"

namespace fs = std::filesystem;
using namespace rollage;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitExperimentFailed = 4;

struct GlobalFlags {
    std::uint64_t seed = 0;
    std::string out;
    bool quiet = false;
    bool no_center = false;
};

void say(const GlobalFlags& flags, const std::string& message) {
    if (!flags.quiet) std::cout << message << '\n';
}

fs::path require_out(const GlobalFlags& flags) {
    if (flags.out.empty()) throw InvalidArgument("--out is required");
    return flags.out;
}

TimeSeries load_input(const std::string& input, const GlobalFlags& flags) {
    return read_series_csv(input, /*mean_center=*/!flags.no_center);
}

int cmd_simulate(const GlobalFlags& flags, const std::string& model_path, int n, int burn_in) {
    const ModelSpec spec = read_model_json(model_path);
    if (n < 1) throw InvalidArgument("--n must be at least 1");
    const TimeSeries series = simulate(spec, n, flags.seed, burn_in);
    const fs::path out = require_out(flags);
    write_series_csv(out, series);
    fs::path meta_path = out;
    meta_path.replace_extension(".meta.json");
    write_text_file(meta_path, series_meta_to_json(*series.meta).dump(2) + "\n");
    say(flags, "wrote " + out.string() + " and " + meta_path.string());
    return kExitOk;
}

int cmd_gen_model(const GlobalFlags& flags, const std::string& kind, int p, int q,
                  double partial_range) {
    const ModelSpec spec = random_model(model_kind_from_string(kind), p, q, flags.seed, partial_range);
    write_model_json(require_out(flags), spec);
    say(flags, "wrote " + flags.out);
    return kExitOk;
}

int cmd_acf(const GlobalFlags& flags, const std::string& input, int max_lag) {
    const TimeSeries series = load_input(input, flags);
    const SampleAcf acf = sample_acf(series, max_lag);
    std::string out = "lag,gamma_hat,acf_hat\n";
    char buf[80];
    for (int h = 0; h <= max_lag; ++h) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", h, acf.gamma_hat[static_cast<size_t>(h)],
                      acf.acf_hat[static_cast<size_t>(h)]);
        out += buf;
    }
    write_text_file(require_out(flags), out);
    return kExitOk;
}

int cmd_pacf(const GlobalFlags& flags, const std::string& input, int pbar) {
    const TimeSeries series = load_input(input, flags);
    const auto table = levinson_all_orders(sample_acf(series, pbar), pbar);
    const Pacf result = pacf(table);
    std::string out = "lag,pacf,boundary\n";
    char buf[80];
    for (int l = 1; l <= pbar; ++l) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", l,
                      result.values[static_cast<size_t>(l) - 1], result.boundary);
        out += buf;
    }
    write_text_file(require_out(flags), out);
    return kExitOk;
}

int cmd_fit_ar(const GlobalFlags& flags, const std::string& input, int order,
               const std::string& method) {
    const TimeSeries series = load_input(input, flags);
    const FitMethod fit_method = fit_method_from_string(method);
    const CoefficientTable table = fit_method == FitMethod::YuleWalkerLd
                                       ? levinson_all_orders(sample_acf(series, order), order)
                                       : cmle_all_orders(series, order);
    nlohmann::json j = coefficient_table_to_json(table);
    if (series.meta) j["subtracted_mean"] = series.meta->subtracted_mean;
    write_text_file(require_out(flags), j.dump(2) + "\n");
    return kExitOk;
}

int cmd_rollage(const GlobalFlags& flags, const std::string& input, int pbar,
                const std::string& rule, double delta, const std::string& method,
                const std::string& ra_table_path) {
    const TimeSeries series = load_input(input, flags);
    const int n = series.n();
    if (pbar <= 0) {
        const double hint = predict_ptilde_linear({}, 0, n, ModelKind::MA, PtildeCriterion::RollageStar);
        pbar = std::clamp(static_cast<int>(std::ceil(hint * 1.25)), 2, std::max(2, n / 20));
    }
    SelectionOptions options;
    options.rule = rule == "frac5" ? SelectionRule::Rollage5Pct : SelectionRule::RollageStarDelta;
    options.delta = delta;
    options.method = fit_method_from_string(method);
    const OrderSelectionReport report = select_order_rollage(series, pbar, options);
    nlohmann::json j = selection_report_to_json(report);
    if (series.meta) j["subtracted_mean"] = series.meta->subtracted_mean;
    write_text_file(require_out(flags), j.dump(2) + "\n");
    if (!ra_table_path.empty()) {
        const auto table = options.method == FitMethod::YuleWalkerLd
                               ? levinson_all_orders(sample_acf(series, pbar), pbar)
                               : cmle_all_orders(series, pbar);
        write_ra_table_csv(ra_table_path, rolling_average_table(table), n);
    }
    say(flags, "p_hat = " + std::to_string(report.p_hat));
    return kExitOk;
}

int cmd_durbin(const GlobalFlags& flags, const std::string& input, int q, int p,
               const std::string& criterion, double delta, int ptilde, int pbar, double alpha,
               const std::string& truth_path, const std::string& curve_path) {
    const TimeSeries series = load_input(input, flags);
    PtildeRule rule;
    rule.criterion = ptilde_criterion_from_string(criterion);
    rule.delta = delta;
    rule.pbar = pbar;
    rule.alpha = alpha;
    if (rule.criterion == PtildeCriterion::Fixed) {
        if (ptilde <= 0) throw InvalidArgument("--criterion fixed requires --ptilde");
        rule.fixed_ptilde = ptilde;
    } else if (ptilde > 0) {
        throw InvalidArgument("--ptilde only applies to --criterion fixed");
    }

    if (!curve_path.empty()) {
        if (rule.criterion != PtildeCriterion::Bic && rule.criterion != PtildeCriterion::Gic) {
            throw InvalidArgument("--emit-curve applies to --criterion bic or gic");
        }
        const ModelKind kind = p > 0 ? ModelKind::ARMA : ModelKind::MA;
        const int cap = rule.pbar > 0
                            ? rule.pbar
                            : default_pbar(kind, p > 0 ? std::optional<int>(p) : std::nullopt, q,
                                           series.n());
        const CriterionCurve curve = rule.criterion == PtildeCriterion::Bic
                                         ? bic_curve(series, cap)
                                         : gic_curve(series, cap, rule.alpha);
        write_criterion_curve_csv(curve_path, curve);
        fs::path argmin_path = curve_path;
        argmin_path.replace_extension(".argmin.json");
        nlohmann::json aj{{"criterion", to_string(curve.criterion)}, {"argmin", curve.argmin}};
        if (rule.criterion == PtildeCriterion::Gic) aj["alpha"] = rule.alpha;
        write_text_file(argmin_path, aj.dump(2) + "\n");
    }

    const DurbinFit fit =
        p > 0 ? fit_arma_durbin(series, p, q, rule) : fit_ma_durbin(series, q, rule);

    std::optional<double> rel_error;
    if (!truth_path.empty()) {
        const ModelSpec truth = read_model_json(truth_path);
        std::vector<double> estimate = fit.phi_hat;
        estimate.insert(estimate.end(), fit.theta_hat.begin(), fit.theta_hat.end());
        std::vector<double> expected = truth.phi;
        expected.insert(expected.end(), truth.theta.begin(), truth.theta.end());
        rel_error = relative_error(estimate, expected);
    }
    nlohmann::json j = durbin_fit_to_json(fit, rel_error);
    if (series.meta) j["subtracted_mean"] = series.meta->subtracted_mean;
    write_text_file(require_out(flags), j.dump(2) + "\n");
    say(flags, "ptilde = " + std::to_string(fit.ptilde));
    return kExitOk;
}

int cmd_experiment(const GlobalFlags& flags, const std::string& config_path) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(config_path));
    harness::ExperimentConfig config = harness::parse_experiment_config(j);
    if (!flags.out.empty()) config.output_dir = flags.out;
    if (config.output_dir.empty()) throw InvalidArgument("output_dir (or --out) is required");
    const auto outcome = harness::run_experiment(config);
    say(flags, "completed=" + std::to_string(outcome.completed) +
                   " failed=" + std::to_string(outcome.failed) +
                   " skipped=" + std::to_string(outcome.skipped));
    if (outcome.completed == 0 && outcome.skipped == 0) return kExitExperimentFailed;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rolling-average AR order selection and two-stage ARMA estimation"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--seed", flags.seed, "PRNG seed")->capture_default_str();
    app.add_option("--out", flags.out, "output path (file or directory)");
    app.add_flag("--quiet", flags.quiet, "suppress progress messages");
    app.add_flag("--no-center", flags.no_center, "do not mean-center ingested series");
    app.fallthrough();  // global flags may follow the subcommand

    std::string model_path, input, kind = "ar", method = "yw", rule = "delta";
    std::string criterion = "rollage", truth_path, config_path, ra_table_path, curve_path;
    int n = 0, burn_in = -1, p = 0, q = 0, max_lag = 40, order = 1, pbar = 0, ptilde = 0;
    double partial_range = 1.0, delta = 3.0, alpha = 1.0;

    auto* simulate_cmd = app.add_subcommand("simulate", "generate a synthetic realization");
    simulate_cmd->add_option("--model", model_path, "model JSON path")->required();
    simulate_cmd->add_option("--n", n, "series length")->required();
    simulate_cmd->add_option("--burn-in", burn_in, "burn-in steps (-1 = model default)");

    auto* gen_cmd = app.add_subcommand("gen-model", "draw a random causal/invertible model");
    gen_cmd->add_option("--kind", kind, "ar|ma|arma")->required();
    gen_cmd->add_option("--p", p, "AR order");
    gen_cmd->add_option("--q", q, "MA order");
    gen_cmd->add_option("--partial-range", partial_range, "partial-autocorrelation range");

    auto* acf_cmd = app.add_subcommand("acf", "sample autocovariances/autocorrelations");
    acf_cmd->add_option("--input", input, "series CSV")->required();
    acf_cmd->add_option("--max-lag", max_lag, "largest lag");

    auto* pacf_cmd = app.add_subcommand("pacf", "sample partial autocorrelations");
    pacf_cmd->add_option("--input", input, "series CSV")->required();
    pacf_cmd->add_option("--pbar", pbar, "largest order")->required();

    auto* fit_cmd = app.add_subcommand("fit-ar", "fit AR models up to an order");
    fit_cmd->add_option("--input", input, "series CSV")->required();
    fit_cmd->add_option("--order", order, "AR order")->required();
    fit_cmd->add_option("--method", method, "yw|cmle");

    auto* rollage_cmd = app.add_subcommand("rollage", "rolling-average AR order selection");
    rollage_cmd->add_option("--input", input, "series CSV")->required();
    rollage_cmd->add_option("--pbar", pbar, "scan cap (default: sized from n)");
    rollage_cmd->add_option("--rule", rule, "delta|frac5");
    rollage_cmd->add_option("--delta", delta, "significance threshold");
    rollage_cmd->add_option("--method", method, "yw|cmle");
    rollage_cmd->add_option("--emit-ra-table", ra_table_path, "dump the rolling-average table CSV");

    auto* durbin_cmd = app.add_subcommand("durbin", "two-stage MA/ARMA fit");
    durbin_cmd->add_option("--input", input, "series CSV")->required();
    durbin_cmd->add_option("--q", q, "MA order")->required();
    durbin_cmd->add_option("--p", p, "AR order (ARMA when > 0)");
    durbin_cmd->add_option("--criterion", criterion, "rollage|bic|gic|fixed");
    durbin_cmd->add_option("--delta", delta, "threshold for the rollage criterion");
    durbin_cmd->add_option("--ptilde", ptilde, "long-AR order for --criterion fixed");
    durbin_cmd->add_option("--pbar", pbar, "scan cap (default: linear predictor)");
    durbin_cmd->add_option("--alpha", alpha, "GIC penalty factor");
    durbin_cmd->add_option("--truth", truth_path, "model JSON to score against");
    durbin_cmd->add_option("--emit-curve", curve_path, "dump the BIC/GIC curve CSV (+ argmin sidecar)");

    auto* exp_cmd = app.add_subcommand("experiment", "run a (model, n, seed, criterion) grid");
    exp_cmd->add_option("--config", config_path, "experiment config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(flags, model_path, n, burn_in);
        if (gen_cmd->parsed()) return cmd_gen_model(flags, kind, p, q, partial_range);
        if (acf_cmd->parsed()) return cmd_acf(flags, input, max_lag);
        if (pacf_cmd->parsed()) return cmd_pacf(flags, input, pbar);
        if (fit_cmd->parsed()) return cmd_fit_ar(flags, input, order, method);
        if (rollage_cmd->parsed())
            return cmd_rollage(flags, input, pbar, rule, delta, method, ra_table_path);
        if (durbin_cmd->parsed())
            return cmd_durbin(flags, input, q, p, criterion, delta, ptilde, pbar, alpha, truth_path,
                              curve_path);
        if (exp_cmd->parsed()) return cmd_experiment(flags, config_path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
