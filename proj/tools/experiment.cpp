#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rollage/criteria.hpp"
#include "rollage/errors.hpp"
#include "rollage/io.hpp"
#include "rollage/rolling_average.hpp"
#include "rollage/simulate.hpp"

namespace rollage::harness {

namespace fs = std::filesystem;

namespace {

constexpr const char* kResultsHeader =
    "model_id,kind,p,q,n,seed,criterion,ptilde,p_hat,relative_error,wall_time_ms,error";

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t hash_string(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) h = mix64(h ^ c);
    return h;
}

struct Cell {
    int index = 0;
    const ModelEntry* model = nullptr;
    int n = 0;
    std::uint64_t seed = 0;
    PtildeCriterion criterion = PtildeCriterion::RollageStar;
};

std::string cell_key(const ExperimentConfig& config, const Cell& cell) {
    std::uint64_t h = 0x51A7C3B9D02E6F45ull;
    h = hash_string(h, model_spec_to_json(cell.model->spec).dump());
    h = hash_string(h, cell.model->id);
    h = mix64(h ^ static_cast<std::uint64_t>(cell.n));
    h = mix64(h ^ cell.seed);
    h = hash_string(h, to_string(cell.criterion));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(config.delta));
    h = mix64(h ^ static_cast<std::uint64_t>(config.pbar_rule.fixed ? config.pbar_rule.value : -1));
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct RowResult {
    std::optional<int> ptilde;
    std::optional<int> p_hat;
    std::optional<double> relative_error;
    double wall_time_ms = 0.0;
    std::string error;
};

std::vector<double> padded(const std::vector<double>& v, size_t len) {
    std::vector<double> out(v);
    out.resize(len, 0.0);
    return out;
}

int scan_cap(const ExperimentConfig& config, const ModelSpec& spec, int n) {
    if (config.pbar_rule.fixed) return config.pbar_rule.value;
    if (spec.q() == 0) {
        // AR selection: size the scan from the q = 0 predictor
        const double hint =
            predict_ptilde_linear({}, 0, n, ModelKind::MA, PtildeCriterion::RollageStar);
        const int cap = std::max(2, static_cast<int>(n / 20));
        return std::clamp(static_cast<int>(std::ceil(hint * 1.25)), 2, cap);
    }
    return default_pbar(spec.kind, spec.p() > 0 ? std::optional<int>(spec.p()) : std::nullopt,
                        spec.q(), n);
}

RowResult run_cell(const ExperimentConfig& config, const Cell& cell) {
    RowResult row;
    try {
        const ModelSpec& spec = cell.model->spec;
        const TimeSeries series = simulate(spec, cell.n, cell.seed);
        const int pbar = scan_cap(config, spec, cell.n);

        const auto started = std::chrono::steady_clock::now();
        if (spec.q() == 0) {
            // pure AR cell: the criterion plays order selector
            int p_hat = 0;
            std::vector<double> estimate;
            if (cell.criterion == PtildeCriterion::RollageStar) {
                SelectionOptions options;
                options.delta = config.delta;
                auto report = select_order_rollage(series, pbar, options);
                p_hat = report.p_hat;
                estimate = report.phi_hat;
            } else {
                auto curve = cell.criterion == PtildeCriterion::Bic
                                 ? bic_curve(series, pbar)
                                 : gic_curve(series, pbar);
                p_hat = curve.argmin;
                estimate = fit_ar_cmle(series, p_hat).coefficients;
            }
            row.p_hat = p_hat;
            const size_t len = std::max(estimate.size(), spec.phi.size());
            if (!spec.phi.empty()) {
                row.relative_error = relative_error(padded(estimate, len), padded(spec.phi, len));
            }
        } else {
            PtildeRule rule;
            rule.criterion = cell.criterion;
            rule.delta = config.delta;
            rule.pbar = pbar;
            const DurbinFit fit = spec.p() == 0
                                      ? fit_ma_durbin(series, spec.q(), rule)
                                      : fit_arma_durbin(series, spec.p(), spec.q(), rule);
            row.ptilde = fit.ptilde;
            std::vector<double> estimate = fit.phi_hat;
            estimate.insert(estimate.end(), fit.theta_hat.begin(), fit.theta_hat.end());
            std::vector<double> truth = spec.phi;
            truth.insert(truth.end(), spec.theta.begin(), spec.theta.end());
            row.relative_error = relative_error(estimate, truth);
        }
        const auto elapsed = std::chrono::steady_clock::now() - started;
        row.wall_time_ms = std::max(
            std::chrono::duration<double, std::milli>(elapsed).count(), 1e-3);
    } catch (const std::exception& e) {
        row.error = e.what();
        row.wall_time_ms = 1e-3;
    }
    return row;
}

std::string render_row(const Cell& cell, const RowResult& row) {
    std::ostringstream out;
    out << cell.model->id << ',' << to_string(cell.model->spec.kind) << ','
        << cell.model->spec.p() << ',' << cell.model->spec.q() << ',' << cell.n << ','
        << cell.seed << ',' << to_string(cell.criterion) << ',';
    if (row.ptilde) out << *row.ptilde;
    out << ',';
    if (row.p_hat) out << *row.p_hat;
    out << ',';
    if (row.relative_error) out << format_double(*row.relative_error);
    out << ',' << format_double(row.wall_time_ms) << ',';
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << err << '\n';
    return out.str();
}

struct CsvRow {
    std::string model_id, kind, criterion, error;
    int p = 0, q = 0, n = 0;
    std::uint64_t seed = 0;
    std::optional<int> ptilde, p_hat;
    std::optional<double> relative_error;
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<CsvRow> read_results_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);  // header
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 12) continue;
        CsvRow row;
        row.model_id = f[0];
        row.kind = f[1];
        row.p = std::stoi(f[2]);
        row.q = std::stoi(f[3]);
        row.n = std::stoi(f[4]);
        row.seed = std::stoull(f[5]);
        row.criterion = f[6];
        if (!f[7].empty()) row.ptilde = std::stoi(f[7]);
        if (!f[8].empty()) row.p_hat = std::stoi(f[8]);
        if (!f[9].empty()) row.relative_error = std::stod(f[9]);
        row.error = f[11];
        rows.push_back(std::move(row));
    }
    return rows;
}

struct Aggregate {
    double ptilde_sum = 0.0;
    int ptilde_count = 0;
    double err_sum = 0.0;
    int err_count = 0;
    int rows = 0;

    nlohmann::json to_json() const {
        nlohmann::json j{{"rows", rows}};
        if (ptilde_count > 0) j["mean_ptilde"] = ptilde_sum / ptilde_count;
        if (err_count > 0) j["mean_relative_error"] = err_sum / err_count;
        return j;
    }
};

void write_summaries(const ExperimentConfig& config) {
    const auto rows = read_results_csv(config.output_dir / "results.csv");

    std::map<std::pair<std::string, int>, Aggregate> by_criterion_n;
    std::map<std::tuple<std::string, int, int>, Aggregate> by_cnq;   // (criterion, n, q)
    std::map<std::tuple<std::string, int, int>, Aggregate> by_cqn;   // (criterion, q, n)
    for (const auto& row : rows) {
        if (!row.error.empty()) continue;
        auto add = [&row](Aggregate& agg) {
            agg.rows += 1;
            if (row.ptilde) {
                agg.ptilde_sum += *row.ptilde;
                agg.ptilde_count += 1;
            }
            if (row.relative_error) {
                agg.err_sum += *row.relative_error;
                agg.err_count += 1;
            }
        };
        add(by_criterion_n[{row.criterion, row.n}]);
        if (row.q > 0) {
            add(by_cnq[{row.criterion, row.n, row.q}]);
            add(by_cqn[{row.criterion, row.q, row.n}]);
        }
    }

    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [key, agg] : by_criterion_n) {
        nlohmann::json j = agg.to_json();
        j["criterion"] = key.first;
        j["n"] = key.second;
        cells.push_back(std::move(j));
    }
    nlohmann::json summary{{"by_criterion_n", std::move(cells)}};
    write_text_file(config.output_dir / "summary.json", summary.dump(2) + "\n");

    // plot-ready marginals, one value column per figure
    auto write_marginal = [&](const fs::path& name, const auto& groups, const char* axes,
                              bool want_ptilde) {
        std::string out = std::string("criterion,") + axes + (want_ptilde ? ",mean_ptilde\n" : ",mean_relative_error\n");
        for (const auto& [key, agg] : groups) {
            const bool have = want_ptilde ? agg.ptilde_count > 0 : agg.err_count > 0;
            if (!have) continue;
            out += std::get<0>(key) + ',' + std::to_string(std::get<1>(key)) + ',' +
                   std::to_string(std::get<2>(key)) + ',';
            out += want_ptilde ? format_double(agg.ptilde_sum / agg.ptilde_count)
                               : format_double(agg.err_sum / agg.err_count);
            out += '\n';
        }
        write_text_file(config.output_dir / name, out);
    };
    write_marginal("fig_ptilde_vs_q.csv", by_cnq, "n,q", true);
    write_marginal("fig_relerror_vs_q.csv", by_cnq, "n,q", false);
    write_marginal("fig_ptilde_vs_n.csv", by_cqn, "q,n", true);
    write_marginal("fig_relerror_vs_n.csv", by_cqn, "q,n", false);
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
    ExperimentConfig config;
    int index = 0;
    for (const auto& entry : j.at("models")) {
        ModelEntry model;
        model.id = entry.value("id", "m" + std::to_string(index));
        if (entry.contains("phi") || entry.contains("theta")) {
            model.spec = model_spec_from_json(entry);
        } else {
            model.spec = random_model(model_kind_from_string(entry.at("kind").get<std::string>()),
                                      entry.value("p", 0), entry.value("q", 0),
                                      entry.value("seed", std::uint64_t{0}),
                                      entry.value("partial_range", 1.0));
        }
        config.models.push_back(std::move(model));
        ++index;
    }
    config.sample_sizes = j.at("sample_sizes").get<std::vector<int>>();
    config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& c : j.at("criteria")) {
        const auto criterion = ptilde_criterion_from_string(c.get<std::string>());
        if (criterion == PtildeCriterion::Fixed) {
            throw InvalidArgument("experiment criteria must be rollage, bic, or gic");
        }
        config.criteria.push_back(criterion);
    }
    config.delta = j.value("delta", 3.0);
    if (j.contains("pbar_rule")) {
        const auto& rule = j.at("pbar_rule");
        const std::string kind = rule.at("rule").get<std::string>();
        if (kind == "fixed") {
            config.pbar_rule.fixed = true;
            config.pbar_rule.value = rule.at("value").get<int>();
        } else if (kind != "linear_predictor") {
            throw InvalidArgument("pbar_rule.rule must be linear_predictor or fixed");
        }
    }
    if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();
    config.parallelism = std::max(1, j.value("parallelism", 1));

    if (config.models.empty() || config.sample_sizes.empty() || config.seeds.empty() ||
        config.criteria.empty()) {
        throw InvalidArgument("models, sample_sizes, seeds, and criteria must be non-empty");
    }
    if (!(config.delta > 0.0)) throw InvalidArgument("delta must be positive");
    return config;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    fs::create_directories(config.output_dir);
    const fs::path results_path = config.output_dir / "results.csv";
    const fs::path journal_path = config.output_dir / "journal.txt";

    std::set<std::string> journal;
    if (fs::exists(journal_path)) {
        std::ifstream in(journal_path);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) journal.insert(line);
        }
    }

    std::vector<Cell> cells;
    int index = 0;
    for (const auto& model : config.models) {
        for (int n : config.sample_sizes) {
            for (std::uint64_t seed : config.seeds) {
                for (auto criterion : config.criteria) {
                    cells.push_back(Cell{index++, &model, n, seed, criterion});
                }
            }
        }
    }

    const bool fresh = !fs::exists(results_path);
    std::ofstream results(results_path, std::ios::app | std::ios::binary);
    if (!results) throw IoError("cannot open " + results_path.string());
    std::ofstream journal_out(journal_path, std::ios::app | std::ios::binary);
    if (fresh) results << kResultsHeader << '\n';

    ExperimentOutcome outcome;
    std::vector<std::optional<std::pair<RowResult, std::string>>> done(cells.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<size_t> next_cell{0};
    size_t flushed = 0;

    auto worker = [&] {
        for (;;) {
            const size_t i = next_cell.fetch_add(1);
            if (i >= cells.size()) return;
            const std::string key = cell_key(config, cells[i]);
            std::pair<RowResult, std::string> result;
            result.second = key;
            if (journal.contains(key)) {
                result.first.error = "__skipped__";
            } else {
                result.first = run_cell(config, cells[i]);
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                done[i] = std::move(result);
            }
            cv.notify_one();
        }
    };

    std::vector<std::thread> pool;
    const int workers = std::min<int>(config.parallelism, static_cast<int>(cells.size()));
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);

    {
        // single writer flushes rows in cell order so outputs are byte-stable
        std::unique_lock<std::mutex> lock(mu);
        while (flushed < cells.size()) {
            cv.wait(lock, [&] { return done[flushed].has_value(); });
            while (flushed < cells.size() && done[flushed].has_value()) {
                auto& [row, key] = *done[flushed];
                if (row.error == "__skipped__") {
                    outcome.skipped += 1;
                } else {
                    results << render_row(cells[flushed], row);
                    results.flush();
                    journal_out << key << '\n';
                    journal_out.flush();
                    if (row.error.empty()) outcome.completed += 1;
                    else outcome.failed += 1;
                }
                done[flushed].reset();
                ++flushed;
            }
        }
    }
    for (auto& t : pool) t.join();
    results.close();
    journal_out.close();

    write_summaries(config);
    return outcome;
}

}  // namespace rollage::harness
