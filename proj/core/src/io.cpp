#include "rollage/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rollage/errors.hpp"

namespace rollage {

namespace {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::string out;
    out.reserve(series.values.size() * 20 + 2);
    out += "y\n";
    for (double v : series.values) {
        out += format_double(v);
        out += '\n';
    }
    write_text_file(path, out);
}

TimeSeries read_series_csv(const std::filesystem::path& path, bool mean_center) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty series file: " + path.string());

    TimeSeries series;
    // tolerate a missing header when the first line already parses as a number
    {
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end != line.c_str() && *end == '\0') series.values.push_back(v);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) throw IoError("bad numeric row in " + path.string() + ": " + line);
        series.values.push_back(v);
    }
    if (series.values.empty()) throw IoError("no data rows in " + path.string());

    if (mean_center) {
        const double mean =
            std::accumulate(series.values.begin(), series.values.end(), 0.0) / series.n();
        for (auto& v : series.values) v -= mean;
        SeriesMeta meta;
        meta.subtracted_mean = mean;
        series.meta = meta;
    }
    return series;
}

nlohmann::json model_spec_to_json(const ModelSpec& spec) {
    return nlohmann::json{{"kind", to_string(spec.kind)},
                          {"phi", spec.phi},
                          {"theta", spec.theta},
                          {"sigma2_w", spec.sigma2_w}};
}

ModelSpec model_spec_from_json(const nlohmann::json& j) {
    ModelSpec spec;
    spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("phi")) spec.phi = j.at("phi").get<std::vector<double>>();
    if (j.contains("theta")) spec.theta = j.at("theta").get<std::vector<double>>();
    spec.sigma2_w = j.value("sigma2_w", 1.0);
    return spec;
}

ModelSpec read_model_json(const std::filesystem::path& path) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    return model_spec_from_json(j);
}

void write_model_json(const std::filesystem::path& path, const ModelSpec& spec) {
    write_text_file(path, model_spec_to_json(spec).dump(2) + "\n");
}

nlohmann::json series_meta_to_json(const SeriesMeta& meta) {
    nlohmann::json j{{"seed", meta.seed},
                     {"burn_in", meta.burn_in},
                     {"subtracted_mean", meta.subtracted_mean}};
    if (meta.model) j["model"] = model_spec_to_json(*meta.model);
    return j;
}

SeriesMeta series_meta_from_json(const nlohmann::json& j) {
    SeriesMeta meta;
    meta.seed = j.value("seed", std::uint64_t{0});
    meta.burn_in = j.value("burn_in", 0);
    meta.subtracted_mean = j.value("subtracted_mean", 0.0);
    if (j.contains("model")) meta.model = model_spec_from_json(j.at("model"));
    return meta;
}

nlohmann::json coefficient_table_to_json(const CoefficientTable& table) {
    return nlohmann::json{{"pbar", table.pbar},
                          {"rows", table.rows},
                          {"reflection", table.reflection},
                          {"innovation_var", table.innovation_var},
                          {"n_effective", table.n_effective},
                          {"method", to_string(table.method)}};
}

CoefficientTable coefficient_table_from_json(const nlohmann::json& j) {
    CoefficientTable table;
    table.pbar = j.at("pbar").get<int>();
    table.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    table.reflection = j.at("reflection").get<std::vector<double>>();
    table.innovation_var = j.at("innovation_var").get<std::vector<double>>();
    table.n_effective = j.at("n_effective").get<int>();
    table.method = fit_method_from_string(j.at("method").get<std::string>());
    return table;
}

nlohmann::json selection_report_to_json(const OrderSelectionReport& report) {
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& diag : report.candidates) {
        candidates.push_back({{"l", diag.order},
                              {"frac_significant", diag.frac_significant},
                              {"max_ratio", diag.max_ratio},
                              {"pass", diag.pass}});
    }
    nlohmann::json j{{"p_hat", report.p_hat},
                     {"rule", to_string(report.rule)},
                     {"pbar", report.pbar},
                     {"n_effective", report.n_effective},
                     {"candidates", std::move(candidates)},
                     {"phi_hat", report.phi_hat}};
    if (report.delta) j["delta"] = *report.delta;
    return j;
}

nlohmann::json durbin_fit_to_json(const DurbinFit& fit, std::optional<double> rel_error) {
    nlohmann::json j{{"ptilde", fit.ptilde},
                     {"criterion", to_string(fit.criterion)},
                     {"phi_hat", fit.phi_hat},
                     {"theta_hat", fit.theta_hat},
                     {"sigma2_hat", fit.sigma2_hat},
                     {"n_used", fit.n_used}};
    if (rel_error) j["relative_error"] = *rel_error;
    return j;
}

void write_criterion_curve_csv(const std::filesystem::path& path, const CriterionCurve& curve) {
    std::string out = "order,value\n";
    for (int order = curve.first_order; order <= curve.last_order(); ++order) {
        out += std::to_string(order);
        out += ',';
        out += format_double(curve.value_at(order));
        out += '\n';
    }
    write_text_file(path, out);
}

void write_ra_table_csv(const std::filesystem::path& path, const RollingAverageTable& ra, int n) {
    if (!ra.has_variances()) throw InvalidArgument("rolling-average table lacks variances");
    const double denom = std::sqrt(static_cast<double>(n - ra.pbar));
    std::string out = "h,l,rbar,sigma2,ratio\n";
    for (int l = 2; l <= ra.pbar; ++l) {
        for (int h = 1; h < l; ++h) {
            const double rbar = ra.rbar(h, l);
            const double sigma2 = ra.sigma2(h, l);
            const double ratio = std::abs(rbar) / (1.96 * std::sqrt(sigma2) / denom);
            out += std::to_string(h) + ',' + std::to_string(l) + ',' + format_double(rbar) + ',' +
                   format_double(sigma2) + ',' + format_double(ratio) + '\n';
        }
    }
    write_text_file(path, out);
}

}  // namespace rollage
