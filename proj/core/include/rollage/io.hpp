#ifndef ROLLAGE_IO_HPP
#define ROLLAGE_IO_HPP

#include <filesystem>
#include <json.hpp>

#include "rollage/ar_fit.hpp"
#include "rollage/criteria.hpp"
#include "rollage/durbin.hpp"
#include "rollage/rolling_average.hpp"
#include "rollage/time_series.hpp"

namespace rollage {

/// Single-column CSV, header "y", 17 significant digits (round-trips doubles).
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

/**
 * Reads the series CSV. With mean_center, subtracts the sample mean on
 * ingestion and records it in meta.subtracted_mean (the estimators assume a
 * zero-mean process).
 */
TimeSeries read_series_csv(const std::filesystem::path& path, bool mean_center = false);

nlohmann::json model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);
ModelSpec read_model_json(const std::filesystem::path& path);
void write_model_json(const std::filesystem::path& path, const ModelSpec& spec);

nlohmann::json series_meta_to_json(const SeriesMeta& meta);
SeriesMeta series_meta_from_json(const nlohmann::json& j);

nlohmann::json coefficient_table_to_json(const CoefficientTable& table);
CoefficientTable coefficient_table_from_json(const nlohmann::json& j);

nlohmann::json selection_report_to_json(const OrderSelectionReport& report);
nlohmann::json durbin_fit_to_json(const DurbinFit& fit, std::optional<double> rel_error = {});

/// Columns (order, value).
void write_criterion_curve_csv(const std::filesystem::path& path, const CriterionCurve& curve);

/// Columns (h, l, rbar, sigma2, ratio) over the triangle 1 <= h < l <= pbar;
/// ratio = |rbar| / (1.96 sqrt(sigma2) / sqrt(n - pbar)).
void write_ra_table_csv(const std::filesystem::path& path, const RollingAverageTable& ra, int n);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace rollage

#endif
