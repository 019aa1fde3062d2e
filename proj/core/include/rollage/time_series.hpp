#ifndef ROLLAGE_TIME_SERIES_HPP
#define ROLLAGE_TIME_SERIES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rollage/model_spec.hpp"

namespace rollage {

/// Provenance carried alongside a simulated or ingested series.
struct SeriesMeta {
    std::uint64_t seed = 0;
    int burn_in = 0;
    std::optional<ModelSpec> model;
    double subtracted_mean = 0.0;
};

struct TimeSeries {
    std::vector<double> values;
    std::optional<SeriesMeta> meta;

    int n() const { return static_cast<int>(values.size()); }
};

}  // namespace rollage

#endif
