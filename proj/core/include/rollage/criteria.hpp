#ifndef ROLLAGE_CRITERIA_HPP
#define ROLLAGE_CRITERIA_HPP

#include <string>
#include <vector>

#include "rollage/ar_fit.hpp"
#include "rollage/time_series.hpp"

namespace rollage {

enum class CriterionKind { Bic, Gic };

std::string to_string(CriterionKind k);

/// Criterion values over a contiguous candidate-order range; argmin ties
/// break toward the smaller order.
struct CriterionCurve {
    CriterionKind criterion = CriterionKind::Bic;
    int first_order = 1;
    std::vector<double> values;  ///< values[i] belongs to order first_order + i
    int argmin = 1;

    double value_at(int order) const { return values.at(static_cast<size_t>(order - first_order)); }
    int last_order() const { return first_order + static_cast<int>(values.size()) - 1; }
};

/// log(sse/n) + k log(n)/n, natural log.
double bic_value(double sse, int k, long n);

/// log(rss/n) + alpha p / n, natural log.
double gic_value(double rss, int p, long n, double alpha = 1.0);

/**
 * BIC over k = 1..pbar with sigma2_hat_k = SSE(k)/n taken from the Levinson
 * path's prediction-error variance v_k. Natural logarithm; the argmin is
 * invariant to the log base since both terms rescale together.
 */
CriterionCurve bic_curve(const TimeSeries& series, int pbar);
CriterionCurve bic_curve(const CoefficientTable& table, long n);

/**
 * GIC(p, alpha) over p = 0..pbar with RSS_0 = n * gamma_hat_0 and
 * RSS_p = RSS_{p-1} (1 - k_p^2) from the reflection coefficients.
 * p = 0 is reported on the curve but never selected: argmin is over p >= 1.
 */
CriterionCurve gic_curve(const TimeSeries& series, int pbar, double alpha = 1.0);
CriterionCurve gic_curve(const SampleAcf& acf, const CoefficientTable& table, double alpha = 1.0);

/// Smallest-order argmin restricted to orders > min_order_exclusive.
/// Throws CriterionFailed when the restriction empties the range.
int curve_argmin_above(const CriterionCurve& curve, int min_order_exclusive);

}  // namespace rollage

#endif
