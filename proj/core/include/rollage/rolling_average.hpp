#ifndef ROLLAGE_ROLLING_AVERAGE_HPP
#define ROLLAGE_ROLLING_AVERAGE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rollage/ar_fit.hpp"
#include "rollage/time_series.hpp"

namespace rollage {

/**
 * Triangular store of rolling averages and their plug-in variances.
 *
 * rbar(h, l) is the mean of the fitted AR(l) coefficients at lags h+1..l,
 * for 0 <= h < l <= pbar. sigma2(h, l) is the asymptotic variance of
 * sqrt(n) * rbar(h, l) under the hypothesis "true order = h", evaluated at
 * the fitted AR(h) coefficients (the only order-h quantities available under
 * that hypothesis). The h = 0 row averages every coefficient of the row-l
 * fit and carries variance 1/l.
 */
struct RollingAverageTable {
    int pbar = 0;
    int n_effective = 0;
    std::vector<std::vector<double>> rbar_rows;    ///< rbar_rows[l-1][h], h = 0..l-1
    std::vector<std::vector<double>> sigma2_rows;  ///< same layout; empty when values-only

    double rbar(int h, int l) const { return rbar_rows.at(static_cast<size_t>(l) - 1).at(static_cast<size_t>(h)); }
    double sigma2(int h, int l) const { return sigma2_rows.at(static_cast<size_t>(l) - 1).at(static_cast<size_t>(h)); }
    bool has_variances() const { return !sigma2_rows.empty(); }
};

/// Rolling averages only; sigma2_rows left empty.
RollingAverageTable rolling_averages(const CoefficientTable& table);

/// Rolling averages plus plug-in variances for every (h, l) pair.
RollingAverageTable rolling_average_table(const CoefficientTable& table);

/**
 * Asymptotic variance of sqrt(n) times the rolling average over lags l+1..m
 * when the true order is l with coefficients phi (length l; phi_0 := -1 is
 * prepended internally). Computed by the variance recursion
 *   (m-l)^2 s_m = (m-l-1)^2 s_{m-1} + (phi_0 + ... + phi_r)^2,
 * r = min(m-l-1, l), with s_{l+1} = 1. l = 0 is the white-noise case, s = 1/(m-l).
 * Throws OrderMismatch when m <= l.
 */
double rolling_average_variance(std::span<const double> phi, int l, int m);

/// The same quantity from the non-recursive general solution; used to
/// cross-check the recursion.
double rolling_average_variance_closed(std::span<const double> phi, int l, int m);

/// Checks |variance - normalized sum of all corner-block covariance entries|
/// <= 1e-10, tying the variance recursion to the closed-form block
/// independently of either derivation.
bool variance_vs_nlrc_oracle(std::span<const double> phi, int l, int m);

enum class SelectionRule { Rollage5Pct, RollageStarDelta };

std::string to_string(SelectionRule r);

struct CandidateDiagnostics {
    int order = 0;                  ///< candidate order c
    double frac_significant = 0.0;  ///< fraction of family members at or past the 95% bound
    double max_ratio = 0.0;         ///< max_m |rbar| / (1.96 sigma_hat / sqrt(n - pbar))
    bool pass = false;
};

struct OrderSelectionReport {
    int p_hat = 0;
    int pbar = 0;
    int n_effective = 0;
    SelectionRule rule = SelectionRule::RollageStarDelta;
    std::optional<double> delta;
    std::vector<CandidateDiagnostics> candidates;  ///< pbar - 1 entries, orders 1..pbar-1
    std::vector<double> phi_hat;                   ///< fitted AR(p_hat) coefficients (empty for p_hat = 0)
};

struct SelectionOptions {
    SelectionRule rule = SelectionRule::RollageStarDelta;
    double delta = 3.0;
    FitMethod method = FitMethod::YuleWalkerLd;
};

/**
 * AR order selection from the full over-fit coefficient table.
 *
 * Candidate order c is judged on the family rbar(c-1, m), m = c..pbar
 * (the averages that start at lag c, whose first member is the lag-c sample
 * PACF) against the 95% bound 1.96 sigma_hat(c-1, m) / sqrt(n - pbar).
 * Under RollageStarDelta (default), the candidate is significant when its
 * max standardized ratio exceeds delta; under Rollage5Pct, when at least 5%
 * of its inequalities hold at ratio 1. p_hat is the largest significant
 * candidate, 0 when none is.
 *
 * Requires 2 <= pbar <= n/20 (PbarTooLarge otherwise).
 */
OrderSelectionReport select_order_rollage(const TimeSeries& series, int pbar,
                                          const SelectionOptions& options = {});

struct PtildeSelection {
    int ptilde = 0;
    bool saturated = false;  ///< no candidate fell below delta; ptilde = pbar
};

/**
 * Long-AR order for the two-stage estimator: scanning candidates c = 1, 2,
 * ..., pbar-1, ptilde is the first c > q whose max standardized ratio is at
 * most delta (the first order from which no deeper rolling average clears
 * delta times the 95% bound). Saturates at pbar when every candidate stays
 * above delta. Throws PbarTooSmall when pbar <= q.
 */
PtildeSelection select_ptilde_rollage_star(const TimeSeries& series, int q, int pbar, double delta,
                                           FitMethod method = FitMethod::YuleWalkerLd);

/// Table-reusing variant; n is the series length behind the table.
PtildeSelection select_ptilde_rollage_star(const CoefficientTable& table,
                                           const RollingAverageTable& ra, int q, double delta,
                                           int n);

}  // namespace rollage

#endif
