#ifndef ROLLAGE_AR_FIT_HPP
#define ROLLAGE_AR_FIT_HPP

#include <span>
#include <string>
#include <vector>

#include "rollage/time_series.hpp"

namespace rollage {

enum class FitMethod { CmleLs, YuleWalkerLd };

std::string to_string(FitMethod m);
FitMethod fit_method_from_string(const std::string& s);

/// Sample autocovariances with the positive-semidefinite divisor-n estimator:
/// gamma_hat[h] = (1/n) sum_{t=1}^{n-h} (y_t - ybar)(y_{t+h} - ybar).
struct SampleAcf {
    std::vector<double> gamma_hat;
    std::vector<double> acf_hat;  ///< gamma_hat[h] / gamma_hat[0]
    int n = 0;

    int max_lag() const { return static_cast<int>(gamma_hat.size()) - 1; }
};

/**
 * Triangular store of fitted AR(l) coefficient vectors for l = 1..pbar,
 * plus reflection coefficients and per-order prediction-error variances.
 */
struct CoefficientTable {
    int pbar = 0;
    std::vector<std::vector<double>> rows;  ///< rows[l-1] holds the AR(l) fit, size l
    std::vector<double> reflection;         ///< k_1..k_pbar (Levinson path only)
    std::vector<double> innovation_var;     ///< v_0..v_pbar, non-increasing
    int n_effective = 0;                    ///< regression rows (CMLE) or sample size (Levinson)
    FitMethod method = FitMethod::YuleWalkerLd;

    std::span<const double> row(int l) const { return rows.at(static_cast<size_t>(l) - 1); }
};

struct ArFit {
    std::vector<double> coefficients;
    double innovation_var = 0.0;  ///< SSE / (n - order)
    std::vector<double> residuals;
};

/**
 * Least-squares regression of y_t on (y_{t-1}, ..., y_{t-order}) over
 * t = order+1..n, the conditional-likelihood maximizer under Gaussian noise.
 * Solved by Householder QR of the lagged design, never normal equations.
 *
 * Throws SeriesTooShort (n <= 2*order) or RankDeficientDesign.
 */
ArFit fit_ar_cmle(const TimeSeries& series, int order);

/// Throws LagTooLarge when max_lag >= n, NonPositiveDefiniteAcf on a
/// zero-variance series.
SampleAcf sample_acf(const TimeSeries& series, int max_lag);

/**
 * Levinson-Durbin recursion over the sample Toeplitz system: every order
 * 1..pbar in O(pbar^2) after the O(n*pbar) autocovariance pass.
 * Throws NonPositiveDefiniteAcf when a reflection coefficient reaches 1 in
 * magnitude.
 */
CoefficientTable levinson_all_orders(const SampleAcf& acf, int pbar);

/**
 * All-orders conditional least squares on the common window t = pbar+1..n:
 * one Householder QR of the order-pbar design; nested leading-column solves
 * give every order, O(n*pbar^2) total. Reflection coefficients are not
 * defined on this path and are left empty.
 */
CoefficientTable cmle_all_orders(const TimeSeries& series, int pbar);

struct Pacf {
    std::vector<double> values;  ///< last coefficient of each row, l = 1..pbar
    double boundary = 0.0;       ///< 1.96 / sqrt(n_effective), the 95% zero band
};

Pacf pacf(const CoefficientTable& table);

/// One-step prediction residuals y_t - sum_i coeffs[i] y_{t-i} for
/// t = ptilde+1..n; length n - ptilde. Throws SeriesTooShort.
std::vector<double> residuals_long_ar(const TimeSeries& series, std::span<const double> coeffs);

}  // namespace rollage

#endif
