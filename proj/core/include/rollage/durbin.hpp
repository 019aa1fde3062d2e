#ifndef ROLLAGE_DURBIN_HPP
#define ROLLAGE_DURBIN_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rollage/model_spec.hpp"
#include "rollage/time_series.hpp"

namespace rollage {

enum class PtildeCriterion { RollageStar, Bic, Gic, Fixed };

std::string to_string(PtildeCriterion c);
PtildeCriterion ptilde_criterion_from_string(const std::string& s);

/// How the long-AR order is chosen in the two-stage fit.
struct PtildeRule {
    PtildeCriterion criterion = PtildeCriterion::RollageStar;
    int fixed_ptilde = 0;   ///< Fixed only
    double delta = 3.0;     ///< RollageStar only
    int pbar = 0;           ///< scan cap; 0 selects default_pbar()
    double alpha = 1.0;     ///< Gic only
};

/**
 * Result of the two-stage fit: a long AR(ptilde) regression whose residuals
 * stand in for the unobservable noise, followed by a least-squares regression
 * of the series on lagged residuals (and lagged values, for the ARMA case).
 */
struct DurbinFit {
    int ptilde = 0;
    PtildeCriterion criterion = PtildeCriterion::Fixed;
    std::vector<double> theta_hat;
    std::vector<double> phi_hat;  ///< empty for the pure-MA fit
    double sigma2_hat = 0.0;      ///< second-stage SSE / n_used
    int n_used = 0;               ///< second-stage rows with full lag coverage
};

/**
 * Two-stage MA(q) fit. Stage one selects ptilde by the given rule (enforcing
 * q < ptilde < n/4), fits AR(ptilde) by conditional least squares and takes
 * its residuals w~. Stage two regresses y_t on (w~_{t-1}, ..., w~_{t-q})
 * over t = ptilde+q+1..n.
 *
 * Throws CriterionFailed (rule produced no admissible ptilde, e.g. threshold
 * saturation), RankDeficientDesign, or InvalidArgument.
 */
DurbinFit fit_ma_durbin(const TimeSeries& series, int q, const PtildeRule& rule);

/// ARMA(p,q) variant: stage two regresses y_t jointly on
/// (y_{t-1..t-p}, w~_{t-1..t-q}).
DurbinFit fit_arma_durbin(const TimeSeries& series, int p, int q, const PtildeRule& rule);

/// Stage-two regression in isolation: w[j] is the noise proxy for time index
/// w_start + j (0-based). Exposed so tests can feed the true noise sequence.
DurbinFit durbin_stage2(std::span<const double> y, std::span<const double> w, int w_start, int p,
                        int q);

/// ||estimate - truth|| / ||truth||, Euclidean. Throws ZeroTruthNorm or
/// InvalidArgument on length mismatch.
double relative_error(std::span<const double> estimate, std::span<const double> truth);

/// |ptilde_alt - ptilde_rollage| / ptilde_rollage.
double relative_difference_ptilde(int ptilde_alt, int ptilde_rollage);

/**
 * Fitted linear predictors of the long-AR order as a function of the model
 * orders and sample size (natural log):
 *   MA:   q*(c_q + c_qn log n) + c_n log n
 *   ARMA: p*(c_p + c_pn log n) + q*(c_q + c_qn log n) + c_n log n
 * with per-criterion coefficients. A sizing hint only, never ground truth.
 */
double predict_ptilde_linear(std::optional<int> p, int q, long n, ModelKind kind,
                             PtildeCriterion criterion);

/// Default scan cap: ceil of the linear predictor plus a 25% margin, clamped
/// to [q+2, n/20]. Throws PbarTooSmall when the clamp range is empty.
int default_pbar(ModelKind kind, std::optional<int> p, int q, long n);

}  // namespace rollage

#endif
