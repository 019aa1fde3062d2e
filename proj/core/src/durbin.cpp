#include "rollage/durbin.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rollage/ar_fit.hpp"
#include "rollage/criteria.hpp"
#include "rollage/errors.hpp"
#include "rollage/rolling_average.hpp"

namespace rollage {

std::string to_string(PtildeCriterion c) {
    switch (c) {
        case PtildeCriterion::RollageStar: return "rollage";
        case PtildeCriterion::Bic: return "bic";
        case PtildeCriterion::Gic: return "gic";
        case PtildeCriterion::Fixed: return "fixed";
    }
    throw InvalidArgument("unknown criterion");
}

PtildeCriterion ptilde_criterion_from_string(const std::string& s) {
    if (s == "rollage" || s == "rollage_star") return PtildeCriterion::RollageStar;
    if (s == "bic") return PtildeCriterion::Bic;
    if (s == "gic") return PtildeCriterion::Gic;
    if (s == "fixed") return PtildeCriterion::Fixed;
    throw InvalidArgument("unknown criterion: " + s);
}

double relative_error(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) throw InvalidArgument("coefficient vectors differ in length");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < truth.size(); ++i) {
        const double d = estimate[i] - truth[i];
        num += d * d;
        den += truth[i] * truth[i];
    }
    if (den == 0.0) throw ZeroTruthNorm("truth vector has zero norm");
    return std::sqrt(num) / std::sqrt(den);
}

double relative_difference_ptilde(int ptilde_alt, int ptilde_rollage) {
    if (ptilde_rollage < 1) throw InvalidArgument("ptilde_rollage must be at least 1");
    return std::abs(ptilde_alt - ptilde_rollage) / static_cast<double>(ptilde_rollage);
}

namespace {

struct PredictorCoeffs {
    double p_const = 0.0, p_logn = 0.0, q_const = 0.0, q_logn = 0.0, logn = 0.0;
};

PredictorCoeffs predictor_coeffs(ModelKind kind, PtildeCriterion criterion) {
    const bool ma = kind == ModelKind::MA;
    switch (criterion) {
        case PtildeCriterion::RollageStar:
        case PtildeCriterion::Fixed:  // sizing hint defaults to the rollage fit
            return ma ? PredictorCoeffs{0, 0, -7.12, 0.81, 3.19}
                      : PredictorCoeffs{2.08, -0.14, -6.29, 0.76, 4.19};
        case PtildeCriterion::Bic:
            return ma ? PredictorCoeffs{0, 0, -9.39, 1.06, 3.27}
                      : PredictorCoeffs{1.87, -0.11, -8.12, 0.94, 3.55};
        case PtildeCriterion::Gic:
            return ma ? PredictorCoeffs{0, 0, -9.43, 1.05, 5.76}
                      : PredictorCoeffs{2.54, -0.19, -8.86, 1.03, 7.09};
    }
    throw InvalidArgument("unknown criterion");
}

}  // namespace

double predict_ptilde_linear(std::optional<int> p, int q, long n, ModelKind kind,
                             PtildeCriterion criterion) {
    if (n < 2) throw InvalidArgument("n must be at least 2");
    const auto c = predictor_coeffs(kind == ModelKind::MA ? ModelKind::MA : ModelKind::ARMA, criterion);
    const double logn = std::log(static_cast<double>(n));
    const double pterm = p ? *p * (c.p_const + c.p_logn * logn) : 0.0;
    return pterm + q * (c.q_const + c.q_logn * logn) + c.logn * logn;
}

int default_pbar(ModelKind kind, std::optional<int> p, int q, long n) {
    const double hint = predict_ptilde_linear(p, q, n, kind, PtildeCriterion::RollageStar);
    int pbar = static_cast<int>(std::ceil(std::max(hint, 0.0) * 1.25));
    pbar = std::max(pbar, q + 2);
    const int cap = static_cast<int>(n / 20);
    if (cap < q + 2) throw PbarTooSmall("series too short for the requested q");
    return std::min(pbar, cap);
}

DurbinFit durbin_stage2(std::span<const double> y, std::span<const double> w, int w_start, int p,
                        int q) {
    const int n = static_cast<int>(y.size());
    if (p < 0 || q < 0 || p + q < 1) throw InvalidArgument("need p + q >= 1");
    // rows t where y_{t-p} and the noise proxy for t-q both exist
    const int t0 = std::max(w_start + q, p);
    const int rows = n - t0;
    if (rows <= p + q) throw SeriesTooShort("too few rows for the second-stage regression");

    Eigen::MatrixXd x(rows, p + q);
    Eigen::VectorXd resp(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = t0 + r;
        resp(r) = y[static_cast<size_t>(t)];
        for (int i = 1; i <= p; ++i) x(r, i - 1) = y[static_cast<size_t>(t - i)];
        for (int j = 1; j <= q; ++j) x(r, p + j - 1) = w[static_cast<size_t>(t - j - w_start)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < p + q) throw RankDeficientDesign("second-stage design is rank deficient");
    Eigen::VectorXd beta = qr.solve(resp);

    DurbinFit fit;
    fit.phi_hat.assign(beta.data(), beta.data() + p);
    fit.theta_hat.assign(beta.data() + p, beta.data() + p + q);
    fit.n_used = rows;
    fit.sigma2_hat = (resp - x * beta).squaredNorm() / rows;
    return fit;
}

namespace {

int choose_ptilde(const TimeSeries& series, int q, const PtildeRule& rule, ModelKind kind,
                  std::optional<int> p) {
    const int n = series.n();
    switch (rule.criterion) {
        case PtildeCriterion::Fixed:
            if (rule.fixed_ptilde <= q) throw InvalidArgument("fixed ptilde must exceed q");
            return rule.fixed_ptilde;
        case PtildeCriterion::RollageStar: {
            const int pbar = rule.pbar > 0 ? rule.pbar : default_pbar(kind, p, q, n);
            const auto sel = select_ptilde_rollage_star(series, q, pbar, rule.delta);
            if (sel.saturated) {
                throw CriterionFailed("threshold scan saturated at pbar = " + std::to_string(pbar));
            }
            return sel.ptilde;
        }
        case PtildeCriterion::Bic: {
            const int pbar = rule.pbar > 0 ? rule.pbar : default_pbar(kind, p, q, n);
            return curve_argmin_above(bic_curve(series, pbar), q);
        }
        case PtildeCriterion::Gic: {
            const int pbar = rule.pbar > 0 ? rule.pbar : default_pbar(kind, p, q, n);
            return curve_argmin_above(gic_curve(series, pbar, rule.alpha), q);
        }
    }
    throw InvalidArgument("unknown criterion");
}

DurbinFit durbin_fit_impl(const TimeSeries& series, int p, int q, const PtildeRule& rule,
                          ModelKind kind) {
    const int n = series.n();
    if (q < 1) throw InvalidArgument("q must be at least 1");
    const int ptilde = choose_ptilde(series, q, rule, kind, p > 0 ? std::optional<int>(p) : std::nullopt);
    if (!(q < ptilde && ptilde < n / 4)) {
        throw CriterionFailed("selected ptilde " + std::to_string(ptilde) +
                              " violates q < ptilde < n/4");
    }

    const ArFit long_ar = fit_ar_cmle(series, ptilde);
    // long_ar.residuals[j] is the one-step residual at time index ptilde + j
    DurbinFit fit = durbin_stage2(series.values, long_ar.residuals, ptilde, p, q);
    fit.ptilde = ptilde;
    fit.criterion = rule.criterion;
    return fit;
}

}  // namespace

DurbinFit fit_ma_durbin(const TimeSeries& series, int q, const PtildeRule& rule) {
    return durbin_fit_impl(series, 0, q, rule, ModelKind::MA);
}

DurbinFit fit_arma_durbin(const TimeSeries& series, int p, int q, const PtildeRule& rule) {
    if (p < 1) throw InvalidArgument("p must be at least 1 for the ARMA fit");
    return durbin_fit_impl(series, p, q, rule, ModelKind::ARMA);
}

}  // namespace rollage
