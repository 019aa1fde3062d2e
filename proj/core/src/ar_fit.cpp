#include "rollage/ar_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "rollage/errors.hpp"

namespace rollage {

std::string to_string(FitMethod m) {
    return m == FitMethod::CmleLs ? "cmle_ls" : "yule_walker_ld";
}

FitMethod fit_method_from_string(const std::string& s) {
    if (s == "cmle_ls" || s == "cmle") return FitMethod::CmleLs;
    if (s == "yule_walker_ld" || s == "yw") return FitMethod::YuleWalkerLd;
    throw InvalidArgument("unknown fit method: " + s);
}

namespace {

/// Lagged design: row t-offset has (y_{t-1}, ..., y_{t-order}) for t = offset..n-1 (0-based).
Eigen::MatrixXd lagged_design(const std::vector<double>& y, int order, int offset) {
    const int n = static_cast<int>(y.size());
    const int rows = n - offset;
    Eigen::MatrixXd x(rows, order);
    for (int r = 0; r < rows; ++r) {
        const int t = offset + r;
        for (int c = 0; c < order; ++c) x(r, c) = y[static_cast<size_t>(t - 1 - c)];
    }
    return x;
}

double window_sum_sq(const std::vector<double>& y, int offset) {
    double acc = 0.0;
    for (size_t t = static_cast<size_t>(offset); t < y.size(); ++t) acc += y[t] * y[t];
    return acc;
}

}  // namespace

ArFit fit_ar_cmle(const TimeSeries& series, int order) {
    const int n = series.n();
    if (order < 1) throw InvalidArgument("order must be at least 1");
    if (n <= 2 * order) throw SeriesTooShort("need n > 2*order");

    const auto& y = series.values;
    // a zero-variance window cannot identify any coefficient
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double var = 0.0;
    for (double v : y) var += (v - mean) * (v - mean);
    if (var <= 0.0) throw RankDeficientDesign("series has zero variance");

    Eigen::MatrixXd x = lagged_design(y, order, order);
    Eigen::Map<const Eigen::VectorXd> resp(y.data() + order, n - order);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < order) throw RankDeficientDesign("lagged design is rank deficient");
    Eigen::VectorXd beta = qr.solve(resp);

    ArFit out;
    out.coefficients.assign(beta.data(), beta.data() + order);
    Eigen::VectorXd resid = resp - x * beta;
    out.residuals.assign(resid.data(), resid.data() + resid.size());
    out.innovation_var = resid.squaredNorm() / static_cast<double>(n - order);
    return out;
}

SampleAcf sample_acf(const TimeSeries& series, int max_lag) {
    const int n = series.n();
    if (max_lag < 0) throw InvalidArgument("max_lag must be non-negative");
    if (max_lag >= n) throw LagTooLarge("max_lag must be below the series length");

    const auto& y = series.values;
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;

    SampleAcf out;
    out.n = n;
    out.gamma_hat.resize(static_cast<size_t>(max_lag) + 1);
    for (int h = 0; h <= max_lag; ++h) {
        double acc = 0.0;
        for (int t = 0; t + h < n; ++t) {
            acc += (y[static_cast<size_t>(t)] - mean) * (y[static_cast<size_t>(t + h)] - mean);
        }
        out.gamma_hat[static_cast<size_t>(h)] = acc / n;
    }
    if (out.gamma_hat[0] <= 0.0) throw NonPositiveDefiniteAcf("zero-variance series");
    out.acf_hat.resize(out.gamma_hat.size());
    for (size_t h = 0; h < out.gamma_hat.size(); ++h) out.acf_hat[h] = out.gamma_hat[h] / out.gamma_hat[0];
    return out;
}

CoefficientTable levinson_all_orders(const SampleAcf& acf, int pbar) {
    if (pbar < 1) throw InvalidArgument("pbar must be at least 1");
    if (acf.max_lag() < pbar) throw InsufficientLags("acf holds fewer lags than pbar");

    const auto& g = acf.gamma_hat;
    CoefficientTable table;
    table.pbar = pbar;
    table.method = FitMethod::YuleWalkerLd;
    table.n_effective = acf.n;
    table.rows.reserve(static_cast<size_t>(pbar));
    table.reflection.resize(static_cast<size_t>(pbar));
    table.innovation_var.resize(static_cast<size_t>(pbar) + 1);
    table.innovation_var[0] = g[0];

    std::vector<double> phi(static_cast<size_t>(pbar)), prev(static_cast<size_t>(pbar));
    for (int l = 1; l <= pbar; ++l) {
        double acc = g[static_cast<size_t>(l)];
        for (int j = 1; j < l; ++j) acc -= prev[static_cast<size_t>(j) - 1] * g[static_cast<size_t>(l - j)];
        const double k = acc / table.innovation_var[static_cast<size_t>(l) - 1];
        if (!(std::abs(k) < 1.0)) {
            throw NonPositiveDefiniteAcf("reflection coefficient reached unit magnitude at order " +
                                         std::to_string(l));
        }
        for (int j = 1; j < l; ++j) {
            phi[static_cast<size_t>(j) - 1] =
                prev[static_cast<size_t>(j) - 1] - k * prev[static_cast<size_t>(l - j) - 1];
        }
        phi[static_cast<size_t>(l) - 1] = k;
        table.reflection[static_cast<size_t>(l) - 1] = k;
        table.innovation_var[static_cast<size_t>(l)] =
            table.innovation_var[static_cast<size_t>(l) - 1] * (1.0 - k * k);
        table.rows.emplace_back(phi.begin(), phi.begin() + l);
        std::copy(phi.begin(), phi.begin() + l, prev.begin());
    }
    return table;
}

CoefficientTable cmle_all_orders(const TimeSeries& series, int pbar) {
    const int n = series.n();
    if (pbar < 1) throw InvalidArgument("pbar must be at least 1");
    if (n <= 2 * pbar) throw SeriesTooShort("need n > 2*pbar");

    const auto& y = series.values;
    const int rows = n - pbar;
    Eigen::MatrixXd x = lagged_design(y, pbar, pbar);
    Eigen::Map<const Eigen::VectorXd> resp(y.data() + pbar, rows);

    // One QR of the full design; order-l fits are leading-column solves
    // against the first l entries of Q^T y.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::VectorXd qty = qr.householderQ().adjoint() * resp;
    Eigen::MatrixXd r = qr.matrixQR().topRows(pbar).triangularView<Eigen::Upper>();
    const double pivot_floor = 1e-12 * std::abs(r(0, 0));
    for (int l = 1; l <= pbar; ++l) {
        if (std::abs(r(l - 1, l - 1)) <= pivot_floor) {
            throw RankDeficientDesign("lagged design is rank deficient at order " +
                                      std::to_string(l));
        }
    }

    const double total_ss = window_sum_sq(y, pbar);
    CoefficientTable table;
    table.pbar = pbar;
    table.method = FitMethod::CmleLs;
    table.n_effective = rows;
    table.innovation_var.resize(static_cast<size_t>(pbar) + 1);
    table.innovation_var[0] = total_ss / rows;
    table.rows.reserve(static_cast<size_t>(pbar));

    double explained = 0.0;
    for (int l = 1; l <= pbar; ++l) {
        explained += qty(l - 1) * qty(l - 1);
        Eigen::VectorXd beta = r.topLeftCorner(l, l).triangularView<Eigen::Upper>().solve(qty.head(l));
        table.rows.emplace_back(beta.data(), beta.data() + l);
        table.innovation_var[static_cast<size_t>(l)] = std::max(total_ss - explained, 0.0) / rows;
    }
    return table;
}

Pacf pacf(const CoefficientTable& table) {
    Pacf out;
    out.values.reserve(static_cast<size_t>(table.pbar));
    for (int l = 1; l <= table.pbar; ++l) out.values.push_back(table.row(l).back());
    out.boundary = 1.96 / std::sqrt(static_cast<double>(table.n_effective));
    return out;
}

std::vector<double> residuals_long_ar(const TimeSeries& series, std::span<const double> coeffs) {
    const int n = series.n();
    const int ptilde = static_cast<int>(coeffs.size());
    if (ptilde >= n) throw SeriesTooShort("coefficient vector at least as long as the series");

    const auto& y = series.values;
    std::vector<double> resid(static_cast<size_t>(n - ptilde));
    for (int t = ptilde; t < n; ++t) {
        double acc = y[static_cast<size_t>(t)];
        for (int i = 1; i <= ptilde; ++i) acc -= coeffs[static_cast<size_t>(i) - 1] * y[static_cast<size_t>(t - i)];
        resid[static_cast<size_t>(t - ptilde)] = acc;
    }
    return resid;
}

}  // namespace rollage
