#include "rollage/criteria.hpp"

#include <cmath>

#include "rollage/errors.hpp"

namespace rollage {

std::string to_string(CriterionKind k) { return k == CriterionKind::Bic ? "bic" : "gic"; }

double bic_value(double sse, int k, long n) {
    return std::log(sse / static_cast<double>(n)) +
           static_cast<double>(k) * std::log(static_cast<double>(n)) / static_cast<double>(n);
}

double gic_value(double rss, int p, long n, double alpha) {
    return std::log(rss / static_cast<double>(n)) +
           alpha * static_cast<double>(p) / static_cast<double>(n);
}

namespace {

int argmin_order(const CriterionCurve& curve, int from_order) {
    int best = from_order;
    for (int order = from_order; order <= curve.last_order(); ++order) {
        if (curve.value_at(order) < curve.value_at(best)) best = order;  // ties stay small
    }
    return best;
}

}  // namespace

CriterionCurve bic_curve(const CoefficientTable& table, long n) {
    CriterionCurve curve;
    curve.criterion = CriterionKind::Bic;
    curve.first_order = 1;
    curve.values.reserve(static_cast<size_t>(table.pbar));
    for (int k = 1; k <= table.pbar; ++k) {
        // prediction-error variance v_k plays SSE(k)/n
        curve.values.push_back(std::log(table.innovation_var[static_cast<size_t>(k)]) +
                               static_cast<double>(k) * std::log(static_cast<double>(n)) /
                                   static_cast<double>(n));
    }
    curve.argmin = argmin_order(curve, 1);
    return curve;
}

CriterionCurve bic_curve(const TimeSeries& series, int pbar) {
    if (pbar >= series.n() / 2) throw PbarTooLarge("pbar must be below n/2");
    const auto table = levinson_all_orders(sample_acf(series, pbar), pbar);
    return bic_curve(table, series.n());
}

CriterionCurve gic_curve(const SampleAcf& acf, const CoefficientTable& table, double alpha) {
    if (table.reflection.empty()) {
        throw InvalidArgument("gic_curve needs reflection coefficients (Levinson path)");
    }
    const long n = acf.n;
    CriterionCurve curve;
    curve.criterion = CriterionKind::Gic;
    curve.first_order = 0;
    curve.values.reserve(static_cast<size_t>(table.pbar) + 1);
    double rss = static_cast<double>(n) * acf.gamma_hat[0];
    curve.values.push_back(gic_value(rss, 0, n, alpha));
    for (int p = 1; p <= table.pbar; ++p) {
        const double k = table.reflection[static_cast<size_t>(p) - 1];
        rss *= (1.0 - k * k);
        curve.values.push_back(gic_value(rss, p, n, alpha));
    }
    curve.argmin = argmin_order(curve, 1);  // p = 0 reported, never selected
    return curve;
}

CriterionCurve gic_curve(const TimeSeries& series, int pbar, double alpha) {
    if (pbar >= series.n() / 2) throw PbarTooLarge("pbar must be below n/2");
    const auto acf = sample_acf(series, pbar);
    const auto table = levinson_all_orders(acf, pbar);
    return gic_curve(acf, table, alpha);
}

int curve_argmin_above(const CriterionCurve& curve, int min_order_exclusive) {
    const int from = std::max(curve.first_order, min_order_exclusive + 1);
    if (from > curve.last_order()) {
        throw CriterionFailed("no candidate order above " + std::to_string(min_order_exclusive));
    }
    int best = from;
    for (int order = from; order <= curve.last_order(); ++order) {
        if (curve.value_at(order) < curve.value_at(best)) best = order;
    }
    return best;
}

}  // namespace rollage
