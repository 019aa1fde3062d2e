#include "rollage/rolling_average.hpp"

#include <algorithm>
#include <cmath>

#include "rollage/errors.hpp"
#include "rollage/nlrc.hpp"

namespace rollage {

std::string to_string(SelectionRule r) {
    return r == SelectionRule::Rollage5Pct ? "rollage_5pct" : "rollage_star_delta";
}

namespace {

/// Prefix sums S(r) = phi_0 + ... + phi_r with phi_0 = -1, r = 0..l.
std::vector<double> coefficient_prefix_sums(std::span<const double> phi) {
    std::vector<double> s(phi.size() + 1);
    s[0] = -1.0;
    for (size_t i = 0; i < phi.size(); ++i) s[i + 1] = s[i] + phi[i];
    return s;
}

void check_variance_orders(std::span<const double> phi, int l, int m) {
    if (l < 0) throw InvalidArgument("l must be non-negative");
    if (static_cast<int>(phi.size()) != l) throw InvalidArgument("phi length must equal l");
    if (m <= l) throw OrderMismatch("m must exceed l");
}

}  // namespace

double rolling_average_variance(std::span<const double> phi, int l, int m) {
    check_variance_orders(phi, l, m);
    const auto s = coefficient_prefix_sums(phi);
    double var = 1.0;  // m' = l + 1
    for (int mp = l + 2; mp <= m; ++mp) {
        const int r = std::min(mp - l - 1, l);
        const double d = mp - l;
        var = ((d - 1.0) * (d - 1.0) * var + s[static_cast<size_t>(r)] * s[static_cast<size_t>(r)]) / (d * d);
    }
    return var;
}

double rolling_average_variance_closed(std::span<const double> phi, int l, int m) {
    check_variance_orders(phi, l, m);
    const auto s = coefficient_prefix_sums(phi);
    const int d = m - l;
    if (d <= l || l == 0) {
        // m = l + d with d <= l: mean of the first d squared prefix sums.
        // l = 0 collapses to the same expression with every S(r) = -1.
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
            const int r = std::min(i, l);
            acc += s[static_cast<size_t>(r)] * s[static_cast<size_t>(r)];
        }
        return acc / (static_cast<double>(d) * d);
    }
    // m = 2l + k: carry the order-2l value and add k copies of S(l)^2
    double at_2l = 0.0;
    for (int i = 0; i < l; ++i) at_2l += s[static_cast<size_t>(i)] * s[static_cast<size_t>(i)];
    const int k = d - l;
    const double tail = s[static_cast<size_t>(l)] * s[static_cast<size_t>(l)];
    return (at_2l + k * tail) / (static_cast<double>(d) * d);
}

bool variance_vs_nlrc_oracle(std::span<const double> phi, int l, int m) {
    const double var = rolling_average_variance(phi, l, m);
    const double d = m - l;
    double block_sum = 0.0;
    if (l == 0) {
        block_sum = d;  // white-noise corner block is the identity
    } else {
        block_sum = nlrc_closed_form(phi, l, m).entries.sum();
    }
    return std::abs(var - block_sum / (d * d)) <= 1e-10;
}

namespace {

RollingAverageTable build_table(const CoefficientTable& table, bool with_variances) {
    RollingAverageTable ra;
    ra.pbar = table.pbar;
    ra.n_effective = table.n_effective;
    ra.rbar_rows.resize(static_cast<size_t>(table.pbar));
    for (int l = 1; l <= table.pbar; ++l) {
        const auto row = table.row(l);
        auto& out = ra.rbar_rows[static_cast<size_t>(l) - 1];
        out.resize(static_cast<size_t>(l));
        double suffix = 0.0;
        for (int h = l - 1; h >= 0; --h) {
            suffix += row[static_cast<size_t>(h)];
            out[static_cast<size_t>(h)] = suffix / (l - h);
        }
    }
    if (!with_variances) return ra;

    // sigma2(h, l) for l = h+1..pbar shares one recursion pass per h
    ra.sigma2_rows.resize(static_cast<size_t>(table.pbar));
    for (int l = 1; l <= table.pbar; ++l) {
        ra.sigma2_rows[static_cast<size_t>(l) - 1].resize(static_cast<size_t>(l));
    }
    for (int h = 0; h < table.pbar; ++h) {
        const auto phi = h >= 1 ? table.row(h) : std::span<const double>{};
        const auto s = coefficient_prefix_sums(phi);
        double var = 1.0;
        ra.sigma2_rows[static_cast<size_t>(h)][static_cast<size_t>(h)] = var;  // l = h+1
        for (int l = h + 2; l <= table.pbar; ++l) {
            const int r = std::min(l - h - 1, h);
            const double d = l - h;
            var = ((d - 1.0) * (d - 1.0) * var + s[static_cast<size_t>(r)] * s[static_cast<size_t>(r)]) /
                  (d * d);
            ra.sigma2_rows[static_cast<size_t>(l) - 1][static_cast<size_t>(h)] = var;
        }
    }
    return ra;
}

std::vector<CandidateDiagnostics> candidate_diagnostics(const RollingAverageTable& ra, int n,
                                                        const SelectionOptions& options) {
    const int pbar = ra.pbar;
    const double denom = std::sqrt(static_cast<double>(n - pbar));
    std::vector<CandidateDiagnostics> out;
    out.reserve(static_cast<size_t>(pbar) - 1);
    for (int c = 1; c < pbar; ++c) {
        // candidate c is judged on the averages that start at lag c
        const int h = c - 1;
        CandidateDiagnostics diag;
        diag.order = c;
        int hits = 0;
        int total = 0;
        for (int m = c; m <= pbar; ++m) {
            const double bound = 1.96 * std::sqrt(ra.sigma2(h, m)) / denom;
            const double ratio = std::abs(ra.rbar(h, m)) / bound;
            diag.max_ratio = std::max(diag.max_ratio, ratio);
            if (ratio >= 1.0) ++hits;
            ++total;
        }
        diag.frac_significant = static_cast<double>(hits) / total;
        diag.pass = options.rule == SelectionRule::Rollage5Pct
                        ? diag.frac_significant >= 0.05
                        : diag.max_ratio > options.delta;
        out.push_back(diag);
    }
    return out;
}

}  // namespace

RollingAverageTable rolling_averages(const CoefficientTable& table) {
    return build_table(table, /*with_variances=*/false);
}

RollingAverageTable rolling_average_table(const CoefficientTable& table) {
    return build_table(table, /*with_variances=*/true);
}

OrderSelectionReport select_order_rollage(const TimeSeries& series, int pbar,
                                          const SelectionOptions& options) {
    const int n = series.n();
    if (pbar < 2) throw InvalidArgument("pbar must be at least 2");
    if (pbar > n / 20) throw PbarTooLarge("pbar must not exceed n/20");
    if (options.rule == SelectionRule::RollageStarDelta && !(options.delta > 0.0)) {
        throw InvalidArgument("delta must be positive");
    }

    const CoefficientTable table = options.method == FitMethod::YuleWalkerLd
                                       ? levinson_all_orders(sample_acf(series, pbar), pbar)
                                       : cmle_all_orders(series, pbar);
    const RollingAverageTable ra = rolling_average_table(table);

    OrderSelectionReport report;
    report.pbar = pbar;
    report.n_effective = n - pbar;  // rows behind the significance bounds
    report.rule = options.rule;
    if (options.rule == SelectionRule::RollageStarDelta) report.delta = options.delta;
    report.candidates = candidate_diagnostics(ra, n, options);
    for (const auto& diag : report.candidates) {
        if (diag.pass) report.p_hat = diag.order;
    }
    if (report.p_hat >= 1) {
        const auto row = table.row(report.p_hat);
        report.phi_hat.assign(row.begin(), row.end());
    }
    return report;
}

PtildeSelection select_ptilde_rollage_star(const CoefficientTable& table,
                                           const RollingAverageTable& ra, int q, double delta,
                                           int n) {
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    if (q < 0) throw InvalidArgument("q must be non-negative");
    if (table.pbar <= q) throw PbarTooSmall("pbar must exceed q");

    SelectionOptions options;
    options.rule = SelectionRule::RollageStarDelta;
    options.delta = delta;
    const auto diags = candidate_diagnostics(ra, n, options);
    for (const auto& diag : diags) {
        if (diag.order > q && diag.max_ratio <= delta) return {diag.order, false};
    }
    return {table.pbar, true};
}

PtildeSelection select_ptilde_rollage_star(const TimeSeries& series, int q, int pbar, double delta,
                                           FitMethod method) {
    if (pbar <= q) throw PbarTooSmall("pbar must exceed q");
    if (pbar < 2) throw InvalidArgument("pbar must be at least 2");
    const CoefficientTable table = method == FitMethod::YuleWalkerLd
                                       ? levinson_all_orders(sample_acf(series, pbar), pbar)
                                       : cmle_all_orders(series, pbar);
    const RollingAverageTable ra = rolling_average_table(table);
    return select_ptilde_rollage_star(table, ra, q, delta, series.n());
}

}  // namespace rollage
