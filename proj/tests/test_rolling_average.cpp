#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rollage/ar_fit.hpp"
#include "rollage/errors.hpp"
#include "rollage/rolling_average.hpp"
#include "rollage/simulate.hpp"

using namespace rollage;

namespace {

CoefficientTable table_from_rows(std::vector<std::vector<double>> rows, int n_effective) {
    CoefficientTable t;
    t.pbar = static_cast<int>(rows.size());
    t.rows = std::move(rows);
    t.n_effective = n_effective;
    t.innovation_var.assign(static_cast<size_t>(t.pbar) + 1, 1.0);
    return t;
}

}  // namespace

TEST_CASE("rolling averages are suffix means of each row") {
    auto table = table_from_rows({{0.9}, {0.7, 0.2}, {0.5, 0.1, 0.02}}, 1000);
    auto ra = rolling_averages(table);
    CHECK_FALSE(ra.has_variances());
    // row 3 = (0.5, 0.1, 0.02)
    CHECK(ra.rbar(1, 3) == doctest::Approx(0.06).epsilon(1e-15));
    CHECK(ra.rbar(2, 3) == doctest::Approx(0.02).epsilon(1e-15));
    // single-term average is the last coefficient
    CHECK(ra.rbar(1, 2) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(ra.rbar(2, 3) == table.row(3).back());
    // whole-row average
    CHECK(ra.rbar(0, 3) == doctest::Approx((0.5 + 0.1 + 0.02) / 3.0).epsilon(1e-15));

    auto zeros = table_from_rows({{0.0}, {0.0, 0.0}, {0.0, 0.0, 0.0}}, 1000);
    auto zra = rolling_averages(zeros);
    for (int l = 1; l <= 3; ++l) {
        for (int h = 0; h < l; ++h) CHECK(zra.rbar(h, l) == 0.0);
    }
}

TEST_CASE("variance recursion hand-checked values") {
    const std::vector<double> phi{0.5, 0.3};
    // single-term average always has unit variance
    CHECK(rolling_average_variance(phi, 2, 3) == 1.0);
    // two-term case: ((-1)^2 + (-1+0.5)^2) / 4
    CHECK(rolling_average_variance(phi, 2, 4) == doctest::Approx(0.3125).epsilon(1e-15));
    // beyond 2l the added term freezes at the full coefficient sum
    const double s2 = -1.0 + 0.5 + 0.3;
    for (int k = 1; k <= 6; ++k) {
        const double expected =
            (4.0 * rolling_average_variance(phi, 2, 4) + k * s2 * s2) / ((2.0 + k) * (2.0 + k));
        CHECK(rolling_average_variance(phi, 2, 4 + k) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK_THROWS_AS(rolling_average_variance(phi, 2, 2), OrderMismatch);
}

TEST_CASE("variance recursion agrees with the general solution") {
    for (int l = 1; l <= 10; ++l) {
        auto spec = random_model(ModelKind::AR, l, 0, 400 + l, 0.9);
        for (int m = l + 1; m <= 3 * l; ++m) {
            const double a = rolling_average_variance(spec.phi, l, m);
            const double b = rolling_average_variance_closed(spec.phi, l, m);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
        }
    }
    // white-noise case: variance of a mean of d unit-variance entries
    for (int m = 1; m <= 8; ++m) {
        CHECK(rolling_average_variance({}, 0, m) == doctest::Approx(1.0 / m).epsilon(1e-14));
    }
}

TEST_CASE("variance ties to the covariance corner block") {
    CHECK(variance_vs_nlrc_oracle(std::vector<double>{0.5, 0.3}, 2, 4));
    CHECK(variance_vs_nlrc_oracle(std::vector<double>{0.9}, 1, 2));
    for (int l = 1; l <= 6; ++l) {
        auto spec = random_model(ModelKind::AR, l, 0, 500 + l, 0.9);
        for (int m = l + 1; m <= 2 * l + 5; ++m) {
            CHECK(variance_vs_nlrc_oracle(spec.phi, l, m));
        }
    }
}

TEST_CASE("variance depends only on the leading coefficients when m <= 2l") {
    const std::vector<double> phi{0.4, -0.3, 0.2, 0.1, -0.05, 0.02};
    const int l = 6;
    for (int m = l + 2; m <= 2 * l; ++m) {
        auto perturbed = phi;
        // indices j = m-l..l (1-based) do not enter the prefix sums used up to m
        for (size_t j = static_cast<size_t>(m - l); j < perturbed.size(); ++j) perturbed[j] += 7.0;
        CHECK(rolling_average_variance(phi, l, m) ==
              doctest::Approx(rolling_average_variance(perturbed, l, m)).epsilon(1e-15));
    }
}

TEST_CASE("plug-in variance table") {
    ModelSpec spec{ModelKind::AR, {0.5}, {}, 1.0};
    auto series = simulate(spec, 20000, 3);
    const int pbar = 10;
    auto table = levinson_all_orders(sample_acf(series, pbar), pbar);
    auto ra = rolling_average_table(table);
    REQUIRE(ra.has_variances());
    for (int h = 0; h < pbar; ++h) {
        // initial condition sigma2(h, h+1) = 1
        CHECK(ra.sigma2(h, h + 1) == 1.0);
        for (int l = h + 1; l <= pbar; ++l) {
            CHECK(ra.sigma2(h, l) > 0.0);
            const auto phi = h >= 1 ? table.row(h) : std::span<const double>{};
            CHECK(ra.sigma2(h, l) ==
                  doctest::Approx(rolling_average_variance(phi, h, l)).epsilon(1e-13));
        }
    }
}

TEST_CASE("order selection on white noise and short-memory models") {
    ModelSpec wn{ModelKind::AR, {}, {}, 1.0};
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto series = simulate(wn, 30000, seed);
        auto report = select_order_rollage(series, 30);
        CHECK(report.p_hat == 0);
        CHECK(report.phi_hat.empty());
        CHECK(static_cast<int>(report.candidates.size()) == 29);
    }

    ModelSpec ar1{ModelKind::AR, {0.9}, {}, 1.0};
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto series = simulate(ar1, 100000, seed);
        auto report = select_order_rollage(series, 30);
        CHECK(report.p_hat == 1);
        REQUIRE(report.phi_hat.size() == 1);
        CHECK(report.phi_hat[0] == doctest::Approx(0.9).epsilon(0.02));
    }
}

TEST_CASE("order selection recovers AR(5)") {
    auto spec = random_model(ModelKind::AR, 5, 0, 23, 0.7);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto series = simulate(spec, 100000, seed);
        auto report = select_order_rollage(series, 50);
        CHECK(report.p_hat == 5);
    }
}

TEST_CASE("the 5%-fraction rule is exposed and reports both statistics") {
    ModelSpec ar1{ModelKind::AR, {0.9}, {}, 1.0};
    auto series = simulate(ar1, 100000, 12);
    SelectionOptions options;
    options.rule = SelectionRule::Rollage5Pct;
    auto report = select_order_rollage(series, 30, options);
    CHECK(report.rule == SelectionRule::Rollage5Pct);
    CHECK_FALSE(report.delta.has_value());
    // candidate 1 carries the AR(1) signal on both statistics
    CHECK(report.candidates[0].frac_significant > 0.5);
    CHECK(report.candidates[0].max_ratio > 3.0);
    CHECK(report.p_hat >= 1);
}

TEST_CASE("select_order_rollage argument checks") {
    ModelSpec wn{ModelKind::AR, {}, {}, 1.0};
    auto series = simulate(wn, 1000, 1);
    CHECK_THROWS_AS(select_order_rollage(series, 51), PbarTooLarge);
    CHECK_THROWS_AS(select_order_rollage(series, 1), InvalidArgument);
}

TEST_CASE("long-order scan: threshold semantics") {
    ModelSpec ma1{ModelKind::MA, {}, {0.5}, 1.0};
    auto series = simulate(ma1, 100000, 5);

    // delta -> 0+: no candidate ever falls below the threshold; saturation
    auto tiny = select_ptilde_rollage_star(series, 1, 60, 1e-12);
    CHECK(tiny.saturated);
    CHECK(tiny.ptilde == 60);

    // huge delta: the first admissible candidate violates immediately
    auto huge = select_ptilde_rollage_star(series, 1, 60, 1e9);
    CHECK_FALSE(huge.saturated);
    CHECK(huge.ptilde == 2);

    // delta = 3: finite, q < ptilde < pbar
    auto sel = select_ptilde_rollage_star(series, 1, 100, 3.0);
    CHECK_FALSE(sel.saturated);
    CHECK(sel.ptilde > 1);
    CHECK(sel.ptilde < 100);

    CHECK_THROWS_AS(select_ptilde_rollage_star(series, 60, 60, 3.0), PbarTooSmall);
    CHECK_THROWS_AS(select_ptilde_rollage_star(series, 1, 60, -1.0), InvalidArgument);
}

TEST_CASE("white-noise long-order scan stops immediately") {
    ModelSpec wn{ModelKind::AR, {}, {}, 1.0};
    int le2 = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto series = simulate(wn, 50000, seed);
        auto sel = select_ptilde_rollage_star(series, 0, 40, 3.0);
        CHECK_FALSE(sel.saturated);
        if (sel.ptilde <= 2) ++le2;
    }
    CHECK(le2 >= 4);
}

TEST_CASE("selection success rate is non-decreasing in the sample size") {
    auto spec = random_model(ModelKind::AR, 5, 0, 23, 0.7);
    double prev = -1.0;
    for (int n : {10000, 100000, 500000}) {
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto series = simulate(spec, n, seed);
            hits += select_order_rollage(series, 50).p_hat == 5;
        }
        const double rate = hits / 20.0;
        CHECK(rate >= prev);
        prev = rate;
    }
    CHECK(prev == 1.0);
}

TEST_CASE("significance pattern around the true order") {
    // AR(20) at n = 5e5: every candidate at or below the true order shows at
    // least one ratio past the 95% bound; candidates 21..35 stay quiet. The
    // per-candidate significant fraction is itself a small-sample binomial,
    // so the null side is checked pooled and against the selection threshold.
    ModelSpec spec;
    for (std::uint64_t seed = 300;; ++seed) {
        spec = random_model(ModelKind::AR, 20, 0, seed, 0.5);
        const auto v = validate_model(spec);
        if (*std::min_element(v.ar_root_moduli.begin(), v.ar_root_moduli.end()) >= 1.01 &&
            std::abs(spec.phi.back()) >= 0.12)
            break;
    }
    const int n = 500000, pbar = 50;
    int good_seeds = 0;
    double null_frac_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto series = simulate(spec, n, seed, 5000);
        SelectionOptions options;
        auto report = select_order_rollage(series, pbar, options);
        bool signal_ok = true;
        for (int c = 1; c <= 20; ++c) signal_ok = signal_ok && report.candidates[c - 1].max_ratio > 1.0;
        bool null_quiet = true;
        for (int c = 21; c <= 35; ++c) {
            null_frac_sum += report.candidates[c - 1].frac_significant / 15.0;
            null_quiet = null_quiet && report.candidates[c - 1].max_ratio <= 3.0;
        }
        if (signal_ok && null_quiet) ++good_seeds;
    }
    CHECK(good_seeds >= 18);
    // pooled past-the-bound rate over the null region stays near its 5% level;
    // per-seed fractions burst because the families fire in correlated blocks
    CHECK(null_frac_sum / 20.0 <= 0.10);
}
