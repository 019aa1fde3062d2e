#include "rollage/autocovariance.hpp"

#include <cmath>
#include <cstdlib>

#include "rollage/errors.hpp"

namespace rollage {

AutocovarianceSequence theoretical_autocovariance(const ModelSpec& spec, int max_lag) {
    if (spec.q() != 0) throw InvalidArgument("theoretical_autocovariance expects a pure AR spec");
    const int p = spec.p();
    if (max_lag < p) throw InvalidArgument("max_lag must be at least the AR order");

    AutocovarianceSequence out;
    out.sigma2_w = spec.sigma2_w;
    out.gamma.assign(static_cast<size_t>(max_lag) + 1, 0.0);

    if (p == 0) {
        out.gamma[0] = spec.sigma2_w;
        return out;
    }

    // Unknowns gamma_0..gamma_p. Equation j: gamma_j - sum_k phi_k gamma_{|j-k|}
    // equals sigma2_w for j = 0 and zero for j = 1..p.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p + 1, p + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(p + 1);
    b(0) = spec.sigma2_w;
    for (int j = 0; j <= p; ++j) {
        a(j, j) += 1.0;
        for (int k = 1; k <= p; ++k) {
            a(j, std::abs(j - k)) -= spec.phi[static_cast<size_t>(k) - 1];
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) {
        throw SingularSystem("Yule-Walker system is numerically singular (near-unit-root model)");
    }
    Eigen::VectorXd g = lu.solve(b);
    for (int j = 0; j <= p; ++j) {
        if (!std::isfinite(g(j))) throw SingularSystem("non-finite autocovariance solution");
        out.gamma[static_cast<size_t>(j)] = g(j);
    }
    if (out.gamma[0] <= 0.0) {
        throw SingularSystem("Yule-Walker solution has non-positive variance");
    }

    for (int j = p + 1; j <= max_lag; ++j) {
        double acc = 0.0;
        for (int k = 1; k <= p; ++k) {
            acc += spec.phi[static_cast<size_t>(k) - 1] * out.gamma[static_cast<size_t>(j - k)];
        }
        out.gamma[static_cast<size_t>(j)] = acc;
    }
    return out;
}

Eigen::MatrixXd gamma_matrix(const AutocovarianceSequence& acv, int m) {
    if (m < 1) throw InvalidArgument("m must be positive");
    if (acv.max_lag() < m - 1) throw InsufficientLags("autocovariance sequence holds too few lags");
    Eigen::MatrixXd gamma(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            gamma(i, j) = acv.gamma[static_cast<size_t>(std::abs(i - j))];
        }
    }
    return gamma;
}

}  // namespace rollage
