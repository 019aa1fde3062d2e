#include "rollage/model_spec.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "rollage/errors.hpp"

namespace rollage {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::AR: return "ar";
        case ModelKind::MA: return "ma";
        case ModelKind::ARMA: return "arma";
    }
    throw InvalidArgument("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "ar") return ModelKind::AR;
    if (s == "ma") return ModelKind::MA;
    if (s == "arma") return ModelKind::ARMA;
    throw InvalidArgument("unknown model kind: " + s);
}

std::vector<double> polynomial_root_moduli(std::span<const double> coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 1) return {};
    if (coeffs[static_cast<size_t>(d)] == 0.0) {
        throw ZeroLeadingCoefficient("leading polynomial coefficient is zero");
    }
    // companion matrix of the monic polynomial z^d + c_{d-1}/c_d z^{d-1} + ...
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) {
        companion(i, d - 1) = -coeffs[static_cast<size_t>(i)] / coeffs[static_cast<size_t>(d)];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<double> moduli(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) moduli[static_cast<size_t>(i)] = std::abs(solver.eigenvalues()(i));
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

namespace {

void check_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw NonFiniteCoefficient(std::string(what) + " contains a non-finite value");
    }
}

bool all_outside_unit_circle(const std::vector<double>& moduli) {
    return std::all_of(moduli.begin(), moduli.end(),
                       [](double m) { return m > 1.0 + kRootMargin; });
}

}  // namespace

ValidationResult validate_model(const ModelSpec& spec) {
    check_finite(spec.phi, "phi");
    check_finite(spec.theta, "theta");
    if (!std::isfinite(spec.sigma2_w) || spec.sigma2_w <= 0.0) {
        throw InvalidModel("sigma2_w must be positive and finite");
    }
    if (spec.p() >= 1 && spec.phi.back() == 0.0) {
        throw ZeroLeadingCoefficient("phi_p = 0 with declared AR order");
    }
    if (spec.q() >= 1 && spec.theta.back() == 0.0) {
        throw ZeroLeadingCoefficient("theta_q = 0 with declared MA order");
    }

    ValidationResult result;
    // AR characteristic polynomial 1 - phi_1 z - ... - phi_p z^p
    std::vector<double> ar_poly(spec.phi.size() + 1);
    ar_poly[0] = 1.0;
    for (int i = 1; i <= spec.p(); ++i) ar_poly[static_cast<size_t>(i)] = -spec.phi[static_cast<size_t>(i) - 1];
    result.ar_root_moduli = polynomial_root_moduli(ar_poly);
    result.causal = all_outside_unit_circle(result.ar_root_moduli);

    // MA characteristic polynomial 1 + theta_1 z + ... + theta_q z^q
    std::vector<double> ma_poly(spec.theta.size() + 1);
    ma_poly[0] = 1.0;
    for (int i = 1; i <= spec.q(); ++i) ma_poly[static_cast<size_t>(i)] = spec.theta[static_cast<size_t>(i) - 1];
    result.ma_root_moduli = polynomial_root_moduli(ma_poly);
    result.invertible = all_outside_unit_circle(result.ma_root_moduli);

    return result;
}

}  // namespace rollage
