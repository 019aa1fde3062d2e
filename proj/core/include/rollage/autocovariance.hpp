#ifndef ROLLAGE_AUTOCOVARIANCE_HPP
#define ROLLAGE_AUTOCOVARIANCE_HPP

#include <Eigen/Dense>
#include <vector>

#include "rollage/model_spec.hpp"

namespace rollage {

/// Theoretical autocovariances gamma_0..gamma_{max_lag} of a causal AR model.
struct AutocovarianceSequence {
    std::vector<double> gamma;
    double sigma2_w = 1.0;

    int max_lag() const { return static_cast<int>(gamma.size()) - 1; }
};

/**
 * Solves the order-(p+1) Yule-Walker system
 *   gamma_0 = phi_1 gamma_1 + ... + phi_p gamma_p + sigma2_w
 *   gamma_j = phi_1 gamma_{j-1} + ... + phi_p gamma_{j-p}   (1 <= j <= p)
 * and extends lags p+1..max_lag by the same recursion.
 *
 * Requires a causal spec (kind AR, possibly p = 0 for white noise).
 * Throws SingularSystem for numerically unit-root models.
 */
AutocovarianceSequence theoretical_autocovariance(const ModelSpec& spec, int max_lag);

/// Symmetric Toeplitz matrix with (i,j) = gamma_{|i-j|}, size m x m.
/// Throws InsufficientLags when the sequence holds fewer than m lags.
Eigen::MatrixXd gamma_matrix(const AutocovarianceSequence& acv, int m);

}  // namespace rollage

#endif
