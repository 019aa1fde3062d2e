#ifndef ROLLAGE_NLRC_HPP
#define ROLLAGE_NLRC_HPP

#include <Eigen/Dense>
#include <span>

namespace rollage {

/**
 * Lower-right (m-p) x (m-p) corner block of sigma2_w * Gamma_{p,m}^{-1}, the
 * asymptotic covariance of the over-fitted AR(m) coefficient estimates at
 * lags p+1..m when the true order is p.
 *
 * The block has closed form in the AR coefficients alone: with phi_0 := -1,
 *   entry(i,j) = sum_{k=0}^{min(m-p-i, p-|i-j|)} phi_k phi_{k+|i-j|}
 * for |i-j| <= p (1-based i >= j), zero beyond that band.
 */
struct NlrcMatrix {
    int p = 0;  ///< true-order parameter
    int m = 0;  ///< fitted order, m > p
    Eigen::MatrixXd entries;

    int dim() const { return m - p; }
};

/// Direct evaluation of the closed form. phi has length p; m > p >= 1.
/// Throws OrderMismatch when m <= p.
NlrcMatrix nlrc_closed_form(std::span<const double> phi, int p, int m);

/// Same matrix built by the nested first-column/shift recursion,
/// iterating the fitted order from p+1 up to m.
NlrcMatrix nlrc_recursive(std::span<const double> phi, int p, int m);

}  // namespace rollage

#endif
