#include "rollage/nlrc.hpp"

#include <algorithm>
#include <vector>

#include "rollage/errors.hpp"

namespace rollage {

namespace {

void check_orders(std::span<const double> phi, int p, int m) {
    if (p < 1) throw InvalidArgument("corner block requires p >= 1");
    if (static_cast<int>(phi.size()) != p) throw InvalidArgument("phi length must equal p");
    if (m <= p) throw OrderMismatch("fitted order m must exceed p");
}

}  // namespace

NlrcMatrix nlrc_closed_form(std::span<const double> phi, int p, int m) {
    check_orders(phi, p, m);
    // phi0 := -1 prepended; entry (i,j), i >= j, with band offset b = i - j:
    //   sum_{k=0}^{min(m-p-i, p-b)} phi_k phi_{k+b},  zero for b > p
    std::vector<double> ph(static_cast<size_t>(p) + 1);
    ph[0] = -1.0;
    std::copy(phi.begin(), phi.end(), ph.begin() + 1);

    const int dim = m - p;
    NlrcMatrix out{p, m, Eigen::MatrixXd::Zero(dim, dim)};
    for (int i = 1; i <= dim; ++i) {
        for (int j = 1; j <= i; ++j) {
            const int b = i - j;
            if (b > p) continue;
            const int upper = std::min(m - p - i, p - b);
            double acc = 0.0;
            for (int k = 0; k <= upper; ++k) {
                acc += ph[static_cast<size_t>(k)] * ph[static_cast<size_t>(k + b)];
            }
            out.entries(i - 1, j - 1) = acc;
            out.entries(j - 1, i - 1) = acc;
        }
    }
    return out;
}

NlrcMatrix nlrc_recursive(std::span<const double> phi, int p, int m) {
    check_orders(phi, p, m);
    std::vector<double> ph(static_cast<size_t>(p) + 1);
    ph[0] = -1.0;
    std::copy(phi.begin(), phi.end(), ph.begin() + 1);

    // initial block at fitted order p+1 is the scalar phi_0^2 = 1
    Eigen::MatrixXd cur = Eigen::MatrixXd::Constant(1, 1, 1.0);
    for (int mp = p + 2; mp <= m; ++mp) {
        const int dim = mp - p;
        Eigen::MatrixXd next(dim, dim);
        // interior: shift of the previous block
        next.block(1, 1, dim - 1, dim - 1) = cur;
        // first column: accumulate while the dropped column still overlaps the
        // band (mp <= 2p+1), pure copy afterwards
        for (int i = 1; i <= dim - 1; ++i) {
            double v = cur(i - 1, 0);
            if (mp <= 2 * p + 1) {
                v += ph[static_cast<size_t>(mp - p - i)] * ph[static_cast<size_t>(mp - p - 1)];
            }
            next(i - 1, 0) = v;
        }
        next(dim - 1, 0) = (mp <= 2 * p + 1) ? ph[0] * ph[static_cast<size_t>(mp - p - 1)] : 0.0;
        for (int i = 1; i < dim; ++i) next(0, i) = next(i, 0);
        cur = std::move(next);
    }
    return NlrcMatrix{p, m, std::move(cur)};
}

}  // namespace rollage
