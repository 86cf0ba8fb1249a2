#include "mlz/wigner.hpp"

#include <algorithm>
#include <cmath>

namespace mlz {

namespace {

// Extended precision absorbs the cancellation between alternating terms at larger j.
long double log_factorial(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

}  // namespace

WignerMatrix wigner_d(HalfInteger j, double theta) {
    const int d = spin_dimension(j);
    const int two_j = j.twice();
    const long double c = std::cos(0.5L * theta);
    const long double s = std::sin(0.5L * theta);

    WignerMatrix out{j, theta, Eigen::MatrixXd::Zero(d, d)};
    for (int row = 0; row < d; ++row) {
        // m' = j - row, so j + m' = two_j - row and j - m' = row.
        const int jp_plus = two_j - row;
        const int jp_minus = row;
        for (int col = 0; col < d; ++col) {
            const int j_plus = two_j - col;
            const int j_minus = col;
            const int shift = jp_plus - j_plus;  // m' - m
            const long double log_norm =
                0.5 * (log_factorial(jp_plus) + log_factorial(jp_minus) + log_factorial(j_plus) +
                       log_factorial(j_minus));
            const int k_lo = std::max(0, -shift);
            const int k_hi = std::min(j_plus, jp_minus);
            long double sum = 0.0L;
            for (int k = k_lo; k <= k_hi; ++k) {
                const long double log_den = log_factorial(j_plus - k) + log_factorial(k) +
                                       log_factorial(jp_minus - k) + log_factorial(k + shift);
                const long double mag = std::exp(log_norm - log_den);
                const long double term =
                    mag * std::pow(c, j_plus + jp_minus - 2 * k) * std::pow(s, 2 * k + shift);
                sum += (k % 2 == 0) ? term : -term;
            }
            out.d(row, col) = static_cast<double>(sum);
        }
    }
    return out;
}

}  // namespace mlz
