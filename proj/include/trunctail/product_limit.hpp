#ifndef TRUNCTAIL_PRODUCT_LIMIT_HPP
#define TRUNCTAIL_PRODUCT_LIMIT_HPP

#include "trunctail/sampling.hpp"

#include <cstddef>
#include <vector>

namespace trunctail {

/// Woodroofe product-limit estimator F_n and coverage function C_n evaluated
/// at every X order statistic, plus the F_n/C_n ratios that drive the
/// weighted tail moments. Immutable after construction.
struct ProductLimitTables {
    std::vector<double> sorted_x; // X_{1:n} < ... < X_{n:n}
    std::vector<double> c_at_x;   // C_n(X_{i:n}) >= 1/n
    std::vector<double> f_at_x;   // F_n(X_{i:n}), nondecreasing, ends at 1
    std::vector<double> ratio;    // f_at_x / c_at_x

    std::size_t n() const { return sorted_x.size(); }
    /// Value at the i-th largest X, i in [1, n]: X_{n-i+1:n}.
    double top_x(std::size_t i) const { return sorted_x[n() - i]; }
    double top_ratio(std::size_t i) const { return ratio[n() - i]; }
};

/// C_n(x) = n^(-1) #{i : x_i <= x <= y_i}. Total on positive reals.
double coverage(const ObservedSample& sample, double x);

/// F_n(x) = prod over {i : x_i > x} of exp(-1/(n C_n(x_i))); 1 for
/// x >= X_{n:n}. Accumulated as a sum of logs.
double woodroofe_cdf(const ObservedSample& sample, double x);

/// One-pass O(n log n) precomputation of C_n, F_n and their ratio at all
/// order statistics. Throws TieError if the X values are not distinct.
ProductLimitTables build_tables(const ObservedSample& sample);

/// Normalized weights a_n^(1..k): F_n/C_n at the i-th largest X divided by
/// the sum of the ratios over the top k. The weights sum to 1 exactly (the
/// last element absorbs the rounding). Requires 1 <= k <= n-1.
std::vector<double> bmn_weights(const ProductLimitTables& tables, std::size_t k);

/// Estimated upper-tail mass at X_{n-upsilon:n}:
/// n^(-1) sum_{i=1}^{upsilon} F_n/C_n at the i-th largest X. This is the
/// normalizer of the weighted tail moments; it matches 1 - F_n(X_{n-upsilon:n})
/// only asymptotically.
double upper_tail_mass(const ProductLimitTables& tables, std::size_t upsilon);

} // namespace trunctail

#endif
