#ifndef TRUNCTAIL_ESTIMATORS_HPP
#define TRUNCTAIL_ESTIMATORS_HPP

#include "trunctail/product_limit.hpp"
#include "trunctail/sampling.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace trunctail {

/// Result of inverting the S statistic. Not-admissible is a value, not a
/// failure: the S statistic is preserved so callers can report fallback use.
struct Rho1Estimate {
    double s_stat = 0.0;
    std::optional<double> rho;

    bool admissible() const { return rho.has_value(); }
    double value_or(double fallback) const { return rho.value_or(fallback); }
};

/// Weighted tail moment of order alpha over the top upsilon order statistics:
/// sum_i a_n^(i) log^alpha(X_{n-i+1:n} / X_{n-upsilon:n}).
/// For upsilon = k and alpha = 1 this is the weighted-Hill tail-index
/// estimator for randomly right-truncated data.
double m_alpha(const ProductLimitTables& tables, std::size_t upsilon, double alpha);

/// Q statistic: (M^(a) - Gamma(a+1) (M^(1))^a) / (M^(2) - 2 (M^(1))^2).
/// Identically 1 at alpha = 2 and 0 at alpha = 1.
/// Throws DegenerateDenominatorError when
/// |M^(2) - 2(M^(1))^2| < 1e-14 (M^(1))^2.
double q_alpha_stat(const ProductLimitTables& tables, std::size_t upsilon, double alpha);

/// S statistic: delta(alpha) Q^(2 alpha) / (Q^(alpha+1))^2. Depends only on
/// log-ratios of the data, hence scale invariant.
double s_alpha_stat(const ProductLimitTables& tables, std::size_t upsilon, double alpha);

/// Second-order parameter estimate: inverts s_alpha at S_n^(alpha)(upsilon)
/// when that value lies strictly inside the admissible region (closed form
/// for alpha = 2), otherwise returns the not-admissible marker.
Rho1Estimate estimate_rho1(const ProductLimitTables& tables, std::size_t upsilon, double alpha);

/// Bias amplitude estimate:
/// (1-rho)^2 (M^(2)(k) - 2(M^(1)(k))^2) / (2 rho M^(1)(k)).
double estimate_a0(const ProductLimitTables& tables, std::size_t k, double rho1);

/// Bias-reduced tail index:
/// M^(1)(k) + (M^(2)(k) - 2(M^(1)(k))^2) / (2 M^(1)(k)) (1 - 1/rho).
double estimate_gamma1_reduced(const ProductLimitTables& tables, std::size_t k, double rho1);

struct TailEstimates {
    double gamma_bmn = 0.0;  // M_n^(1)(k)
    Rho1Estimate rho1;       // at upsilon = u_n, marker preserved
    double rho1_used = 0.0;  // admissible value or the configured fallback
    double a0 = 0.0;
    double gamma1 = 0.0;     // bias-reduced
    std::size_t k_used = 0;
    std::size_t upsilon_used = 0;
    double alpha_used = 2.0;
};

struct PipelineConfig {
    double epsilon = 0.01;     // upsilon = floor(n^(1-epsilon)), clamped to [2, n-1]
    double alpha = 2.0;
    double fallback_rho = -1.0;
};

/// Full estimation chain: rho estimated at upsilon = u_n(n, epsilon), then
/// the bias amplitude and the bias-reduced tail index at the given k.
/// Deterministic given (sample, k, config).
TailEstimates full_pipeline(const ObservedSample& sample, std::size_t k,
                            const PipelineConfig& cfg = {});

/// Evaluates an estimator at every sample fraction in one pass (prefix sums
/// over the ratio-weighted log powers). curve[k] is valid for k in [1, n-1];
/// curve[0] is NaN.
std::vector<double> gamma_bmn_curve(const ProductLimitTables& tables);
std::vector<double> gamma1_reduced_curve(const ProductLimitTables& tables, double rho1);

/// rho-hat at every upsilon for alpha = 2 (closed-form inversion).
/// values[u] is the estimate (fallback where not admissible); admissible[u]
/// records which ones inverted cleanly. Index 0 and 1 are unusable (NaN).
struct Rho1Curve {
    std::vector<double> values;
    std::vector<bool> admissible;
};
Rho1Curve rho1_alpha2_curve(const ProductLimitTables& tables, double fallback_rho = -1.0);

} // namespace trunctail

#endif
