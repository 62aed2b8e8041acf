#ifndef TRUNCTAIL_SAMPLING_HPP
#define TRUNCTAIL_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace trunctail {

/// Burr-truncated-by-Burr generative model. The variable of interest X has
/// survival function (1 + x^(1/delta))^(-delta/gamma1), the truncation
/// variable Y has (1 + x^(1/delta))^(-delta/gamma2); a pair is observed only
/// when x <= y.
struct TruncationModel {
    double gamma1 = 0.6;
    double gamma2 = 1.4;
    double delta = 0.25;

    TruncationModel() = default;
    /// Validates positivity. Emits a warning on stderr when gamma1 >= gamma2
    /// (the estimation theory assumes gamma1 < gamma2) but does not forbid it.
    TruncationModel(double gamma1_, double gamma2_, double delta_);

    /// p = gamma2 / (gamma1 + gamma2), the probability that a pair is observed.
    double observed_fraction() const { return gamma2 / (gamma1 + gamma2); }
    /// Tail index of the observed-X distribution: gamma1 gamma2 / (gamma1 + gamma2).
    double gamma_star() const { return gamma1 * gamma2 / (gamma1 + gamma2); }
    /// Second-order parameter of F; equals -gamma1/delta for the Burr model.
    double rho1() const { return -gamma1 / delta; }
    /// Third-order parameter of F; equals rho1 for the Burr model.
    double beta1() const { return -gamma1 / delta; }
};

/// Solves p = gamma2/(gamma1 + gamma2) for gamma2: gamma2 = p gamma1/(1 - p).
double solve_gamma2(double gamma1, double p);

/// Inverse of the Burr distribution function: ((1-u)^(-gamma/delta) - 1)^delta,
/// for u in [0, 1).
double burr_quantile(double u, double gamma_idx, double delta);

/// Burr survival function (1 + x^(1/delta))^(-delta/gamma) for x >= 0.
double burr_survival(double x, double gamma_idx, double delta);

/// The observed pairs (x_i, y_i), x_i <= y_i, with the permutation sorting
/// the x values ascending. X values are strictly increasing after sorting.
struct ObservedSample {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::size_t> order; // x[order[0]] < x[order[1]] < ...

    std::size_t size() const { return x.size(); }
    /// i-th X order statistic, i in [0, n): X_{i+1:n}.
    double sorted_x(std::size_t i) const { return x[order[i]]; }

    /// Validates x <= y per pair, n >= 1 and distinct x values, then sorts.
    /// Throws std::invalid_argument, EmptySampleError or TieError.
    static ObservedSample from_pairs(std::vector<double> x, std::vector<double> y);
};

/// Derives the per-replicate substream seed: base ^ replicate_index.
inline std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t replicate) {
    return base ^ replicate;
}

/// Draws n_pairs latent (X, Y) pairs by inversion from the two Burr laws and
/// keeps those with X <= Y. Pairs whose X collides with an already kept X are
/// redrawn (the model distributions are continuous). Deterministic given the
/// seed; the engine is std::mt19937_64 with 53-bit uniforms.
/// Throws EmptySampleError when no pair survives.
ObservedSample draw_truncated_sample(const TruncationModel& model, std::size_t n_pairs,
                                     std::uint64_t seed);

} // namespace trunctail

#endif
