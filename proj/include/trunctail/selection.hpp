#ifndef TRUNCTAIL_SELECTION_HPP
#define TRUNCTAIL_SELECTION_HPP

#include <cstddef>
#include <functional>

namespace trunctail {

struct SelectionConfig {
    double epsilon = 0.01;        // deterministic u_n rule exponent
    double theta_rt = 0.3;        // weight exponent of the selection objective
    std::size_t k_min = 2;
    double k_max_fraction = 0.9;
};

/// Deterministic sample fraction floor(n^(1-epsilon)), clamped to [2, n-1].
/// Requires n >= 3.
std::size_t u_n(std::size_t n, double epsilon);

/// Sample-fraction heuristic: returns the k in [k_min, floor(k_max_fraction n)]
/// minimizing (1/k) sum_{i=1}^{k} i^theta |curve(i) - median{curve(1..k)}|.
/// The minimization skips windows shorter than 15 points (their objectives
/// are spuriously small); a constant curve resolves to k_min (exact tie,
/// ties broken toward smaller k). The curve must be pure and evaluable on
/// [1, floor(k_max_fraction n)]. O(K log K).
std::size_t reiss_thomas_k(const std::function<double(std::size_t)>& estimator_curve,
                           std::size_t n, const SelectionConfig& cfg = {});

} // namespace trunctail

#endif
