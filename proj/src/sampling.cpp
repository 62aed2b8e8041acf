#include "trunctail/sampling.hpp"

#include "trunctail/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace trunctail {

TruncationModel::TruncationModel(double gamma1_, double gamma2_, double delta_)
    : gamma1(gamma1_), gamma2(gamma2_), delta(delta_) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0) || !(delta > 0.0)) {
        throw std::invalid_argument("TruncationModel requires gamma1, gamma2, delta > 0");
    }
    if (gamma1 >= gamma2) {
        std::cerr << "trunctail: warning: gamma1 >= gamma2 (" << gamma1 << " >= " << gamma2
                  << "); the asymptotic theory assumes gamma1 < gamma2\n";
    }
}

double solve_gamma2(double gamma1, double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("solve_gamma2 requires p in (0, 1)");
    }
    if (!(gamma1 > 0.0)) {
        throw std::domain_error("solve_gamma2 requires gamma1 > 0");
    }
    return p * gamma1 / (1.0 - p);
}

double burr_quantile(double u, double gamma_idx, double delta) {
    if (!(u >= 0.0) || !(u < 1.0)) {
        throw std::domain_error("burr_quantile requires u in [0, 1)");
    }
    if (!(gamma_idx > 0.0) || !(delta > 0.0)) {
        throw std::domain_error("burr_quantile requires gamma, delta > 0");
    }
    return std::pow(std::pow(1.0 - u, -gamma_idx / delta) - 1.0, delta);
}

double burr_survival(double x, double gamma_idx, double delta) {
    if (!(x >= 0.0)) {
        throw std::domain_error("burr_survival requires x >= 0");
    }
    return std::pow(1.0 + std::pow(x, 1.0 / delta), -delta / gamma_idx);
}

ObservedSample ObservedSample::from_pairs(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("x and y must have equal length");
    }
    if (x.empty()) {
        throw EmptySampleError("observed sample is empty");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]) || !(x[i] > 0.0) || !(y[i] > 0.0)) {
            std::ostringstream oss;
            oss << "pair " << i + 1 << ": values must be finite and positive";
            throw std::invalid_argument(oss.str());
        }
        if (x[i] > y[i]) {
            std::ostringstream oss;
            oss << "pair " << i + 1 << ": x > y violates the truncation scheme";
            throw std::invalid_argument(oss.str());
        }
    }
    ObservedSample s;
    s.x = std::move(x);
    s.y = std::move(y);
    s.order.resize(s.x.size());
    std::iota(s.order.begin(), s.order.end(), std::size_t{0});
    std::sort(s.order.begin(), s.order.end(),
              [&s](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
    for (std::size_t i = 1; i < s.order.size(); ++i) {
        if (s.sorted_x(i - 1) == s.sorted_x(i)) {
            throw TieError("tied X values: the product-limit estimator requires distinct order statistics");
        }
    }
    return s;
}

namespace {

// 53-bit uniform in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

ObservedSample draw_truncated_sample(const TruncationModel& model, std::size_t n_pairs,
                                     std::uint64_t seed) {
    if (n_pairs < 1) {
        throw std::invalid_argument("draw_truncated_sample requires n_pairs >= 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> xs;
    std::vector<double> ys;
    std::unordered_set<double> kept_x;
    xs.reserve(n_pairs);
    ys.reserve(n_pairs);

    for (std::size_t i = 0; i < n_pairs; ++i) {
        for (;;) {
            const double ux = uniform01(rng);
            const double uy = uniform01(rng);
            const double lx = burr_quantile(ux, model.gamma1, model.delta);
            const double ly = burr_quantile(uy, model.gamma2, model.delta);
            if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
                continue; // u at the extreme ends of the 53-bit grid: redraw
            }
            if (lx > ly) {
                break; // truncated away
            }
            if (kept_x.count(lx) != 0) {
                continue; // tie with a kept X: redraw the pair
            }
            xs.push_back(lx);
            ys.push_back(ly);
            kept_x.insert(lx);
            break;
        }
    }
    if (xs.empty()) {
        throw EmptySampleError("no pair survived truncation");
    }
    return ObservedSample::from_pairs(std::move(xs), std::move(ys));
}

} // namespace trunctail
