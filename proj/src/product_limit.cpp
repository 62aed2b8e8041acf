#include "trunctail/product_limit.hpp"

#include "trunctail/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace trunctail {

namespace {

// #{i : x_i <= x <= y_i} = #{i : y_i >= x} - #{i : x_i > x}; every pair with
// x_i > x also has y_i >= x_i > x, so the subtraction removes exactly the
// pairs whose interval starts beyond x.
std::size_t coverage_count(const std::vector<double>& xs_sorted,
                           const std::vector<double>& ys_sorted, double x) {
    const auto y_ge = ys_sorted.end() - std::lower_bound(ys_sorted.begin(), ys_sorted.end(), x);
    const auto x_gt = xs_sorted.end() - std::upper_bound(xs_sorted.begin(), xs_sorted.end(), x);
    return static_cast<std::size_t>(y_ge - x_gt);
}

std::vector<double> sorted_values(const std::vector<double>& v) {
    std::vector<double> out(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> sorted_x_values(const ObservedSample& sample) {
    std::vector<double> out;
    out.reserve(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        out.push_back(sample.sorted_x(i));
    }
    return out;
}

} // namespace

double coverage(const ObservedSample& sample, double x) {
    if (sample.size() == 0) {
        throw EmptySampleError("coverage requires a nonempty sample");
    }
    const std::vector<double> xs = sorted_x_values(sample);
    const std::vector<double> ys = sorted_values(sample.y);
    return static_cast<double>(coverage_count(xs, ys, x)) / static_cast<double>(sample.size());
}

ProductLimitTables build_tables(const ObservedSample& sample) {
    const std::size_t n = sample.size();
    if (n == 0) {
        throw EmptySampleError("build_tables requires a nonempty sample");
    }
    ProductLimitTables t;
    t.sorted_x = sorted_x_values(sample);
    for (std::size_t i = 1; i < n; ++i) {
        if (t.sorted_x[i - 1] == t.sorted_x[i]) {
            throw TieError("build_tables: tied X values");
        }
    }
    const std::vector<double> ys = sorted_values(sample.y);

    t.c_at_x.resize(n);
    std::vector<double> inv_count(n); // 1/(n C_n(X_{i:n}))
    for (std::size_t i = 0; i < n; ++i) {
        // At the i-th order statistic (0-based) exactly n-1-i X values exceed it.
        const auto y_ge =
            ys.end() - std::lower_bound(ys.begin(), ys.end(), t.sorted_x[i]);
        const std::size_t covered = static_cast<std::size_t>(y_ge) - (n - 1 - i);
        t.c_at_x[i] = static_cast<double>(covered) / static_cast<double>(n);
        inv_count[i] = 1.0 / static_cast<double>(covered);
    }

    // F_n at X_{i:n} is exp(-sum of 1/(n C_n) over the higher order
    // statistics); suffix sums in log space, exponentiated once.
    t.f_at_x.resize(n);
    double log_suffix = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        t.f_at_x[i] = std::exp(-log_suffix);
        log_suffix += inv_count[i];
    }

    t.ratio.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.ratio[i] = t.f_at_x[i] / t.c_at_x[i];
    }
    return t;
}

double woodroofe_cdf(const ObservedSample& sample, double x) {
    if (sample.size() == 0) {
        throw EmptySampleError("woodroofe_cdf requires a nonempty sample");
    }
    const ProductLimitTables t = build_tables(sample);
    const std::size_t n = t.n();
    double log_sum = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        if (t.sorted_x[i] <= x) {
            break;
        }
        log_sum += 1.0 / (static_cast<double>(n) * t.c_at_x[i]);
    }
    return std::exp(-log_sum);
}

std::vector<double> bmn_weights(const ProductLimitTables& tables, std::size_t k) {
    const std::size_t n = tables.n();
    if (k < 1 || k > n - 1) {
        std::ostringstream oss;
        oss << "bmn_weights: k = " << k << " outside [1, " << n - 1 << "]";
        throw std::out_of_range(oss.str());
    }
    double total = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        total += tables.top_ratio(i);
    }
    std::vector<double> w(k);
    double partial = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
        w[i - 1] = tables.top_ratio(i) / total;
        partial += w[i - 1];
    }
    w[k - 1] = 1.0 - partial;
    return w;
}

double upper_tail_mass(const ProductLimitTables& tables, std::size_t upsilon) {
    const std::size_t n = tables.n();
    if (upsilon < 1 || upsilon > n - 1) {
        std::ostringstream oss;
        oss << "upper_tail_mass: upsilon = " << upsilon << " outside [1, " << n - 1 << "]";
        throw std::out_of_range(oss.str());
    }
    double sum = 0.0;
    for (std::size_t i = 1; i <= upsilon; ++i) {
        sum += tables.top_ratio(i);
    }
    return sum / static_cast<double>(n);
}

} // namespace trunctail
