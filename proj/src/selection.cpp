#include "trunctail/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace trunctail {

std::size_t u_n(std::size_t n, double epsilon) {
    if (n < 3) {
        throw std::invalid_argument("u_n requires n >= 3");
    }
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::domain_error("u_n requires epsilon in (0, 1)");
    }
    const double raw = std::floor(std::pow(static_cast<double>(n), 1.0 - epsilon) + 1e-12);
    auto u = static_cast<std::size_t>(raw);
    u = std::max<std::size_t>(u, 2);
    u = std::min(u, n - 1);
    return u;
}

namespace {

// Fenwick trees over value ranks holding the element count, the selection
// weight and the weighted value; supports the running weighted absolute
// deviation about the running median in O(log K) per step.
class MedianDeviationTracker {
public:
    explicit MedianDeviationTracker(std::size_t size)
        : cnt_(size + 1, 0), wgt_(size + 1, 0.0), wval_(size + 1, 0.0), size_(size) {}

    void insert(std::size_t rank, double weight, double value) {
        for (std::size_t i = rank + 1; i <= size_; i += i & (~i + 1)) {
            cnt_[i] += 1;
            wgt_[i] += weight;
            wval_[i] += weight * value;
        }
        ++count_;
        total_w_ += weight;
        total_wv_ += weight * value;
    }

    // Weighted sum of |value_j - median| over all inserted elements.
    double deviation(const std::vector<double>& sorted_values) const {
        const std::size_t mid = (count_ + 1) / 2;
        const std::size_t lo_rank = select(mid);
        double median = sorted_values[lo_rank];
        if (count_ % 2 == 0) {
            median = 0.5 * (median + sorted_values[select(mid + 1)]);
        }
        // Elements equal to the median contribute zero either side of the split.
        double w_lo = 0.0, wv_lo = 0.0;
        prefix(lo_rank, w_lo, wv_lo);
        const double w_hi = total_w_ - w_lo;
        const double wv_hi = total_wv_ - wv_lo;
        return median * w_lo - wv_lo + (wv_hi - median * w_hi);
    }

private:
    // Smallest rank whose cumulative count reaches q (1-based q).
    std::size_t select(std::size_t q) const {
        std::size_t pos = 0;
        std::size_t bit = 1;
        while ((bit << 1) <= size_) {
            bit <<= 1;
        }
        std::size_t remaining = q;
        for (; bit != 0; bit >>= 1) {
            const std::size_t next = pos + bit;
            if (next <= size_ && static_cast<std::size_t>(cnt_[next]) < remaining) {
                pos = next;
                remaining -= static_cast<std::size_t>(cnt_[next]);
            }
        }
        return pos; // 0-based rank
    }

    void prefix(std::size_t rank, double& w, double& wv) const {
        w = 0.0;
        wv = 0.0;
        for (std::size_t i = rank + 1; i > 0; i -= i & (~i + 1)) {
            w += wgt_[i];
            wv += wval_[i];
        }
    }

    std::vector<int> cnt_;
    std::vector<double> wgt_;
    std::vector<double> wval_;
    std::size_t size_;
    std::size_t count_ = 0;
    double total_w_ = 0.0;
    double total_wv_ = 0.0;
};

} // namespace

std::size_t reiss_thomas_k(const std::function<double(std::size_t)>& estimator_curve,
                           std::size_t n, const SelectionConfig& cfg) {
    if (cfg.k_min < 2) {
        throw std::invalid_argument("reiss_thomas_k requires k_min >= 2");
    }
    if (!(cfg.k_max_fraction > 0.0) || !(cfg.k_max_fraction < 1.0)) {
        throw std::domain_error("reiss_thomas_k requires k_max_fraction in (0, 1)");
    }
    const auto k_max = static_cast<std::size_t>(
        std::floor(cfg.k_max_fraction * static_cast<double>(n)));
    if (cfg.k_min > k_max) {
        std::ostringstream oss;
        oss << "reiss_thomas_k: empty range [" << cfg.k_min << ", " << k_max << "]";
        throw std::out_of_range(oss.str());
    }

    std::vector<double> values(k_max); // curve(1..k_max)
    for (std::size_t i = 1; i <= k_max; ++i) {
        values[i - 1] = estimator_curve(i);
    }
    // Center at the first point: the objective is invariant to adding a
    // constant to the curve, and centering makes that exact in floating
    // point (a constant curve yields an exactly zero objective).
    const double center = values[0];
    for (double& v : values) {
        v -= center;
    }

    // Value ranks (stable within ties) for the Fenwick trees.
    std::vector<std::size_t> idx(k_max);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&values](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) {
            return values[a] < values[b];
        }
        return a < b;
    });
    std::vector<std::size_t> rank_of(k_max);
    std::vector<double> sorted_values(k_max);
    for (std::size_t r = 0; r < k_max; ++r) {
        rank_of[idx[r]] = r;
        sorted_values[r] = values[idx[r]];
    }

    // Windows of only a few points produce spuriously tiny objectives, so the
    // minimization starts at 15 when the range allows; an exactly zero
    // minimum (constant curve) still resolves to k_min.
    const std::size_t k_arg_min = std::min(std::max<std::size_t>(cfg.k_min, 15), k_max);

    MedianDeviationTracker tracker(k_max);
    std::size_t best_k = cfg.k_min;
    double best_obj = 0.0;
    bool have_best = false;
    for (std::size_t k = 1; k <= k_max; ++k) {
        tracker.insert(rank_of[k - 1], std::pow(static_cast<double>(k), cfg.theta_rt),
                       values[k - 1]);
        if (k < k_arg_min) {
            continue;
        }
        const double obj = tracker.deviation(sorted_values) / static_cast<double>(k);
        if (!have_best || obj < best_obj) {
            best_obj = obj;
            best_k = k;
            have_best = true;
        }
    }
    if (have_best && best_obj == 0.0) {
        return cfg.k_min; // exact tie: every window is flat
    }
    return best_k;
}

} // namespace trunctail
