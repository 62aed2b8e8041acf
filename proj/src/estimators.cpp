#include "trunctail/estimators.hpp"

#include "trunctail/errors.hpp"
#include "trunctail/second_order.hpp"
#include "trunctail/selection.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace trunctail {

namespace {

void check_fraction(const ProductLimitTables& tables, std::size_t upsilon, const char* who) {
    const std::size_t n = tables.n();
    if (upsilon < 1 || upsilon > n - 1) {
        std::ostringstream oss;
        oss << who << ": upsilon = " << upsilon << " outside [1, " << n - 1 << "]";
        throw std::out_of_range(oss.str());
    }
}

struct MomentPair {
    double m1;
    double m2;
};

MomentPair first_two_moments(const ProductLimitTables& tables, std::size_t k) {
    const double log_tau = std::log(tables.top_x(k + 1));
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        const double r = tables.top_ratio(i);
        const double e = std::log(tables.top_x(i)) - log_tau;
        s0 += r;
        s1 += r * e;
        s2 += r * e * e;
    }
    return {s1 / s0, s2 / s0};
}

double moment_denominator(const ProductLimitTables& tables, std::size_t upsilon) {
    const MomentPair m = first_two_moments(tables, upsilon);
    const double den = m.m2 - 2.0 * m.m1 * m.m1;
    if (std::fabs(den) < 1e-14 * m.m1 * m.m1) {
        throw DegenerateDenominatorError("M^(2) - 2(M^(1))^2 vanishes relative to (M^(1))^2");
    }
    return den;
}

} // namespace

double m_alpha(const ProductLimitTables& tables, std::size_t upsilon, double alpha) {
    check_fraction(tables, upsilon, "m_alpha");
    if (!(alpha > 0.0)) {
        throw std::domain_error("m_alpha requires alpha > 0");
    }
    const double log_tau = std::log(tables.top_x(upsilon + 1));
    double total = 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i <= upsilon; ++i) {
        const double r = tables.top_ratio(i);
        total += r;
        acc += r * std::pow(std::log(tables.top_x(i)) - log_tau, alpha);
    }
    return acc / total;
}

double q_alpha_stat(const ProductLimitTables& tables, std::size_t upsilon, double alpha) {
    const double den = moment_denominator(tables, upsilon);
    const double m1 = m_alpha(tables, upsilon, 1.0);
    const double ma = m_alpha(tables, upsilon, alpha);
    return (ma - std::tgamma(alpha + 1.0) * std::pow(m1, alpha)) / den;
}

double s_alpha_stat(const ProductLimitTables& tables, std::size_t upsilon, double alpha) {
    const double q_hi = q_alpha_stat(tables, upsilon, 2.0 * alpha);
    const double q_lo = q_alpha_stat(tables, upsilon, alpha + 1.0);
    return delta_factor(alpha) * q_hi / (q_lo * q_lo);
}

Rho1Estimate estimate_rho1(const ProductLimitTables& tables, std::size_t upsilon, double alpha) {
    Rho1Estimate out;
    out.s_stat = s_alpha_stat(tables, upsilon, alpha);
    const AlphaProfile prof = alpha_profile(alpha);
    if (!prof.strictly_inside(out.s_stat)) {
        return out;
    }
    if (alpha == 2.0) {
        const double s = out.s_stat;
        out.rho = (6.0 * s - 4.0 + std::sqrt(3.0 * s - 2.0)) / (4.0 * s - 3.0);
        return out;
    }
    try {
        out.rho = s_alpha_inverse(out.s_stat, alpha);
    } catch (const NotAdmissibleError&) {
        // strictly inside the region but beyond the bisection bracket
    }
    return out;
}

double estimate_a0(const ProductLimitTables& tables, std::size_t k, double rho1) {
    check_fraction(tables, k, "estimate_a0");
    if (!(rho1 < 0.0)) {
        throw std::domain_error("estimate_a0 requires rho1 < 0");
    }
    const MomentPair m = first_two_moments(tables, k);
    if (m.m1 == 0.0) {
        throw std::domain_error("estimate_a0: M^(1)(k) = 0");
    }
    const double om = 1.0 - rho1;
    return om * om * (m.m2 - 2.0 * m.m1 * m.m1) / (2.0 * rho1 * m.m1);
}

double estimate_gamma1_reduced(const ProductLimitTables& tables, std::size_t k, double rho1) {
    check_fraction(tables, k, "estimate_gamma1_reduced");
    if (!(rho1 < 0.0)) {
        throw std::domain_error("estimate_gamma1_reduced requires rho1 < 0");
    }
    const MomentPair m = first_two_moments(tables, k);
    if (m.m1 == 0.0) {
        throw std::domain_error("estimate_gamma1_reduced: M^(1)(k) = 0");
    }
    return m.m1 + (m.m2 - 2.0 * m.m1 * m.m1) / (2.0 * m.m1) * (1.0 - 1.0 / rho1);
}

TailEstimates full_pipeline(const ObservedSample& sample, std::size_t k,
                            const PipelineConfig& cfg) {
    const std::size_t n = sample.size();
    if (n < 3) {
        throw std::invalid_argument("full_pipeline requires n >= 3");
    }
    if (k < 1 || k > n - 1) {
        std::ostringstream oss;
        oss << "full_pipeline: k = " << k << " outside [1, " << n - 1 << "]";
        throw std::out_of_range(oss.str());
    }
    if (!(cfg.fallback_rho < 0.0)) {
        throw std::domain_error("full_pipeline: fallback rho must be negative");
    }
    const ProductLimitTables tables = build_tables(sample);

    TailEstimates est;
    est.k_used = k;
    est.alpha_used = cfg.alpha;
    est.upsilon_used = u_n(n, cfg.epsilon);
    est.rho1 = estimate_rho1(tables, est.upsilon_used, cfg.alpha);
    est.rho1_used = est.rho1.value_or(cfg.fallback_rho);
    est.gamma_bmn = m_alpha(tables, k, 1.0);
    est.a0 = estimate_a0(tables, k, est.rho1_used);
    est.gamma1 = estimate_gamma1_reduced(tables, k, est.rho1_used);
    return est;
}

std::vector<double> gamma_bmn_curve(const ProductLimitTables& tables) {
    const std::size_t n = tables.n();
    std::vector<double> curve(n, std::numeric_limits<double>::quiet_NaN());
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t k = 1; k <= n - 1; ++k) {
        const double r = tables.top_ratio(k);
        const double lx = std::log(tables.top_x(k));
        s0 += r;
        s1 += r * lx;
        curve[k] = s1 / s0 - std::log(tables.top_x(k + 1));
    }
    return curve;
}

std::vector<double> gamma1_reduced_curve(const ProductLimitTables& tables, double rho1) {
    if (!(rho1 < 0.0)) {
        throw std::domain_error("gamma1_reduced_curve requires rho1 < 0");
    }
    const std::size_t n = tables.n();
    std::vector<double> curve(n, std::numeric_limits<double>::quiet_NaN());
    const double correction = 1.0 - 1.0 / rho1;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 1; k <= n - 1; ++k) {
        const double r = tables.top_ratio(k);
        const double lx = std::log(tables.top_x(k));
        s0 += r;
        s1 += r * lx;
        s2 += r * lx * lx;
        const double lt = std::log(tables.top_x(k + 1));
        const double m1 = (s1 - lt * s0) / s0;
        const double m2 = (s2 - 2.0 * lt * s1 + lt * lt * s0) / s0;
        curve[k] = m1 + (m2 - 2.0 * m1 * m1) / (2.0 * m1) * correction;
    }
    return curve;
}

Rho1Curve rho1_alpha2_curve(const ProductLimitTables& tables, double fallback_rho) {
    const std::size_t n = tables.n();
    Rho1Curve curve;
    curve.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    curve.admissible.assign(n, false);
    if (n < 3) {
        return curve;
    }
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    {
        const double r = tables.top_ratio(1);
        const double lx = std::log(tables.top_x(1));
        s0 = r;
        s1 = r * lx;
        s2 = s1 * lx;
        s3 = s2 * lx;
        s4 = s3 * lx;
    }
    for (std::size_t u = 2; u <= n - 1; ++u) {
        const double r = tables.top_ratio(u);
        const double lx = std::log(tables.top_x(u));
        s0 += r;
        s1 += r * lx;
        s2 += r * lx * lx;
        s3 += r * lx * lx * lx;
        s4 += r * lx * lx * lx * lx;

        const double lt = std::log(tables.top_x(u + 1));
        const double m1 = (s1 - lt * s0) / s0;
        const double m2 = (s2 - 2.0 * lt * s1 + lt * lt * s0) / s0;
        const double m3 = (s3 - 3.0 * lt * s2 + 3.0 * lt * lt * s1 - lt * lt * lt * s0) / s0;
        const double m4 =
            (s4 - 4.0 * lt * s3 + 6.0 * lt * lt * s2 - 4.0 * lt * lt * lt * s1 +
             lt * lt * lt * lt * s0) / s0;

        curve.values[u] = fallback_rho;
        const double den = m2 - 2.0 * m1 * m1;
        if (std::fabs(den) < 1e-14 * m1 * m1) {
            continue;
        }
        const double q3 = (m3 - 6.0 * m1 * m1 * m1) / den;
        const double q4 = (m4 - 24.0 * m1 * m1 * m1 * m1) / den;
        const double s_stat = 0.75 * q4 / (q3 * q3);
        if (s_stat > 2.0 / 3.0 && s_stat < 0.75) {
            curve.values[u] =
                (6.0 * s_stat - 4.0 + std::sqrt(3.0 * s_stat - 2.0)) / (4.0 * s_stat - 3.0);
            curve.admissible[u] = true;
        }
    }
    return curve;
}

} // namespace trunctail
