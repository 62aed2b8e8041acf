#include "trunctail/second_order.hpp"

#include "trunctail/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace trunctail {

namespace {

void require_negative_rho(double rho) {
    if (!(rho < 0.0) || !std::isfinite(rho)) {
        throw std::domain_error("rho must be a finite negative real");
    }
}

void require_valid_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::domain_error("alpha must be a finite positive real");
    }
    if (alpha == 0.5 || alpha == 1.0) {
        throw std::domain_error("alpha in {1/2, 1} is excluded: s_alpha degenerates to a constant");
    }
}

} // namespace

double delta_factor(double alpha) {
    if (!(alpha > 0.0)) {
        throw std::domain_error("delta(alpha) requires alpha > 0");
    }
    const double g = std::tgamma(alpha);
    return alpha * (alpha + 1.0) * (alpha + 1.0) * g * g / (4.0 * std::tgamma(2.0 * alpha));
}

double second_order_p(double beta, double rho) {
    require_negative_rho(rho);
    // The direct form loses ~|log10 rho^2| digits to cancellation as rho -> 0;
    // switch to the series comfortably before that matters (it is required
    // for |rho| < 1e-3 and cheap up to 1e-2).
    if (std::fabs(rho) >= 1e-2) {
        const double om = 1.0 - rho;
        return 1.0 - std::pow(om, beta) - beta * rho * std::pow(om, beta - 1.0);
    }
    // P(beta; rho) = sum_{k>=2} (-1)^k (k-1) C(beta,k) rho^k.
    double binom = beta * (beta - 1.0) / 2.0; // C(beta, 2)
    double rho_pow = rho * rho;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 2; k <= 64; ++k) {
        const double term = sign * (k - 1) * binom * rho_pow;
        sum += term;
        if (std::fabs(term) <= std::numeric_limits<double>::epsilon() * std::fabs(sum)) {
            break;
        }
        binom *= (beta - k) / (k + 1.0);
        rho_pow *= rho;
        sign = -sign;
    }
    return sum;
}

double s_alpha(double rho, double alpha) {
    require_negative_rho(rho);
    require_valid_alpha(alpha);
    const double num = second_order_p(2.0 * alpha, rho);
    const double den = second_order_p(alpha + 1.0, rho);
    return rho * rho * num / (den * den);
}

double q_alpha(double rho, double gamma1, double alpha) {
    require_negative_rho(rho);
    if (!(gamma1 > 0.0)) {
        throw std::domain_error("q_alpha requires gamma1 > 0");
    }
    if (!(alpha > 0.0)) {
        throw std::domain_error("q_alpha requires alpha > 0");
    }
    const double p = second_order_p(alpha, rho);
    return std::pow(gamma1, alpha - 2.0) * std::tgamma(alpha + 1.0) * p /
           (2.0 * rho * rho * std::pow(1.0 - rho, alpha - 2.0));
}

AlphaProfile alpha_profile(double alpha) {
    require_valid_alpha(alpha);
    AlphaProfile prof;
    prof.alpha = alpha;
    prof.delta = delta_factor(alpha);
    const double at_minus_inf = (2.0 * alpha - 1.0) / (alpha * alpha);
    const double at_zero = 4.0 * (2.0 * alpha - 1.0) / (alpha * (alpha + 1.0) * (alpha + 1.0));
    if (alpha < 0.5) {
        prof.increasing = true;
        prof.lo = at_minus_inf;
        prof.hi = at_zero;
        prof.lo_closed = false;
        prof.hi_closed = true;
    } else {
        prof.increasing = false;
        prof.lo = at_zero;
        prof.hi = at_minus_inf;
        prof.lo_closed = true;
        prof.hi_closed = false;
    }
    return prof;
}

double s_alpha_inverse(double s, double alpha) {
    const AlphaProfile prof = alpha_profile(alpha);
    if (!prof.strictly_inside(s)) {
        std::ostringstream oss;
        oss << "S = " << s << " outside the admissible region (" << prof.lo << ", " << prof.hi
            << ") for alpha = " << alpha;
        throw NotAdmissibleError(oss.str(), s);
    }
    if (alpha == 2.0) {
        return (6.0 * s - 4.0 + std::sqrt(3.0 * s - 2.0)) / (4.0 * s - 3.0);
    }

    double lo = -1e6;  // rho bracket, hard range
    double hi = -1e-8;
    double f_lo = s_alpha(lo, alpha);
    double f_hi = s_alpha(hi, alpha);
    const bool want_ge_lo = prof.increasing ? (s >= f_lo) : (s <= f_lo);
    const bool want_le_hi = prof.increasing ? (s <= f_hi) : (s >= f_hi);
    if (!want_ge_lo || !want_le_hi) {
        std::ostringstream oss;
        oss << "S = " << s << " not attainable on the bisection bracket [-1e6, -1e-8]";
        throw NotAdmissibleError(oss.str(), s);
    }
    double rho = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        rho = 0.5 * (lo + hi);
        const double f = s_alpha(rho, alpha);
        if (std::fabs(f - s) <= 1e-12) {
            return rho;
        }
        const bool go_right = prof.increasing ? (f < s) : (f > s);
        if (go_right) {
            lo = rho;
        } else {
            hi = rho;
        }
    }
    if (std::fabs(s_alpha(rho, alpha) - s) <= 1e-10) {
        return rho; // close enough for ill-conditioned near-boundary targets
    }
    throw std::runtime_error("s_alpha_inverse: bisection failed to converge in 200 steps");
}

double s_alpha_prime(double rho, double alpha) {
    require_negative_rho(rho);
    require_valid_alpha(alpha);
    double h = std::fmax(1e-6, 1e-6 * std::fabs(rho));
    if (rho + h >= 0.0) {
        h = 0.5 * std::fabs(rho);
    }
    return (s_alpha(rho + h, alpha) - s_alpha(rho - h, alpha)) / (2.0 * h);
}

} // namespace trunctail
