#ifndef TRUNCTAIL_SECOND_ORDER_HPP
#define TRUNCTAIL_SECOND_ORDER_HPP

#include <cstddef>

namespace trunctail {

/// Admissible range of the S statistic for a given alpha, together with the
/// monotone direction of rho -> s_alpha(rho) on (-inf, 0).
///
/// For alpha in (0, 1/2) the map is increasing and the range is
/// ((2a-1)/a^2, 4(2a-1)/(a(a+1)^2)]; for alpha > 1/2, alpha != 1, it is
/// decreasing with range [4(2a-1)/(a(a+1)^2), (2a-1)/a^2). The closed
/// endpoint is the rho -> 0- limit; it corresponds to rho = 0 and is
/// therefore excluded when inverting to a strictly negative rho.
struct AlphaProfile {
    double alpha = 2.0;
    double delta = 0.0; // delta(alpha) = a(a+1)^2 Gamma(a)^2 / (4 Gamma(2a))
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;
    bool increasing = false;

    bool contains(double s) const {
        const bool above = lo_closed ? s >= lo : s > lo;
        const bool below = hi_closed ? s <= hi : s < hi;
        return above && below;
    }
    bool strictly_inside(double s) const { return s > lo && s < hi; }
};

/// Builds the profile for alpha > 0, alpha not in {1/2, 1} (the map
/// degenerates to a constant there).
AlphaProfile alpha_profile(double alpha);

/// delta(alpha) = alpha (alpha+1)^2 Gamma(alpha)^2 / (4 Gamma(2 alpha)).
double delta_factor(double alpha);

/// P(beta; rho) = 1 - (1-rho)^beta - beta rho (1-rho)^(beta-1).
/// Evaluated by a series in rho when |rho| < 1e-3 to avoid the cubic-order
/// cancellation of the direct form.
double second_order_p(double beta, double rho);

/// s_alpha(rho) = rho^2 P(2 alpha; rho) / P(alpha+1; rho)^2, rho < 0.
double s_alpha(double rho, double alpha);

/// q_alpha(rho) = gamma1^(alpha-2) Gamma(alpha+1) P(alpha; rho)
///                / (2 rho^2 (1-rho)^(alpha-2)).
/// The factor 2 in the denominator makes q_2 == 1 identically and
/// delta(a) q_{2a} / q_{a+1}^2 == s_a hold exactly.
double q_alpha(double rho, double gamma1, double alpha);

/// Inverse of s_alpha on (-inf, 0): the unique rho < 0 with
/// s_alpha(rho) = s. Closed form for alpha == 2, monotone bisection on
/// [-1e6, -1e-8] otherwise. Throws NotAdmissibleError when s lies outside
/// the open admissible interior.
double s_alpha_inverse(double s, double alpha);

/// Central finite difference of s_alpha, step max(1e-6, 1e-6 |rho|)
/// (clamped to keep rho + h < 0).
double s_alpha_prime(double rho, double alpha);

} // namespace trunctail

#endif
