#ifndef TRUNCTAIL_ASYMPTOTICS_HPP
#define TRUNCTAIL_ASYMPTOTICS_HPP

#include <array>
#include <cstddef>
#include <functional>

namespace trunctail {

/// Model-side parameters entering the limit theorems.
struct SecondOrderContext {
    double gamma1 = 0.6;
    double gamma2 = 1.4;
    double rho1 = -2.4;
    double beta1 = -2.4;
    double alpha = 2.0;

    SecondOrderContext() = default;
    /// Validates signs; warns on stderr when gamma1 >= gamma2.
    SecondOrderContext(double gamma1_, double gamma2_, double rho1_, double beta1_,
                       double alpha_ = 2.0);

    double gamma_star() const { return gamma1 * gamma2 / (gamma1 + gamma2); }
};

/// Gamma-moment constants of the second/third-order expansions.
double mu1(double alpha);                              // Gamma(alpha+1)
double mu2(double alpha, double rho);
double mu3(double alpha, double rho);                  // continuous across alpha = 1
double mu4(double alpha, double rho, double beta);

/// per-order combinations; alpha is the order they are evaluated at.
double m_const(double alpha, double rho);                    // mu2 - mu1 mu2(1)
double c_const(double alpha, double rho);                    // mu3 - mu1 mu2(1)^2
double d_const(double alpha, double rho, double beta);       // mu4 - mu1 mu4(1)
double r_const(double alpha, double rho, double gamma1);     // 2 q_alpha gamma1^(2-alpha) Gamma(alpha+1)

/// All scalar constants for a fixed context (tau/eta/xi use ctx.alpha).
struct ConstantBundle {
    double m2 = 0.0;
    double tau1 = 0.0, tau2 = 0.0, tau3 = 0.0, tau4 = 0.0, tau5 = 0.0, tau6 = 0.0;
    double eta1 = 0.0, eta2 = 0.0;
    double xi = 0.0;
    double mu = 0.0;
};
ConstantBundle constants(const SecondOrderContext& ctx);

/// The eight summands of the Delta_alpha integrand at s, in display order
/// (descending powers of log s^(-gamma), constants last). Exposed separately
/// so an alternative reading of the display can be assembled by callers.
std::array<double, 8> delta_alpha_terms(const SecondOrderContext& ctx, double s);

/// Theorem-1 integrand: polynomial of degree 2*alpha in log s^(-gamma).
double delta_alpha_fn(const SecondOrderContext& ctx, double s);

/// Theorem-2 integrand: quadratic in log s.
double d_fn(const SecondOrderContext& ctx, double s);

/// Closed-form asymptotic variance of the weighted-Hill estimator:
/// gamma^2 (1 + g)(1 + g^2)/(1 - g), g = gamma1/gamma2. Requires gamma1 < gamma2.
double sigma_bmn_sq(const SecondOrderContext& ctx);

/// Integrated variance of int_0^1 s^(-gamma/gamma2 - 1) g(s) W(s) ds - c W(1):
/// double + single integrals evaluated by adaptive Gauss-Legendre after the
/// s = exp(-u) substitution, doubled over the triangle by symmetry.
/// Throws QuadratureError (with the achieved tolerance) on non-convergence.
double sigma_functional(const SecondOrderContext& ctx, const std::function<double(double)>& g,
                        double center, double rel_tol = 1e-8);

/// Theorem-1 variance (integrand Delta_alpha, center xi).
double sigma_alpha_sq(const SecondOrderContext& ctx, double rel_tol = 1e-8);

/// Theorem-2 variance (integrand D, center mu).
double sigma_star_sq(const SecondOrderContext& ctx, double rel_tol = 1e-8);

/// Mean of the Theorem-1 limit law: eta1 lambda1 + eta2 lambda2.
double normal_limit_bias(const SecondOrderContext& ctx, double lambda1, double lambda2);

} // namespace trunctail

#endif
