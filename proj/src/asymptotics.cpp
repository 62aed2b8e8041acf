#include "trunctail/asymptotics.hpp"

#include "trunctail/errors.hpp"
#include "trunctail/quadrature.hpp"
#include "trunctail/second_order.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace trunctail {

SecondOrderContext::SecondOrderContext(double gamma1_, double gamma2_, double rho1_,
                                       double beta1_, double alpha_)
    : gamma1(gamma1_), gamma2(gamma2_), rho1(rho1_), beta1(beta1_), alpha(alpha_) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) {
        throw std::invalid_argument("SecondOrderContext requires gamma1, gamma2 > 0");
    }
    if (!(rho1 < 0.0) || !(beta1 < 0.0)) {
        throw std::invalid_argument("SecondOrderContext requires rho1, beta1 < 0");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("SecondOrderContext requires alpha > 0");
    }
    if (gamma1 >= gamma2) {
        std::cerr << "trunctail: warning: gamma1 >= gamma2; the limit theorems assume gamma1 < gamma2\n";
    }
}

double mu1(double alpha) {
    if (!(alpha > 0.0)) {
        throw std::domain_error("mu1 requires alpha > 0");
    }
    return std::tgamma(alpha + 1.0);
}

double mu2(double alpha, double rho) {
    if (!(alpha > 0.0) || !(rho < 0.0)) {
        throw std::domain_error("mu2 requires alpha > 0 and rho < 0");
    }
    const double om = 1.0 - rho;
    return std::tgamma(alpha) * (1.0 - std::pow(om, alpha)) / (rho * std::pow(om, alpha));
}

double mu3(double alpha, double rho) {
    if (!(alpha > 0.0) || !(rho < 0.0)) {
        throw std::domain_error("mu3 requires alpha > 0 and rho < 0");
    }
    const double om = 1.0 - rho;
    if (std::fabs(alpha - 1.0) < 1e-12) {
        return std::log(om * om / (1.0 - 2.0 * rho)) / (rho * rho);
    }
    const double bracket = std::pow(1.0 - 2.0 * rho, 1.0 - alpha) - 2.0 * std::pow(om, 1.0 - alpha) + 1.0;
    return std::tgamma(alpha) / (rho * rho * (alpha - 1.0)) * bracket;
}

double mu4(double alpha, double rho, double beta) {
    if (!(beta < 0.0)) {
        throw std::domain_error("mu4 requires beta < 0");
    }
    return (mu2(alpha, rho + beta) - mu2(alpha, rho)) / beta;
}

double m_const(double alpha, double rho) { return mu2(alpha, rho) - mu1(alpha) * mu2(1.0, rho); }

double c_const(double alpha, double rho) {
    const double m21 = mu2(1.0, rho);
    return mu3(alpha, rho) - mu1(alpha) * m21 * m21;
}

double d_const(double alpha, double rho, double beta) {
    return mu4(alpha, rho, beta) - mu1(alpha) * mu4(1.0, rho, beta);
}

double r_const(double alpha, double rho, double gamma1) {
    return 2.0 * q_alpha(rho, gamma1, alpha) * std::pow(gamma1, 2.0 - alpha) * std::tgamma(alpha + 1.0);
}

ConstantBundle constants(const SecondOrderContext& ctx) {
    const double a = ctx.alpha;
    const double rho = ctx.rho1;
    const double beta = ctx.beta1;
    const double g1 = ctx.gamma1;
    const double gamma = ctx.gamma_star();

    ConstantBundle k;
    k.m2 = m_const(2.0, rho);
    const double r_a1 = r_const(a + 1.0, rho, g1);
    const double r_2a = r_const(2.0 * a, rho, g1);
    if (k.m2 == 0.0 || r_a1 == 0.0 || rho == 0.0 || g1 == 0.0) {
        throw std::domain_error("constants: singular parameter (vanishing m2, r_{alpha+1}, rho1 or gamma1)");
    }

    k.tau1 = 1.0 / (std::pow(g1, 2.0 * a - 1.0) * r_a1 * r_a1 * std::tgamma(2.0 * a + 1.0) * k.m2);
    k.tau2 = -2.0 * r_2a / (std::pow(g1, a) * r_a1 * r_a1 * r_a1 * std::tgamma(a + 2.0) * k.m2);
    k.tau3 = r_2a / (g1 * r_a1 * r_a1 * 2.0 * k.m2);
    k.tau4 = (-2.0 * a * r_a1 + 2.0 * (a + 1.0) * r_2a - 4.0 * r_a1 * r_2a) / (r_a1 * r_a1 * r_a1 * k.m2);
    k.tau5 = (rho - 1.0) / (2.0 * g1 * rho);
    k.tau6 = 1.0 + 2.0 * (1.0 - rho) / (g1 * rho);
    k.xi = gamma * ((1.0 - 2.0 * a - 3.0 * r_2a) / (r_a1 * r_a1 * k.m2) +
                    2.0 * a * r_2a / (r_a1 * r_a1 * r_a1 * k.m2));

    const double c_2a = c_const(2.0 * a, rho);
    const double c_2 = c_const(2.0, rho);
    const double c_a1 = c_const(a + 1.0, rho);
    k.eta1 = ((2.0 * a - 1.0) * c_2a / std::tgamma(2.0 * a) + c_2 * r_2a -
              2.0 * c_a1 * r_2a / (r_a1 * std::tgamma(a))) /
             (2.0 * g1 * k.m2 * r_a1 * r_a1);

    // The eta2 display's prefactor scope is ambiguous in print; parenthesized
    // in parallel with eta1 (prefactor times the whole three-term bracket).
    const double d_2a = d_const(2.0 * a, rho, beta);
    const double d_2 = d_const(2.0, rho, beta);
    const double d_a1 = d_const(a + 1.0, rho, beta);
    k.eta2 = (d_2a / std::tgamma(2.0 * a) + d_2 * r_2a -
              2.0 * d_a1 * r_2a / (r_a1 * std::tgamma(a + 1.0))) /
             (g1 * k.m2 * r_a1 * r_a1);

    k.mu = gamma * (2.0 + 2.0 * (1.0 - rho) / (g1 * rho) - 1.0 / rho);
    return k;
}

namespace {

void check_unit_interval(double s, const char* who) {
    if (!(s > 0.0) || !(s <= 1.0)) {
        throw std::domain_error(std::string(who) + " requires s in (0, 1]");
    }
}

} // namespace

std::array<double, 8> delta_alpha_terms(const SecondOrderContext& ctx, double s) {
    check_unit_interval(s, "delta_alpha_terms");
    const ConstantBundle k = constants(ctx);
    const double a = ctx.alpha;
    const double gamma = ctx.gamma_star();
    const double gsum = ctx.gamma1 + ctx.gamma2;
    const double ell = -gamma * std::log(s); // log s^(-gamma) >= 0

    std::array<double, 8> t{};
    t[0] = k.tau1 * gamma * std::pow(ell, 2.0 * a) / gsum;
    t[1] = 2.0 * a * k.tau1 * gamma * gamma * std::pow(ell, 2.0 * a - 1.0) / ctx.gamma1;
    t[2] = k.tau2 * gamma * std::pow(ell, a + 1.0) / gsum;
    t[3] = k.tau2 * (a + 1.0) * gamma * gamma * std::pow(ell, a) / ctx.gamma1;
    t[4] = k.tau3 * gamma * ell * ell / gsum;
    t[5] = (2.0 * k.tau3 * gamma * gamma / ctx.gamma1 + k.tau4 * gamma / gsum) * ell;
    t[6] = k.tau4 * gamma * gamma / ctx.gamma1;
    t[7] = -ctx.gamma1 * k.xi / gsum;
    return t;
}

double delta_alpha_fn(const SecondOrderContext& ctx, double s) {
    const std::array<double, 8> t = delta_alpha_terms(ctx, s);
    double acc = 0.0;
    for (double v : t) {
        acc += v;
    }
    return acc;
}

double d_fn(const SecondOrderContext& ctx, double s) {
    check_unit_interval(s, "d_fn");
    const ConstantBundle k = constants(ctx);
    const double gamma = ctx.gamma_star();
    const double gsum = ctx.gamma1 + ctx.gamma2;
    const double ls = std::log(s);
    const double g2 = gamma * gamma;
    const double g3 = g2 * gamma;
    return g3 * k.tau5 * ls * ls / gsum -
           (2.0 * k.tau5 * g3 / ctx.gamma1 + g2 * k.tau6 / gsum) * ls +
           k.tau6 * g2 / ctx.gamma1 - ctx.gamma1 * k.mu / gsum;
}

double sigma_bmn_sq(const SecondOrderContext& ctx) {
    if (!(ctx.gamma1 < ctx.gamma2)) {
        throw std::domain_error("sigma_bmn_sq requires gamma1 < gamma2 (the variance has a pole at equality)");
    }
    const double g = ctx.gamma1 / ctx.gamma2;
    const double gamma = ctx.gamma_star();
    return gamma * gamma * (1.0 + g) * (1.0 + g * g) / (1.0 - g);
}

double sigma_functional(const SecondOrderContext& ctx, const std::function<double(double)>& g,
                        double center, double rel_tol) {
    if (!(ctx.gamma1 < ctx.gamma2)) {
        throw std::domain_error("sigma_functional requires gamma1 < gamma2 (integrability)");
    }
    if (!(rel_tol > 0.0)) {
        throw std::domain_error("sigma_functional requires a positive tolerance");
    }
    const double a = ctx.gamma_star() / ctx.gamma2; // < 1/2
    const auto poly = [&g](double u) { return g(std::exp(-u)); };

    // After s = exp(-u) the integrands decay like exp(-(1-a)u) (single, inner)
    // and exp(-(1-2a)u) (outer); truncate where the tails are below machine
    // noise for polynomial g of degree up to ~2 alpha + 2.
    const double degree = std::fmax(2.0 * ctx.alpha, 2.0) + 2.0;
    const double upper = (50.0 + 12.0 * degree) / (1.0 - 2.0 * a);

    const double single = adaptive_gauss_legendre(
        [&poly, a](double u) { return std::exp(-(1.0 - a) * u) * poly(u); }, 0.0, upper,
        0.25 * rel_tol);

    // Triangle u <= v doubled by symmetry: outer over u, inner over [u, upper].
    const auto outer = [&poly, a, upper, rel_tol](double u) {
        const double inner = adaptive_gauss_legendre(
            [&poly, a](double v) { return std::exp(-(1.0 - a) * v) * poly(v); }, u, upper,
            0.125 * rel_tol);
        return std::exp(a * u) * poly(u) * inner;
    };
    const double dbl = 2.0 * adaptive_gauss_legendre(outer, 0.0, upper, 0.25 * rel_tol);

    return dbl - 2.0 * center * single + center * center;
}

double sigma_alpha_sq(const SecondOrderContext& ctx, double rel_tol) {
    const ConstantBundle k = constants(ctx);
    return sigma_functional(
        ctx, [&ctx](double s) { return delta_alpha_fn(ctx, s); }, k.xi, rel_tol);
}

double sigma_star_sq(const SecondOrderContext& ctx, double rel_tol) {
    const ConstantBundle k = constants(ctx);
    return sigma_functional(
        ctx, [&ctx](double s) { return d_fn(ctx, s); }, k.mu, rel_tol);
}

double normal_limit_bias(const SecondOrderContext& ctx, double lambda1, double lambda2) {
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2)) {
        throw std::domain_error("normal_limit_bias requires finite lambda1, lambda2");
    }
    const ConstantBundle k = constants(ctx);
    return k.eta1 * lambda1 + k.eta2 * lambda2;
}

} // namespace trunctail
