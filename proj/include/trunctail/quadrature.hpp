#ifndef TRUNCTAIL_QUADRATURE_HPP
#define TRUNCTAIL_QUADRATURE_HPP

#include <functional>

namespace trunctail {

/// 15-point Gauss-Legendre estimate on [a, b].
double gauss_legendre_15(const std::function<double(double)>& f, double a, double b);

/// Adaptive bisection around gauss_legendre_15: a panel is accepted when its
/// two-half refinement moves it by less than its share of the tolerance.
/// rel_tol is relative to the integral's running magnitude (with a small
/// absolute floor). Throws QuadratureError past the depth limit.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double rel_tol);

} // namespace trunctail

#endif
