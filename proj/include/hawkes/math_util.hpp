#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace hawkes {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);

/// Upper tail Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

/// Chi-square upper tail probability with df degrees of freedom.
inline double chi_square_sf(double stat, double df) {
    return gamma_q(0.5 * df, 0.5 * stat);
}

/// Beta function via lgamma.
inline double beta_fn(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// Composite 8-point Gauss-Legendre quadrature of f over [lo, hi] with the
/// given number of equal panels.
double gauss_legendre(const std::function<double(double)>& f, double lo, double hi,
                      int panels = 64);

} // namespace hawkes
