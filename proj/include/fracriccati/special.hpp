#ifndef FRACRICCATI_SPECIAL_HPP
#define FRACRICCATI_SPECIAL_HPP

#include <utility>

#include "fracriccati/types.hpp"

namespace fracriccati {

/// Gamma(z) on the complex plane (Lanczos approximation, reflection for
/// Re z < 0.5). Throws PoleError at non-positive integers.
Complex gamma(Complex z);

/// Gamma(x) for real x. Same accuracy contract, real arithmetic.
double gamma(double x);

/// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b).
Complex beta(Complex a, Complex b);
double beta(double a, double b);

/// Gamma(a)/Gamma(b) for a, b > 0, stable for large arguments.
double gamma_ratio(double a, double b);

/// Coefficient c with I_alpha(t^r) = c * t^{r+alpha}, i.e. Gamma(r+1)/Gamma(r+alpha+1).
/// Requires r > -1 and alpha > 0.
double frac_integral_monomial(double r, double alpha);

/// Kershaw's two-sided bound on Gamma(x+1)/Gamma(x+s), x > 0, s in (0,1):
///   (x+s/2)^{1-s} < ratio < (x - 1/2 + sqrt(s+1/4))^{1-s}.
std::pair<double, double> kershaw_bounds(double x, double s);

} // namespace fracriccati

#endif
