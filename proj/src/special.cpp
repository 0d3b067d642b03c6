#include "fracriccati/special.hpp"

#include <cmath>
#include <numbers>

#include "fracriccati/errors.hpp"

namespace fracriccati {

namespace {

// Godfrey's 15-term Lanczos coefficient set, g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Core Lanczos evaluation for Re z >= 0.5.
Complex lanczos_gamma(Complex z) {
    const Complex zm1 = z - 1.0;
    Complex acc = kLanczos[0];
    for (int k = 1; k < 15; ++k)
        acc += kLanczos[k] / (zm1 + static_cast<double>(k));
    const Complex t = zm1 + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * acc;
}

} // namespace

Complex gamma(Complex z) {
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(z.real()));
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const Complex s = std::sin(std::numbers::pi * z);
        return std::numbers::pi / (s * lanczos_gamma(1.0 - z));
    }
    return lanczos_gamma(z);
}

double gamma(double x) {
    if (is_nonpositive_integer(x))
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
    return gamma(Complex{x, 0.0}).real();
}

Complex beta(Complex a, Complex b) {
    return gamma(a) * gamma(b) / gamma(a + b);
}

double beta(double a, double b) {
    return gamma(a) * gamma(b) / gamma(a + b);
}

double gamma_ratio(double a, double b) {
    if (a <= 0.0 || b <= 0.0)
        throw DomainError("gamma_ratio: arguments must be positive");
    return std::exp(std::lgamma(a) - std::lgamma(b));
}

double frac_integral_monomial(double r, double alpha) {
    if (r <= -1.0)
        throw DomainError("frac_integral_monomial: requires r > -1");
    if (alpha <= 0.0)
        throw DomainError("frac_integral_monomial: requires alpha > 0");
    return gamma_ratio(r + 1.0, r + alpha + 1.0);
}

std::pair<double, double> kershaw_bounds(double x, double s) {
    if (x <= 0.0 || s <= 0.0 || s >= 1.0)
        throw DomainError("kershaw_bounds: requires x > 0 and s in (0,1)");
    const double lower = std::pow(x + 0.5 * s, 1.0 - s);
    const double upper = std::pow(x - 0.5 + std::sqrt(s + 0.25), 1.0 - s);
    return {lower, upper};
}

} // namespace fracriccati
