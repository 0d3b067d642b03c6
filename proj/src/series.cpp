#include "fracriccati/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracriccati/errors.hpp"
#include "fracriccati/special.hpp"

namespace fracriccati {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pos_part(double x) { return x > 0.0 ? x : 0.0; }

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw DomainError("alpha must lie in (0, 2]");
}

// Largest k <= r_max with scaled[k] != 0, or 0 if none.
int last_nonzero(const SeriesSolution& s) {
    for (int k = s.r_max; k >= 1; --k)
        if (s.scaled[static_cast<size_t>(k)] != Complex{0.0}) return k;
    return 0;
}

// R^(n) in the scaled representation: |a_n| = |scaled[n]| sigma^n.
double radius_from_scaled(const SeriesSolution& s, int n, bool conservative) {
    const double m = std::abs(s.scaled[static_cast<size_t>(n)]);
    double lmod = std::log(m);
    if (conservative) {
        const double a = s.alpha;
        lmod += std::lgamma(a * n + 1.0) - std::lgamma(a * (n - 1) + 1.0)
                - std::log(a * n + 1.0 - a);
    }
    return std::exp(-(std::log(s.sigma) + lmod / n) / s.alpha);
}

void fill_weights(SeriesSolution& s) {
    const double a = s.alpha;
    s.w_i1.assign(static_cast<size_t>(s.r_max) + 1, 0.0);
    s.w_i1ma.assign(static_cast<size_t>(s.r_max) + 1, 0.0);
    for (int r = 1; r <= s.r_max; ++r)
        s.w_i1[static_cast<size_t>(r)] = 1.0 / (a * r + 1.0);
    for (int r = 2; r <= s.r_max; ++r) {
        const double g = std::exp(std::lgamma(a * r) - std::lgamma(a * (r - 1)));
        s.w_i1ma[static_cast<size_t>(r)] =
            (static_cast<double>(r) / (r - 1)) * g / (a * r + 1.0 - a);
    }
}

void fill_radius_fields(SeriesSolution& s) {
    s.all_zero = last_nonzero(s) == 0;
    if (s.all_zero) {
        s.radius_empirical = kInf;
        s.radius_conservative = kInf;
        return;
    }
    const int n = last_nonzero(s);
    s.radius_empirical = radius_from_scaled(s, n, false);
    s.radius_conservative = n >= 2 ? radius_from_scaled(s, n, true) : s.radius_empirical;
}

} // namespace

Complex SeriesSolution::coeff(int k) const {
    if (k < 1 || k > r_max)
        throw DomainError("coeff: index outside 1..r_max");
    return scaled[static_cast<size_t>(k)] * std::pow(sigma, k);
}

SeriesSolution SeriesSolution::from_raw(std::span<const Complex> a, double alpha) {
    check_alpha(alpha);
    if (a.size() < 2)
        throw DomainError("from_raw: need at least a_1");
    SeriesSolution s;
    s.alpha = alpha;
    s.coeffs.alpha = alpha;
    s.r_max = static_cast<int>(a.size()) - 1;
    s.sigma = 1.0;
    s.scaled.assign(a.begin(), a.end());
    s.scaled[0] = 0.0;
    s.tau_star = std::numeric_limits<double>::quiet_NaN();
    s.rho_star = std::numeric_limits<double>::quiet_NaN();
    s.c_star = std::numeric_limits<double>::quiet_NaN();
    fill_weights(s);
    fill_radius_fields(s);
    return s;
}

RhoCStar rho_c_star(const RiccatiCoeffs& c) {
    check_alpha(c.alpha);
    const double a = c.alpha;
    const double lam = std::abs(c.lambda), mu = std::abs(c.mu), nu = std::abs(c.nu);
    const double p1 = pos_part(1.0 - 2.0 * a);
    const double p2 = pos_part(a - 1.0);
    const double amin = std::min(a, 1.0);
    const double c_alpha =
        std::pow(2.0, 2.0 - p1 - 2.0 * p2) * std::pow(a, a - 1.0) * beta(amin, amin);
    const double rho =
        (mu + std::sqrt(mu * mu + c_alpha * lam * nu / gamma(a))) /
        (std::pow(2.0, 1.0 - p1) * std::pow(a, a));
    const double cst = rho > 0.0 ? nu / (gamma(a + 1.0) * rho) : kInf;
    return {rho, cst};
}

double tau_star(const RiccatiCoeffs& c) {
    check_alpha(c.alpha);
    if (c.lambda == Complex{0.0}) return kInf;
    return std::pow(rho_c_star(c).rho_star, -1.0 / c.alpha);
}

std::optional<double> radius_upper_bound(const RiccatiCoeffs& c) {
    check_alpha(c.alpha);
    if (c.lambda.imag() != 0.0 || c.mu.imag() != 0.0 || c.nu.imag() != 0.0)
        return std::nullopt;
    const double prod = c.lambda.real() * c.nu.real();
    if (!(prod > 0.0)) return std::nullopt;
    const double a = c.alpha;
    double c_alpha;
    if (a <= 1.0) {
        c_alpha = std::pow(3.0 * std::pow(5.0, a - 1.0), 1.0 / (2.0 * a)) * std::sqrt(a);
    } else {
        const double btilde = beta(a, a) - std::pow(2.0, 1.0 - 2.0 * a);
        c_alpha = std::sqrt(2.0 * a) / btilde;
    }
    return c_alpha * std::pow(gamma(a + 1.0) / prod, 1.0 / (2.0 * a));
}

SeriesSolution build_coefficients(const RiccatiCoeffs& c, int r_max) {
    check_alpha(c.alpha);
    if (r_max < 1)
        throw DomainError("build_coefficients: r_max must be >= 1");

    SeriesSolution s;
    s.coeffs = c;
    s.alpha = c.alpha;
    s.r_max = r_max;

    const RhoCStar rc = rho_c_star(c);
    s.rho_star = rc.rho_star;
    s.c_star = rc.c_star;
    s.tau_star = c.lambda == Complex{0.0} ? kInf : std::pow(s.rho_star, -1.0 / c.alpha);
    const bool trivial = c.nu == Complex{0.0} ||
                         (c.lambda == Complex{0.0} && c.mu == Complex{0.0});
    s.sigma = trivial || !(rc.rho_star > 0.0) ? 1.0 : rc.rho_star;

    const double a = c.alpha;
    s.scaled.assign(static_cast<size_t>(r_max) + 1, Complex{0.0});
    s.scaled[1] = c.nu / gamma(a + 1.0) / s.sigma;
    for (int k = 1; k < r_max; ++k) {
        Complex conv{0.0};
        for (int l = 1; l < k; ++l)
            conv += s.scaled[static_cast<size_t>(l)] * s.scaled[static_cast<size_t>(k - l)];
        const double gr = gamma_ratio(a * k + 1.0, a * k + a + 1.0);
        s.scaled[static_cast<size_t>(k + 1)] =
            (c.lambda * conv + c.mu * s.scaled[static_cast<size_t>(k)]) * gr / s.sigma;
    }

    fill_weights(s);
    fill_radius_fields(s);
    return s;
}

Complex convolution_square(std::span<const Complex> a, int k) {
    if (k < 1 || static_cast<size_t>(k) >= a.size())
        throw DomainError("convolution_square: index outside 1..length");
    Complex acc{0.0};
    for (int l = 1; l < k; ++l)
        acc += a[static_cast<size_t>(l)] * a[static_cast<size_t>(k - l)];
    return acc;
}

double radius_empirical(const SeriesSolution& s, int n) {
    if (n < 1 || n > s.r_max)
        throw DomainError("radius_empirical: index outside 1..r_max");
    if (s.all_zero) return kInf;
    if (s.scaled[static_cast<size_t>(n)] == Complex{0.0})
        throw UndefinedRadiusError("radius_empirical: a_n = 0 at n = " + std::to_string(n));
    return radius_from_scaled(s, n, false);
}

double radius_conservative(const SeriesSolution& s) {
    if (s.r_max < 2)
        throw DomainError("radius_conservative: requires r_max >= 2");
    if (s.all_zero) return kInf;
    if (s.scaled[static_cast<size_t>(s.r_max)] == Complex{0.0})
        throw UndefinedRadiusError("radius_conservative: a_{r_max} = 0");
    return radius_from_scaled(s, s.r_max, true);
}

double truncation_bound(const SeriesSolution& s, double t, int n0,
                        std::optional<double> radius_override) {
    if (n0 < 1)
        throw DomainError("truncation_bound: n0 must be >= 1");
    if (!(s.rho_star > 0.0) || !std::isfinite(s.rho_star))
        throw DomainError("truncation_bound: no propagated-bound constants for this solution");
    const double a = s.alpha;
    const double tau = radius_override.value_or(std::pow(s.rho_star, -1.0 / a));
    if (!(t > 0.0) || t >= tau)
        throw DomainError("truncation_bound: requires 0 < t < radius");
    const double L = std::log(tau / t);
    const double ratio_pow = std::pow(t / tau, n0 * a);
    return s.c_star * std::pow(static_cast<double>(n0), a - 1.0) / (a * L) * ratio_pow *
           (1.0 + pos_part(a - 1.0) / (a * n0 * L));
}

Triplet eval_triplet_series(const SeriesSolution& s, double t, int r0) {
    if (t < 0.0)
        throw DomainError("eval_triplet_series: t must be >= 0");
    if (t == 0.0) return {};
    const int cap = std::min(r0, s.r_max);
    if (cap < 1)
        throw DomainError("eval_triplet_series: r0 must be >= 1");

    const double a = s.alpha;
    const double q = s.sigma * std::pow(t, a);
    Complex psi{0.0}, i1{0.0}, i1ma_tail{0.0};
    double qk = 1.0;
    for (int r = 1; r <= cap; ++r) {
        qk *= q;
        const Complex term = s.scaled[static_cast<size_t>(r)] * qk;
        psi += term;
        i1 += term * s.w_i1[static_cast<size_t>(r)];
        if (r >= 2) i1ma_tail += term * s.w_i1ma[static_cast<size_t>(r)];
    }
    // leading I_{1-alpha} term: a_1 Gamma(alpha+1) t  (= nu t for built solutions)
    const Complex lead = s.scaled[1] * s.sigma * gamma(a + 1.0) * t;
    return {psi, t * i1, lead + std::pow(t, 1.0 - a) * i1ma_tail};
}

int r0_for_accuracy(double eps0, double theta, double alpha) {
    if (!(eps0 > 0.0) || eps0 >= 1.0)
        throw DomainError("r0_for_accuracy: eps0 must lie in (0,1)");
    if (!(theta > 0.0) || theta >= 1.0)
        throw DomainError("r0_for_accuracy: theta must lie in (0,1)");
    check_alpha(alpha);
    const double raw = std::log(eps0 * (1.0 - theta)) / (alpha * std::log(theta)) - 1.0;
    return std::max(1, static_cast<int>(std::ceil(raw)));
}

double accuracy_for_r0(int r0, double theta, double alpha) {
    if (r0 < 1)
        throw DomainError("accuracy_for_r0: r0 must be >= 1");
    if (!(theta > 0.0) || theta >= 1.0)
        throw DomainError("accuracy_for_r0: theta must lie in (0,1)");
    check_alpha(alpha);
    return std::pow(theta, alpha * (r0 + 1.0)) / (1.0 - theta);
}

MuFlipPair mu_flip_coefficients(const RiccatiCoeffs& c, int r_max) {
    if (c.lambda.imag() != 0.0 || c.nu.imag() != 0.0 || c.mu.imag() != 0.0)
        throw HypothesisError("mu_flip_coefficients: requires real coefficients");
    if (!(c.lambda.real() > 0.0) || !(c.nu.real() > 0.0))
        throw HypothesisError("mu_flip_coefficients: requires lambda, nu > 0");
    RiccatiCoeffs flipped = c;
    flipped.mu = -c.mu;
    return {build_coefficients(c, r_max), build_coefficients(flipped, r_max)};
}

std::vector<Complex> odd_subsequence_coeffs(const RiccatiCoeffs& c, int k_max) {
    if (c.mu != Complex{0.0})
        throw HypothesisError("odd_subsequence_coeffs: requires mu = 0");
    check_alpha(c.alpha);
    if (k_max < 1)
        throw DomainError("odd_subsequence_coeffs: k_max must be >= 1");
    const double a = c.alpha;
    std::vector<Complex> b(static_cast<size_t>(k_max) + 1, Complex{0.0});
    b[1] = c.nu / gamma(a + 1.0);
    for (int k = 1; k < k_max; ++k) {
        const Complex conv = convolution_square(b, k + 1);
        const double gr = gamma_ratio(2.0 * a * k + 1.0, (2.0 * k + 1.0) * a + 1.0);
        b[static_cast<size_t>(k + 1)] = c.lambda * gr * conv;
    }
    return b;
}

} // namespace fracriccati
