#include "fracriccati/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "fracriccati/errors.hpp"
#include "fracriccati/special.hpp"

namespace fracriccati {

namespace {

constexpr double kBlowUpGuard = 1e12;

int series_order(const SeriesSolution& s, const HybridConfig& cfg, double theta) {
    return std::min(r0_for_accuracy(cfg.eps0, theta, s.alpha), s.r_max);
}

double switch_theta(const HybridConfig& cfg) {
    if (cfg.theta_override) {
        const double th = *cfg.theta_override;
        if (!(th > 0.0) || th >= 1.0)
            throw DomainError("hybrid: theta_override must lie in (0,1)");
        return th;
    }
    return theta_of_n(cfg.n);
}

Triplet solve_at_steps(const SeriesSolution& s, double T, const HybridConfig& cfg, int n) {
    const double a = s.alpha;
    const Complex lam = s.coeffs.lambda, mu = s.coeffs.mu, nu = s.coeffs.nu;
    HybridConfig sub = cfg;
    sub.n = n;
    const double theta = switch_theta(sub);
    const int r0 = series_order(s, sub, theta);

    // Phase switch index: grid points up to k0 come from the series.
    const double rhat = s.radius_conservative;
    long long k0;
    if (!std::isfinite(rhat)) {
        k0 = n; // infinite radius: series everywhere
    } else {
        k0 = static_cast<long long>(std::floor(cfg.switch_factor * n * theta * rhat / T));
        k0 = std::clamp<long long>(k0, 0, n);
    }
    if (k0 >= n)
        return eval_triplet_series(s, T, r0);

    const double h = T / n;
    std::vector<Complex> psi(static_cast<size_t>(n) + 1, Complex{0.0});
    std::vector<Complex> g(static_cast<size_t>(n) + 1, Complex{0.0}); // psi*(lam*psi+mu)
    for (int k = 1; k <= k0; ++k)
        psi[static_cast<size_t>(k)] = eval_triplet_series(s, k * h, r0).psi;
    for (int k = 1; k <= k0; ++k)
        g[static_cast<size_t>(k)] = psi[static_cast<size_t>(k)] * (lam * psi[static_cast<size_t>(k)] + mu);

    const std::vector<double> w = euler_weights(a, n);
    const double ha = std::pow(h, a) / gamma(a + 1.0);
    for (int k = static_cast<int>(k0) + 1; k <= n; ++k) {
        Complex acc{0.0};
        for (int l = 1; l < k; ++l)
            acc += w[static_cast<size_t>(k - l - 1)] * g[static_cast<size_t>(l)];
        const Complex val = ha * (nu * std::pow(static_cast<double>(k), a) + acc);
        if (std::abs(val) > kBlowUpGuard)
            throw BlowUpError(k * h, "hybrid_solve: solution exceeds overflow guard before T");
        psi[static_cast<size_t>(k)] = val;
        g[static_cast<size_t>(k)] = val * (lam * val + mu);
    }

    // I_1: series part on [0, t_{k0}], trapezoid on [t_{k0}, T].
    Complex i1 = k0 >= 1 ? eval_triplet_series(s, k0 * h, r0).i1_psi : Complex{0.0};
    Complex trap{0.0};
    for (long long l = k0; l < n; ++l) trap += psi[static_cast<size_t>(l)];
    i1 += h * trap + 0.5 * h * (psi[static_cast<size_t>(n)] - psi[static_cast<size_t>(k0)]);

    // I_{1-alpha}: direct Euler discretization over the whole grid.
    const std::vector<double> w2 = euler_weights(1.0 - a, n);
    Complex i1ma{0.0};
    if (a < 1.0) {
        for (int l = 1; l < n; ++l)
            i1ma += w2[static_cast<size_t>(n - l - 1)] * psi[static_cast<size_t>(l)];
        i1ma *= std::pow(h, 1.0 - a) / gamma(2.0 - a);
    } else {
        i1ma = psi[static_cast<size_t>(n - 1)]; // I_0 is the identity; left-point value
    }
    return {psi[static_cast<size_t>(n)], i1, i1ma};
}

} // namespace

double theta_of_n(int n) {
    if (n < 1)
        throw DomainError("theta_of_n: n must be >= 1");
    const double nc = static_cast<double>(std::clamp(n, 32, 4096));
    return std::min(0.65 + 0.3 * std::pow((nc - 32.0) / 4064.0, 0.25), 0.925);
}

std::vector<double> euler_weights(double alpha, int count) {
    if (count < 1)
        throw DomainError("euler_weights: count must be >= 1");
    // alpha = 0 arises as c^{(1-alpha)} at alpha = 1
    if (alpha < 0.0 || alpha > 1.0)
        throw DomainError("euler_weights: alpha must lie in [0,1]");
    std::vector<double> w(static_cast<size_t>(count));
    for (int l = 0; l < count; ++l)
        w[static_cast<size_t>(l)] =
            std::pow(static_cast<double>(l + 1), alpha) - std::pow(static_cast<double>(l), alpha);
    return w;
}

Triplet hybrid_solve(const SeriesSolution& s, double T, const HybridConfig& cfg) {
    if (!(s.alpha > 0.0) || s.alpha > 1.0)
        throw DomainError("hybrid_solve: alpha must lie in (0,1]");
    if (!(T > 0.0))
        throw DomainError("hybrid_solve: T must be positive");
    if (cfg.n < 1)
        throw DomainError("hybrid_solve: n must be >= 1");
    if (!(cfg.switch_factor > 0.0) || cfg.switch_factor > 1.0)
        throw DomainError("hybrid_solve: switch_factor must lie in (0,1]");
    return solve_at_steps(s, T, cfg, cfg.n);
}

Triplet rr2_combine(const Triplet& fine_n, const Triplet& coarse_half) {
    return 2.0 * fine_n - coarse_half;
}

Triplet rr3_combine(const Triplet& quarter, const Triplet& half, const Triplet& fine_n) {
    return (1.0 / 3.0) * quarter + (-2.0) * half + (8.0 / 3.0) * fine_n;
}

Triplet rr2(const SeriesSolution& s, double T, const HybridConfig& cfg) {
    if (cfg.n % 2 != 0)
        throw DomainError("rr2: n must be even");
    HybridConfig half = cfg;
    half.n = cfg.n / 2;
    return rr2_combine(hybrid_solve(s, T, cfg), solve_at_steps(s, T, half, half.n));
}

Triplet rr3(const SeriesSolution& s, double T, const HybridConfig& cfg) {
    if (cfg.n % 4 != 0)
        throw DomainError("rr3: n must be divisible by 4");
    HybridConfig quarter = cfg, half = cfg;
    quarter.n = cfg.n / 4;
    half.n = cfg.n / 2;
    return rr3_combine(solve_at_steps(s, T, quarter, quarter.n),
                       solve_at_steps(s, T, half, half.n),
                       hybrid_solve(s, T, cfg));
}

double error_expansion_diag(const SeriesSolution& s, double T, int n, const HybridConfig& cfg) {
    if (n < 4)
        throw DomainError("error_expansion_diag: n must be >= 4");
    HybridConfig c1 = cfg, c2 = cfg;
    c1.n = n;
    c2.n = 2 * n;
    const Complex coarse = hybrid_solve(s, T, c1).psi;
    const Complex fine = hybrid_solve(s, T, c2).psi;
    return 2.0 * n * (coarse - fine).real();
}

LambdaRescaled lambda_rescale(const RiccatiCoeffs& c) {
    if (c.lambda == Complex{0.0})
        throw DomainError("lambda_rescale: requires lambda != 0");
    RiccatiCoeffs out = c;
    out.lambda = Complex{1.0};
    out.nu = c.lambda * c.nu;
    return {out, Complex{1.0} / c.lambda};
}

} // namespace fracriccati
