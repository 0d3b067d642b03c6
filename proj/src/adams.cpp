#include "fracriccati/adams.hpp"

#include <cmath>
#include <vector>

#include "fracriccati/errors.hpp"
#include "fracriccati/hybrid.hpp"
#include "fracriccati/special.hpp"

namespace fracriccati {

namespace {

constexpr double kBlowUpGuard = 1e12;

} // namespace

Triplet adams_solve(const RiccatiCoeffs& c, double T, int n) {
    if (!(c.alpha > 0.0) || c.alpha > 1.0)
        throw DomainError("adams_solve: alpha must lie in (0,1]");
    if (!(T > 0.0))
        throw DomainError("adams_solve: T must be positive");
    if (n < 1)
        throw DomainError("adams_solve: n must be >= 1");

    const double a = c.alpha;
    const double h = T / n;
    const auto f = [&](const Complex& y) { return c.lambda * y * y + c.mu * y + c.nu; };

    std::vector<Complex> psi(static_cast<size_t>(n) + 1, Complex{0.0});
    std::vector<Complex> fv(static_cast<size_t>(n) + 1, Complex{0.0});
    fv[0] = c.nu; // f(0, psi(0)=0)

    const double pred_scale = std::pow(h, a) / gamma(a + 1.0);
    const double corr_scale = std::pow(h, a) / gamma(a + 2.0);

    // b_j = (j+1)^a - j^a (rectangle weights, shared with the hybrid scheme)
    const std::vector<double> b = euler_weights(a, n);

    for (int k = 0; k < n; ++k) {
        // predictor: product-rectangle rule over f_0..f_k
        Complex pred{0.0};
        for (int j = 0; j <= k; ++j)
            pred += b[static_cast<size_t>(k - j)] * fv[static_cast<size_t>(j)];
        pred *= pred_scale;

        // corrector: product-trapezoid weights,
        // a_{0,k+1} = k^{a+1} - (k-a)(k+1)^a
        Complex corr = (std::pow(static_cast<double>(k), a + 1.0) -
                        (k - a) * std::pow(static_cast<double>(k + 1), a)) * fv[0];
        for (int j = 1; j <= k; ++j) {
            const double d = static_cast<double>(k - j);
            const double w = std::pow(d + 2.0, a + 1.0) + std::pow(d, a + 1.0) -
                             2.0 * std::pow(d + 1.0, a + 1.0);
            corr += w * fv[static_cast<size_t>(j)];
        }
        corr += f(pred);
        const Complex val = corr_scale * corr;
        if (std::abs(val) > kBlowUpGuard)
            throw BlowUpError((k + 1) * h, "adams_solve: solution exceeds overflow guard before T");
        psi[static_cast<size_t>(k + 1)] = val;
        fv[static_cast<size_t>(k + 1)] = f(val);
    }

    // I_1 by trapezoid over the whole grid (psi(0) = 0).
    Complex trap{0.0};
    for (int l = 0; l < n; ++l) trap += psi[static_cast<size_t>(l)];
    const Complex i1 = h * trap + 0.5 * h * psi[static_cast<size_t>(n)];

    // I_{1-alpha} by the Euler memory discretization.
    Complex i1ma{0.0};
    if (a < 1.0) {
        const std::vector<double> w2 = euler_weights(1.0 - a, n);
        for (int l = 1; l < n; ++l)
            i1ma += w2[static_cast<size_t>(n - l - 1)] * psi[static_cast<size_t>(l)];
        i1ma *= std::pow(h, 1.0 - a) / gamma(2.0 - a);
    } else {
        i1ma = psi[static_cast<size_t>(n - 1)];
    }
    return {psi[static_cast<size_t>(n)], i1, i1ma};
}

} // namespace fracriccati
