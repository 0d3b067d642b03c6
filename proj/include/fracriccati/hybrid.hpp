#ifndef FRACRICCATI_HYBRID_HPP
#define FRACRICCATI_HYBRID_HPP

#include <optional>
#include <vector>

#include "fracriccati/series.hpp"
#include "fracriccati/types.hpp"

namespace fracriccati {

struct HybridConfig {
    int n = 128;                // step count (n/4 and n/2 sub-solves for RR3)
    double eps0 = 0.005;        // accuracy target of the series phase
    std::optional<double> theta_override; // in (0,1); default theta_of_n(n)
    int r_max = 250;
    double switch_factor = 1.0; // k0 = floor(switch_factor * n * theta * Rhat / T)
};

/// Calibrated series/Euler switch threshold; n clamped to [32, 4096]:
/// min(0.65 + 0.3 ((n-32)/4064)^{1/4}, 0.925).
double theta_of_n(int n);

/// Memory weights c_0^{(alpha)} = 1, c_l^{(alpha)} = (l+1)^alpha - l^alpha.
std::vector<double> euler_weights(double alpha, int count);

/// Triplet at T by the series-then-Euler-with-memory scheme. Requires
/// alpha in (0,1]. Pure series when the whole interval sits inside the
/// switch radius. Throws BlowUpError when |psi| exceeds 1e12 on the grid.
Triplet hybrid_solve(const SeriesSolution& s, double T, const HybridConfig& cfg);

/// Richardson-Romberg extrapolations, componentwise on the triplet.
Triplet rr2(const SeriesSolution& s, double T, const HybridConfig& cfg); // 2 | n
Triplet rr3(const SeriesSolution& s, double T, const HybridConfig& cfg); // 4 | n

/// Extrapolation combinations (exposed for direct testing).
Triplet rr2_combine(const Triplet& fine_n, const Triplet& coarse_half);
Triplet rr3_combine(const Triplet& quarter, const Triplet& half, const Triplet& fine_n);

/// Error-expansion diagnostic cbar_1^n = 2n (psibar^n(T) - psibar^{2n}(T)),
/// real part. cfg.n is ignored; n-dependent settings (theta) follow each
/// sub-solve's own step count.
double error_expansion_diag(const SeriesSolution& s, double T, int n, const HybridConfig& cfg);

struct LambdaRescaled {
    RiccatiCoeffs rescaled; // (1, mu, lambda*nu)
    Complex postscale;      // 1/lambda: psi = postscale * phi
};

/// Reduce to lambda = 1: phi solving (1, mu, lambda*nu) gives psi = phi/lambda.
LambdaRescaled lambda_rescale(const RiccatiCoeffs& c);

} // namespace fracriccati

#endif
