#ifndef FRACRICCATI_SERIES_HPP
#define FRACRICCATI_SERIES_HPP

#include <optional>
#include <span>
#include <vector>

#include "fracriccati/types.hpp"

namespace fracriccati {

/// Fractional power series solution psi(t) = sum_{k>=1} a_k t^{k alpha} of
/// D^alpha psi = lambda psi^2 + mu psi + nu, psi "starting from 0".
///
/// Coefficients are stored scaled, scaled[k] = a_k / sigma^k with sigma the
/// propagated-bound base rho*, so the stored values satisfy
/// |scaled[k]| <= C* k^{alpha-1} and never overflow; raw a_k (which can) are
/// reconstructed on demand.
struct SeriesSolution {
    RiccatiCoeffs coeffs;
    double alpha{0.0};
    int r_max{0};
    double sigma{1.0};
    std::vector<Complex> scaled; // index 0 unused, 1..r_max

    double radius_empirical{0.0};    // R^(n) at the largest computed nonzero index
    double radius_conservative{0.0}; // Rhat, same fallback
    double tau_star{0.0};
    double rho_star{0.0};
    double c_star{0.0};
    bool all_zero{false};

    // I_1 / I_{1-alpha} term weights, precomputed once:
    //   w_i1[r]   = 1/(alpha r + 1)
    //   w_i1ma[r] = (1 - 1/r)^{-1} Gamma(alpha r)/Gamma(alpha(r-1)) / (alpha r + 1 - alpha), r >= 2
    std::vector<double> w_i1;
    std::vector<double> w_i1ma;

    /// Raw coefficient a_k = scaled[k] * sigma^k. May overflow to inf for
    /// configurations whose coefficients exceed the double range.
    Complex coeff(int k) const;

    /// Wrap an externally supplied raw coefficient vector (a[k] = a_k, a[0]
    /// ignored). Radius estimates are filled in; the bound constants are not.
    static SeriesSolution from_raw(std::span<const Complex> a, double alpha);
};

/// Run the recursion a_1 = nu/Gamma(alpha+1),
/// a_{k+1} = (lambda a_k*^2 + mu a_k) Gamma(alpha k+1)/Gamma(alpha k+alpha+1).
SeriesSolution build_coefficients(const RiccatiCoeffs& c, int r_max);

/// Cauchy convolution a_k*^2 = sum_{l=1}^{k-1} a_l a_{k-l} with a_0 = 0
/// (a[j] holds a_j; a[0] is ignored). a_1*^2 = 0.
Complex convolution_square(std::span<const Complex> a, int k);

/// R^(n) = |a_n|^{-1/(alpha n)}. +infinity when every computed coefficient is
/// zero; UndefinedRadiusError when a_n = 0 but others are not.
double radius_empirical(const SeriesSolution& s, int n);

/// Rhat = |a'_{r_max}|^{-1/(alpha r_max)} with the larger coefficients
/// a'_r = a_r Gamma(alpha r+1)/Gamma(alpha(r-1)+1) / (alpha r + 1 - alpha).
double radius_conservative(const SeriesSolution& s);

/// Theoretical lower bound tau* of the convergence radius; +infinity for
/// lambda = 0.
double tau_star(const RiccatiCoeffs& c);

struct RhoCStar {
    double rho_star;
    double c_star;
};

/// Constants of the propagated bound |a_k| <= C* rho*^k k^{alpha-1};
/// tau* = rho*^{-1/alpha}.
RhoCStar rho_c_star(const RiccatiCoeffs& c);

/// Theoretical upper bound of the radius for real coefficients with
/// lambda nu > 0; nullopt when the hypotheses fail.
std::optional<double> radius_upper_bound(const RiccatiCoeffs& c);

/// Bound on |psi(t) - sum_{k<=n0} a_k t^{k alpha}|. By default the provable
/// radius (rho*^{-1/alpha}) is used; pass radius_override (e.g. 0.9*Rhat) for
/// the empirical variant. Requires 0 < t < radius.
double truncation_bound(const SeriesSolution& s, double t, int n0,
                        std::optional<double> radius_override = {});

/// Partial sums of the three expansions, truncated at r0 (capped at r_max).
Triplet eval_triplet_series(const SeriesSolution& s, double t, int r0);

/// Smallest truncation order meeting accuracy eps0 on [0, theta*R]:
/// ceil( log(eps0 (1-theta)) / (alpha log theta) - 1 ), at least 1.
int r0_for_accuracy(double eps0, double theta, double alpha);

/// Inverse of r0_for_accuracy: the accuracy achieved by truncating at r0.
double accuracy_for_r0(int r0, double theta, double alpha);

struct MuFlipPair {
    SeriesSolution original; // (lambda, mu, nu)
    SeriesSolution flipped;  // (lambda, -mu, nu)
};

/// Coefficients of (lambda, mu, nu) and (lambda, -mu, nu) for real
/// lambda, nu > 0 and real mu. The recursion gives
/// a_k^{(lambda,mu,nu)} = (-1)^{k-1} a_k^{(lambda,-mu,nu)}.
MuFlipPair mu_flip_coefficients(const RiccatiCoeffs& c, int r_max);

/// For mu = 0: the nonzero subsequence b_k = a_{2k-1}, via
/// b_1 = nu/Gamma(alpha+1), b_{k+1} = lambda Gamma(2 alpha k+1)/Gamma((2k+1)alpha+1) b*2_{k+1}.
/// Returned vector holds raw b_1..b_{k_max} at indices 1..k_max.
std::vector<Complex> odd_subsequence_coeffs(const RiccatiCoeffs& c, int k_max);

} // namespace fracriccati

#endif
