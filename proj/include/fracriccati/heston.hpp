#ifndef FRACRICCATI_HESTON_HPP
#define FRACRICCATI_HESTON_HPP

#include "fracriccati/hybrid.hpp"
#include "fracriccati/types.hpp"

namespace fracriccati {

/// Rough Heston model parameters:
///   dS = S sqrt(V) dW,
///   V_t = V0 + (1/Gamma(alpha)) int (t-s)^{alpha-1} [eta (m - V_s) ds + eta zeta sqrt(V_s) dB_s],
/// corr(W, B) = rho, alpha = H + 1/2.
struct HestonParams {
    double alpha{0.62}; // in (0,1]
    double eta{0.1};    // mean-reversion speed
    double m{0.3156};   // long-run variance
    double zeta{0.331}; // vol-of-vol factor (eta*zeta multiplies sqrt(V) dB)
    double rho{-0.681}; // in (-1,1)
    double v0{0.0392};  // initial variance
    double s0{100.0};   // spot (= forward, zero rates)

    double hurst() const { return alpha - 0.5; }
    void validate() const;
};

enum class SolverKind { Series, Hybrid, Adams };

/// Riccati coefficients of the log-price transform at frequency u1:
/// lambda = (eta zeta)^2/2, mu = eta (u1 rho zeta - 1), nu = (u1^2 - u1)/2.
RiccatiCoeffs riccati_from_heston(const HestonParams& p, Complex u1);

/// E[e^{u1 X_T}], X = log(S_T/S_0): exp(m eta I_1 psi(T) + V0 I_{1-alpha} psi(T)).
/// Series solver requires T within the switch radius; Hybrid uses the RR3
/// extrapolated scheme; Adams uses cfg.n steps.
Complex log_price_cf(const HestonParams& p, Complex u1, double T,
                     SolverKind solver = SolverKind::Hybrid,
                     const HybridConfig& cfg = {});

/// E[e^{u1 X_T + u2 V_T}] via the doubly-indexed series with
/// I_{1-alpha} psi(0) = u2. Validity region Re(u1) in [0,1], Re(u2) <= 0;
/// alpha in (1/2,1).
Complex joint_transform(const HestonParams& p, Complex u1, Complex u2, double T,
                        int L_max = 20, int k_cap = 64, double tol = 1e-10);

} // namespace fracriccati

#endif
