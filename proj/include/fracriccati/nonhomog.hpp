#ifndef FRACRICCATI_NONHOMOG_HPP
#define FRACRICCATI_NONHOMOG_HPP

#include <limits>
#include <vector>

#include "fracriccati/types.hpp"

namespace fracriccati {

/// Marker for an identically-zero level (valuation +infinity).
inline constexpr int kInfValuation = std::numeric_limits<int>::max();

/// Doubly-indexed expansion psi(t) = sum_l sum_{k>=k(l)} a_{k,l} t^{alpha k - l}
/// of the fractional Riccati equation with general initial data
/// I_{1-alpha} psi(0) = u (and I_{2-alpha} psi(0) = v when alpha > 1).
struct DoubleSeries {
    RiccatiCoeffs coeffs;
    double alpha{0.0};
    Complex u{0.0};
    Complex v{0.0};
    int L_max{0};
    int k_cap{0};

    std::vector<int> valuation;                // per level; kInfValuation marks empty
    std::vector<std::vector<Complex>> levels;  // levels[l][j] = a_{valuation[l]+j, l}

    double theta_star{0.0};      // diagnostics from the constructive bound
    double rho_star_level{0.0};

    /// a_{k,l}; zero outside the stored ranges.
    Complex at(int k, int level) const;
};

/// Theoretical per-level valuations k(l), l = 0..L. Infinite marker where the
/// level vanishes identically. alpha in (1/2,1) or (1,2]; alpha <= 1/2 with a
/// nonzero initial value is unsupported.
std::vector<int> valuations(double alpha, bool nu_zero, bool u_zero, bool v_zero, int L);

/// Run the doubly-indexed recursion
///   a_{k,l} = (mu a_{k-1,l} + lambda a*2_{k-1,l}) Gamma(alpha(k-1)-l+1)/Gamma(alpha k-l+1)
/// seeded with a_{1,0} = nu/Gamma(alpha+1), a_{1,1} = u/Gamma(alpha) and, for
/// alpha > 1, a_{1,2} = v/Gamma(alpha-1).
DoubleSeries build_double_coefficients(const RiccatiCoeffs& c, Complex u, Complex v,
                                       int L_max, int k_cap);

/// Closed-form starting values a_{2l-1,l} = lambda^{l-1} (u/Gamma(alpha))^l c_l,
/// alpha in (1/2,1). Returned vector holds levels 1..L at indices 1..L.
std::vector<Complex> starting_values_closed_form(const RiccatiCoeffs& c, Complex u, int L);

/// Closed-form diagonal starting values a_{l,l}, alpha in (1,2], lambda != 0.
std::vector<Complex> starting_values_closed_form_high(const RiccatiCoeffs& c, Complex u,
                                                      Complex v, int L);

struct DoubleEval {
    Complex value{0.0};
    int levels_used{0};
};

/// psi(t) with empirical level-decay truncation: levels are added until their
/// total contribution stays below tol. t must be positive when u != 0.
DoubleEval eval_double(const DoubleSeries& ds, double t, double tol);

/// Term-wise fractional integrals of the double series (each monomial
/// t^{alpha k - l} integrates in closed form).
DoubleEval eval_double_i1(const DoubleSeries& ds, double t, double tol);
DoubleEval eval_double_i1ma(const DoubleSeries& ds, double t, double tol); // alpha < 1 only

} // namespace fracriccati

#endif
