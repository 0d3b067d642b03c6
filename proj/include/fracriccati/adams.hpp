#ifndef FRACRICCATI_ADAMS_HPP
#define FRACRICCATI_ADAMS_HPP

#include "fracriccati/types.hpp"

namespace fracriccati {

/// Baseline fractional Adams predictor-corrector (PECE, one correction) for
/// the Volterra form psi = I_alpha(lambda psi^2 + mu psi + nu), psi(0) = 0,
/// with I_1 (trapezoid) and I_{1-alpha} (Euler memory weights) post-processed
/// from the grid values. Requires alpha in (0,1], n >= 1.
Triplet adams_solve(const RiccatiCoeffs& c, double T, int n);

} // namespace fracriccati

#endif
