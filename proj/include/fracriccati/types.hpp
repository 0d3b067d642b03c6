#ifndef FRACRICCATI_TYPES_HPP
#define FRACRICCATI_TYPES_HPP

#include <complex>

namespace fracriccati {

using Complex = std::complex<double>;

/// Constant coefficients of the fractional Riccati equation
///   D^alpha psi = lambda*psi^2 + mu*psi + nu,  alpha in (0,2].
struct RiccatiCoeffs {
    Complex lambda{0.0};
    Complex mu{0.0};
    Complex nu{0.0};
    double alpha{0.5};

    // lambda*nu != 0 is the standing assumption of the radius theory;
    // operations that rely on it check this flag.
    bool standing_assumption() const {
        return lambda != Complex{0.0} && nu != Complex{0.0};
    }
};

/// (psi(t), I_1 psi(t), I_{1-alpha} psi(t)) at a fixed time.
struct Triplet {
    Complex psi{0.0};
    Complex i1_psi{0.0};
    Complex i1ma_psi{0.0};
};

inline Triplet operator*(double w, const Triplet& t) {
    return {w * t.psi, w * t.i1_psi, w * t.i1ma_psi};
}
inline Triplet operator+(const Triplet& a, const Triplet& b) {
    return {a.psi + b.psi, a.i1_psi + b.i1_psi, a.i1ma_psi + b.i1ma_psi};
}
inline Triplet operator-(const Triplet& a, const Triplet& b) {
    return {a.psi - b.psi, a.i1_psi - b.i1_psi, a.i1ma_psi - b.i1ma_psi};
}

} // namespace fracriccati

#endif
