#include "fracriccati/heston.hpp"

#include <cmath>

#include "fracriccati/adams.hpp"
#include "fracriccati/errors.hpp"
#include "fracriccati/nonhomog.hpp"
#include "fracriccati/series.hpp"

namespace fracriccati {

void HestonParams::validate() const {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("HestonParams: alpha must lie in (0,1]");
    if (!(eta > 0.0) || !(m > 0.0) || !(zeta > 0.0))
        throw DomainError("HestonParams: eta, m, zeta must be positive");
    if (!(rho > -1.0) || !(rho < 1.0))
        throw DomainError("HestonParams: rho must lie in (-1,1)");
    if (v0 < 0.0)
        throw DomainError("HestonParams: v0 must be >= 0");
    if (!(s0 > 0.0))
        throw DomainError("HestonParams: s0 must be positive");
}

RiccatiCoeffs riccati_from_heston(const HestonParams& p, Complex u1) {
    RiccatiCoeffs c;
    c.alpha = p.alpha;
    const double ez = p.eta * p.zeta;
    c.lambda = Complex{0.5 * ez * ez};
    c.mu = p.eta * (u1 * p.rho * p.zeta - 1.0);
    c.nu = 0.5 * (u1 * u1 - u1);
    return c;
}

Complex log_price_cf(const HestonParams& p, Complex u1, double T, SolverKind solver,
                     const HybridConfig& cfg) {
    p.validate();
    if (!(T > 0.0))
        throw DomainError("log_price_cf: T must be positive");
    const RiccatiCoeffs c = riccati_from_heston(p, u1);
    if (c.nu == Complex{0.0}) return Complex{1.0}; // psi == 0 (u1 in {0,1})

    Triplet tr;
    switch (solver) {
    case SolverKind::Series: {
        const SeriesSolution s = build_coefficients(c, cfg.r_max);
        const double theta = cfg.theta_override ? *cfg.theta_override : theta_of_n(cfg.n);
        if (T > theta * s.radius_conservative)
            throw DomainError("log_price_cf: T outside the series switch radius");
        tr = eval_triplet_series(s, T, r0_for_accuracy(cfg.eps0, theta, p.alpha));
        break;
    }
    case SolverKind::Hybrid: {
        const SeriesSolution s = build_coefficients(c, cfg.r_max);
        tr = cfg.n % 4 == 0 ? rr3(s, T, cfg) : hybrid_solve(s, T, cfg);
        break;
    }
    case SolverKind::Adams:
        tr = adams_solve(c, T, cfg.n);
        break;
    }
    return std::exp(p.m * p.eta * tr.i1_psi + p.v0 * tr.i1ma_psi);
}

Complex joint_transform(const HestonParams& p, Complex u1, Complex u2, double T,
                        int L_max, int k_cap, double tol) {
    p.validate();
    if (!(T > 0.0))
        throw DomainError("joint_transform: T must be positive");
    if (u1.real() < 0.0 || u1.real() > 1.0 || u2.real() > 0.0)
        throw RegionError("joint_transform: requires Re(u1) in [0,1] and Re(u2) <= 0");
    if (u2 != Complex{0.0} && (p.alpha <= 0.5 || p.alpha >= 1.0))
        throw DomainError("joint_transform: nonzero u2 requires alpha in (1/2,1)");

    const RiccatiCoeffs c = riccati_from_heston(p, u1);
    const DoubleSeries ds = build_double_coefficients(c, u2, Complex{0.0}, L_max, k_cap);
    const Complex phi1 = p.m * p.eta * eval_double_i1(ds, T, tol).value;
    const Complex phi2 = eval_double_i1ma(ds, T, tol).value;
    return std::exp(phi1 + p.v0 * phi2);
}

} // namespace fracriccati
