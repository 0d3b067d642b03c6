#ifndef FRACRICCATI_PRICING_HPP
#define FRACRICCATI_PRICING_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracriccati/heston.hpp"

namespace fracriccati {

struct OptionSpec {
    double strike_pct;  // strike as percent of spot (spot 100 => strike == strike_pct)
    double maturity;    // years; one trading day = 1/252
};

struct PriceResult {
    double maturity{0.0};
    double strike_pct{0.0};
    SolverKind solver{SolverKind::Hybrid};
    int steps{0};
    double price{0.0};
    std::optional<double> implied_vol;
    double cpu_millis{0.0};
    std::string flags; // "*" tolerance unreachable, "**" sub-intrinsic price
};

struct PricingConfig {
    double alpha_cm = 1.1;   // Carr-Madan dampening
    double grid_step = 0.1;  // frequency spacing
    double grid_max = 250.0; // largest Re(u1)
    int n_steps = 128;       // hybrid RR3 step count
    int r_max = 250;
    double eps0 = 0.005;
    int threads = 0;         // 0: FRAC_RICCATI_THREADS or hardware
    int adams_min_steps = 10;
    int adams_max_steps = 150;
    int adams_step_increment = 10;
    double adams_vol_tol = 1e-2;
};

/// European call prices by Carr-Madan damped-transform inversion with
/// composite trapezoid over Re(u1) in {0, step, ..., grid_max} at
/// Im-offset alpha_cm + 1. CF evaluations are shared across strikes of a
/// common maturity (one Riccati solve per frequency per maturity).
std::vector<PriceResult> carr_madan_price(const HestonParams& p,
                                          std::span<const OptionSpec> specs,
                                          SolverKind solver, const PricingConfig& cfg = {});

/// Black-Scholes call, zero rates.
double bs_call(double s0, double strike, double maturity, double vol);

/// Zero-rate Black-Scholes implied volatility to 1e-8; nullopt when price is
/// outside ((s0-K)+, s0).
std::optional<double> implied_vol(double price, double s0, double strike, double maturity);

struct SkewPoint {
    double maturity;
    double skew; // d sigma_imp / d log-strike at the money
};

/// Central-difference ATM skew, strikes s0*exp(+-dk).
std::vector<SkewPoint> atm_skew(const HestonParams& p, std::span<const double> maturities,
                                double dk = 1e-3, const PricingConfig& cfg = {});

/// Hybrid-vs-Adams comparison harness. For each cell the hybrid (n_steps)
/// row is produced; with adams_step_search, Adams rows search the step count
/// until |sigma_imp(hybrid) - sigma_imp(adams)| <= adams_vol_tol, flagging
/// "*" when unreachable and "**" when a price undercuts intrinsic value.
std::vector<PriceResult> price_book(const HestonParams& p, std::span<const OptionSpec> book,
                                    std::span<const SolverKind> solvers,
                                    bool adams_step_search, const PricingConfig& cfg = {});

std::string to_string(SolverKind s);

namespace detail {
/// Carr-Madan with an arbitrary CF for E[e^{uX}] (testing hook).
std::vector<double> carr_madan_with_cf(const std::function<Complex(Complex)>& cf_of_u,
                                       double s0, std::span<const double> strikes,
                                       const PricingConfig& cfg);
} // namespace detail

} // namespace fracriccati

#endif
