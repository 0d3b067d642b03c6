#include "fracriccati/pricing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "fracriccati/errors.hpp"
#include "fracriccati/parallel.hpp"

namespace fracriccati {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

int grid_points(const PricingConfig& cfg) {
    return static_cast<int>(std::lround(cfg.grid_max / cfg.grid_step)) + 1;
}

// Damped-call quadrature given the CF grid values for one maturity.
double invert_grid(const std::vector<Complex>& cf, double s0, double strike,
                   const PricingConfig& cfg) {
    const double a = cfg.alpha_cm;
    const double k = std::log(strike);
    const double logs0 = std::log(s0);
    const int m = static_cast<int>(cf.size());
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        const double v = j * cfg.grid_step;
        const Complex u{a + 1.0, v};
        const Complex phi = std::exp(u * logs0) * cf[static_cast<size_t>(j)];
        const Complex denom{a * a + a - v * v, (2.0 * a + 1.0) * v};
        const double term = (std::exp(Complex{0.0, -v * k}) * phi / denom).real();
        acc += (j == 0 || j == m - 1) ? 0.5 * term : term;
    }
    return std::exp(-a * k) / std::numbers::pi * cfg.grid_step * acc;
}

std::vector<Complex> cf_grid(const HestonParams& p, double T, SolverKind solver,
                             const PricingConfig& cfg, int steps) {
    const int m = grid_points(cfg);
    std::vector<Complex> cf(static_cast<size_t>(m));
    HybridConfig hc;
    hc.n = steps;
    hc.r_max = cfg.r_max;
    hc.eps0 = cfg.eps0;
    parallel_for(m, cfg.threads, [&](int j) {
        const double v = j * cfg.grid_step;
        const Complex u{cfg.alpha_cm + 1.0, v};
        try {
            cf[static_cast<size_t>(j)] = log_price_cf(p, u, T, solver, hc);
        } catch (const BlowUpError& e) {
            throw BlowUpError(e.t_blowup,
                              "carr_madan_price: CF blow-up at frequency Re(u1) = " +
                                  std::to_string(v) + ": " + e.what());
        }
    });
    return cf;
}

std::string solver_name(SolverKind s) {
    switch (s) {
    case SolverKind::Series: return "series";
    case SolverKind::Hybrid: return "hybrid";
    case SolverKind::Adams: return "adams";
    }
    return "?";
}

} // namespace

double bs_call(double s0, double strike, double maturity, double vol) {
    if (!(s0 > 0.0) || !(strike > 0.0) || !(maturity > 0.0))
        throw DomainError("bs_call: s0, strike, maturity must be positive");
    if (vol <= 0.0) return std::max(s0 - strike, 0.0);
    const double sq = vol * std::sqrt(maturity);
    const double d1 = (std::log(s0 / strike) + 0.5 * vol * vol * maturity) / sq;
    return s0 * norm_cdf(d1) - strike * norm_cdf(d1 - sq);
}

std::optional<double> implied_vol(double price, double s0, double strike, double maturity) {
    const double intrinsic = std::max(s0 - strike, 0.0);
    if (!(price > intrinsic) || !(price < s0)) return std::nullopt;

    double lo = 1e-9, hi = 1.0;
    while (bs_call(s0, strike, maturity, hi) < price && hi < 100.0) hi *= 2.0;
    double sigma = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double c = bs_call(s0, strike, maturity, sigma);
        (c < price ? lo : hi) = sigma;
        // Newton step from the bisection midpoint when vega allows
        const double sq = sigma * std::sqrt(maturity);
        const double d1 = (std::log(s0 / strike) + 0.5 * sigma * sigma * maturity) / sq;
        const double vega = s0 * std::sqrt(maturity) *
                            std::exp(-0.5 * d1 * d1) / std::sqrt(2.0 * std::numbers::pi);
        double next = 0.5 * (lo + hi);
        if (vega > 1e-14) {
            const double newton = sigma - (c - price) / vega;
            if (newton > lo && newton < hi) next = newton;
        }
        if (std::abs(next - sigma) < 1e-10 && std::abs(c - price) < 1e-12 * s0) return next;
        sigma = next;
        if (hi - lo < 1e-12) break;
    }
    return sigma;
}

std::vector<PriceResult> carr_madan_price(const HestonParams& p,
                                          std::span<const OptionSpec> specs,
                                          SolverKind solver, const PricingConfig& cfg) {
    p.validate();
    if (!(cfg.alpha_cm > 0.0))
        throw DomainError("carr_madan_price: alpha_cm must be positive");

    std::map<double, std::vector<size_t>> by_maturity;
    for (size_t i = 0; i < specs.size(); ++i) {
        if (!(specs[i].strike_pct > 0.0) || !(specs[i].maturity > 0.0))
            throw DomainError("carr_madan_price: strikes and maturities must be positive");
        by_maturity[specs[i].maturity].push_back(i);
    }

    std::vector<PriceResult> out(specs.size());
    for (const auto& [T, idx] : by_maturity) {
        const auto t0 = Clock::now();
        const std::vector<Complex> cf = cf_grid(p, T, solver, cfg, cfg.n_steps);
        const double shared_ms = ms_since(t0) / static_cast<double>(idx.size());
        for (const size_t i : idx) {
            const auto t1 = Clock::now();
            const double strike = specs[i].strike_pct * p.s0 / 100.0;
            PriceResult r;
            r.maturity = T;
            r.strike_pct = specs[i].strike_pct;
            r.solver = solver;
            r.steps = solver == SolverKind::Hybrid || solver == SolverKind::Adams ? cfg.n_steps : 0;
            r.price = invert_grid(cf, p.s0, strike, cfg);
            r.implied_vol = implied_vol(r.price, p.s0, strike, T);
            if (r.price < std::max(p.s0 - strike, 0.0) - 1e-4) r.flags = "**";
            r.cpu_millis = shared_ms + ms_since(t1);
            out[i] = r;
        }
    }
    return out;
}

std::vector<SkewPoint> atm_skew(const HestonParams& p, std::span<const double> maturities,
                                double dk, const PricingConfig& cfg) {
    if (!(dk > 0.0))
        throw DomainError("atm_skew: dk must be positive");
    std::vector<SkewPoint> out;
    out.reserve(maturities.size());
    const double k_up = p.s0 * std::exp(dk), k_dn = p.s0 * std::exp(-dk);
    for (const double T : maturities) {
        const std::vector<Complex> cf = cf_grid(p, T, SolverKind::Hybrid, cfg, cfg.n_steps);
        const double p_up = invert_grid(cf, p.s0, k_up, cfg);
        const double p_dn = invert_grid(cf, p.s0, k_dn, cfg);
        const auto v_up = implied_vol(p_up, p.s0, k_up, T);
        const auto v_dn = implied_vol(p_dn, p.s0, k_dn, T);
        if (!v_up || !v_dn)
            throw DomainError("atm_skew: implied vol undefined near the money at T = " +
                              std::to_string(T));
        out.push_back({T, (*v_up - *v_dn) / (2.0 * dk)});
    }
    return out;
}

std::vector<PriceResult> price_book(const HestonParams& p, std::span<const OptionSpec> book,
                                    std::span<const SolverKind> solvers,
                                    bool adams_step_search, const PricingConfig& cfg) {
    std::vector<PriceResult> rows;
    std::vector<PriceResult> hybrid_rows;

    for (const SolverKind solver : solvers) {
        if (solver == SolverKind::Adams && adams_step_search) continue; // handled below
        auto res = carr_madan_price(p, book, solver, cfg);
        if (solver == SolverKind::Hybrid) hybrid_rows = res;
        rows.insert(rows.end(), res.begin(), res.end());
    }

    const bool wants_adams =
        std::find(solvers.begin(), solvers.end(), SolverKind::Adams) != solvers.end();
    if (!wants_adams || !adams_step_search) return rows;
    if (hybrid_rows.empty())
        hybrid_rows = carr_madan_price(p, book, SolverKind::Hybrid, cfg);

    // Adams step search per cell against the hybrid implied vols; CF grids are
    // shared per (maturity, steps).
    std::map<double, std::vector<size_t>> by_maturity;
    for (size_t i = 0; i < book.size(); ++i) by_maturity[book[i].maturity].push_back(i);

    std::vector<PriceResult> adams_rows(book.size());
    for (const auto& [T, idx] : by_maturity) {
        for (const size_t i : idx) {
            adams_rows[i].maturity = T;
            adams_rows[i].strike_pct = book[i].strike_pct;
            adams_rows[i].solver = SolverKind::Adams;
            adams_rows[i].price = std::numeric_limits<double>::quiet_NaN();
        }
        std::vector<size_t> open = idx;
        for (int n = cfg.adams_min_steps; n <= cfg.adams_max_steps && !open.empty();
             n += cfg.adams_step_increment) {
            const auto t0 = Clock::now();
            PricingConfig acfg = cfg;
            acfg.n_steps = n;
            std::vector<Complex> cf;
            try {
                cf = cf_grid(p, T, SolverKind::Adams, acfg, n);
            } catch (const BlowUpError&) {
                continue; // coarse grid unstable at this frequency range; refine
            }
            const double grid_ms = ms_since(t0);
            std::vector<size_t> still_open;
            for (const size_t i : open) {
                const double strike = book[i].strike_pct * p.s0 / 100.0;
                PriceResult r;
                r.maturity = T;
                r.strike_pct = book[i].strike_pct;
                r.solver = SolverKind::Adams;
                r.steps = n;
                r.price = invert_grid(cf, p.s0, strike, acfg);
                r.implied_vol = implied_vol(r.price, p.s0, strike, T);
                r.cpu_millis = grid_ms / static_cast<double>(idx.size());
                if (r.price < std::max(p.s0 - strike, 0.0) - 1e-4) r.flags = "**";

                const auto& h = hybrid_rows[i];
                bool matched;
                if (h.implied_vol && r.implied_vol)
                    matched = std::abs(*h.implied_vol - *r.implied_vol) <= cfg.adams_vol_tol;
                else
                    matched = std::abs(h.price - r.price) <= 1e-3; // vols incomparable
                adams_rows[i] = r;
                if (!matched) still_open.push_back(i);
            }
            open.swap(still_open);
        }
        for (const size_t i : open)
            adams_rows[i].flags = adams_rows[i].flags.empty() ? "*" : adams_rows[i].flags + "*";
    }
    rows.insert(rows.end(), adams_rows.begin(), adams_rows.end());
    return rows;
}

namespace detail {

std::vector<double> carr_madan_with_cf(const std::function<Complex(Complex)>& cf_of_u,
                                       double s0, std::span<const double> strikes,
                                       const PricingConfig& cfg) {
    const int m = grid_points(cfg);
    std::vector<Complex> cf(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
        cf[static_cast<size_t>(j)] = cf_of_u(Complex{cfg.alpha_cm + 1.0, j * cfg.grid_step});
    std::vector<double> out;
    out.reserve(strikes.size());
    for (const double k : strikes) out.push_back(invert_grid(cf, s0, k, cfg));
    return out;
}

} // namespace detail

std::string to_string(SolverKind s) { return solver_name(s); }

} // namespace fracriccati
