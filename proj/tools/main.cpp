// Command-line front end: solve / radius / triplet / price / skew / convergence.
//
// Exit codes: 0 success, 2 domain error, 3 blow-up, 4 I/O error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracriccati/adams.hpp"
#include "fracriccati/errors.hpp"
#include "fracriccati/heston.hpp"
#include "fracriccati/hybrid.hpp"
#include "fracriccati/pricing.hpp"
#include "fracriccati/series.hpp"

namespace fr = fracriccati;
using json = nlohmann::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitIo = 4;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string fmt(const fr::Complex& z) {
    if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) return fmt(z.real());
    return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

std::string fmt_or_inf(double x) { return std::isfinite(x) ? fmt(x) : "+inf"; }

struct CoeffFlags {
    double lambda = 0.0, mu = 0.0, nu = 0.0;
    double lambda_im = 0.0, mu_im = 0.0, nu_im = 0.0;
    double alpha = 0.62;

    fr::RiccatiCoeffs to_coeffs() const {
        return {{lambda, lambda_im}, {mu, mu_im}, {nu, nu_im}, alpha};
    }
    void add_to(CLI::App* cmd) {
        cmd->add_option("--lambda", lambda, "quadratic coefficient")->required();
        cmd->add_option("--mu", mu, "linear coefficient")->required();
        cmd->add_option("--nu", nu, "constant coefficient")->required();
        cmd->add_option("--alpha", alpha, "fractional order in (0,2]")->required();
        cmd->add_option("--lambda-im", lambda_im, "imaginary part of lambda");
        cmd->add_option("--mu-im", mu_im, "imaginary part of mu");
        cmd->add_option("--nu-im", nu_im, "imaginary part of nu");
    }
};

struct ModelFlags {
    fr::HestonParams p;
    void add_to(CLI::App* cmd) {
        cmd->add_option("--model-alpha", p.alpha, "model order H + 1/2");
        cmd->add_option("--eta", p.eta, "mean-reversion speed");
        cmd->add_option("--m", p.m, "long-run variance");
        cmd->add_option("--zeta", p.zeta, "vol-of-vol factor");
        cmd->add_option("--rho", p.rho, "spot-vol correlation");
        cmd->add_option("--v0", p.v0, "initial variance");
        cmd->add_option("--s0", p.s0, "spot");
    }
};

struct OutputFlags {
    std::string path;
    std::string format = "csv";
    void add_to(CLI::App* cmd) {
        cmd->add_option("--out", path, "output file (default stdout)");
        cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::ostringstream os;
        for (size_t i = 0; i < columns.size(); ++i)
            os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        for (const auto& r : rows)
            for (size_t i = 0; i < r.size(); ++i) os << r[i] << (i + 1 < r.size() ? "," : "\n");
        return os.str();
    }
    std::string to_json() const {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj;
            for (size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = r[i];
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }
};

void emit(const Table& t, const OutputFlags& out) {
    const std::string body = out.format == "json" ? t.to_json() : t.csv();
    if (out.path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out.path);
    if (!f || !(f << body)) throw std::ios_base::failure("cannot write " + out.path);
}

fr::SolverKind parse_solver(const std::string& m) {
    if (m == "series") return fr::SolverKind::Series;
    if (m == "hybrid") return fr::SolverKind::Hybrid;
    if (m == "adams") return fr::SolverKind::Adams;
    throw fr::DomainError("unknown method: " + m);
}

struct SolveCommand {
    CoeffFlags coeffs;
    double t = 0.0;
    std::string method = "series";
    int r0 = 0;
    int n = 128;
    int rr = 3;
    int r_max = 250;
    double eps0 = 0.005;
    double switch_factor = 1.0;
    bool no_radius_check = false;

    void add_to(CLI::App* cmd) {
        coeffs.add_to(cmd);
        cmd->add_option("--t", t, "evaluation time")->required();
        cmd->add_option("--method", method, "series|hybrid|adams")
            ->check(CLI::IsMember({"series", "hybrid", "adams"}));
        cmd->add_option("--r0", r0, "series truncation order (default r-max)");
        cmd->add_option("--n", n, "step count (hybrid/adams)");
        cmd->add_option("--rr", rr, "extrapolation order 1|2|3 (hybrid)")
            ->check(CLI::IsMember({1, 2, 3}));
        cmd->add_option("--eps0", eps0, "series accuracy target");
        cmd->add_option("--switch-factor", switch_factor, "series/Euler switch damping in (0,1]");
        cmd->add_option("--r-max", r_max, "computed series order");
        cmd->add_flag("--no-radius-check", no_radius_check,
                      "evaluate the series even beyond the radius");
    }

    int run() const {
        const fr::RiccatiCoeffs c = coeffs.to_coeffs();
        fr::Triplet tr;
        switch (parse_solver(method)) {
        case fr::SolverKind::Series: {
            const auto s = fr::build_coefficients(c, r_max);
            if (!no_radius_check && t > 0.90 * s.radius_conservative)
                throw fr::DomainError("t is outside the series radius (Rhat = " +
                                      fmt(s.radius_conservative) + "); use the hybrid method");
            tr = fr::eval_triplet_series(s, t, r0 > 0 ? r0 : r_max);
            break;
        }
        case fr::SolverKind::Hybrid: {
            const auto s = fr::build_coefficients(c, r_max);
            fr::HybridConfig hc;
            hc.n = n;
            hc.eps0 = eps0;
            hc.switch_factor = switch_factor;
            hc.r_max = r_max;
            tr = rr == 3 ? fr::rr3(s, t, hc) : rr == 2 ? fr::rr2(s, t, hc) : fr::hybrid_solve(s, t, hc);
            break;
        }
        case fr::SolverKind::Adams:
            tr = fr::adams_solve(c, t, n);
            break;
        }
        std::cout << fmt(tr.psi) << " " << fmt(tr.i1_psi) << " " << fmt(tr.i1ma_psi) << "\n";
        return 0;
    }
};

int run_radius(const CoeffFlags& cf, int r_max) {
    const fr::RiccatiCoeffs c = cf.to_coeffs();
    const auto s = fr::build_coefficients(c, r_max);
    const double ts = fr::tau_star(c);
    std::cout << "tau_star " << fmt_or_inf(ts) << "\n";
    std::cout << "R_n " << fmt_or_inf(s.radius_empirical) << "\n";
    std::cout << "R_hat " << fmt_or_inf(s.radius_conservative) << "\n";
    const auto ub = fr::radius_upper_bound(c);
    std::cout << "upper_bound " << (ub ? fmt(*ub) : "n/a") << "\n";
    if (ub && std::isfinite(ts)) {
        const bool ok = ts <= s.radius_empirical * (1.0 + 1e-9) &&
                        s.radius_empirical <= *ub * (1.0 + 1e-9);
        std::cout << "sandwich " << (ok ? "PASS" : "FAIL") << "\n";
    }
    return 0;
}

int run_price(const ModelFlags& mf, const std::vector<double>& maturities_days,
              const std::vector<double>& strikes_pct, const std::string& method,
              bool adams_search, const fr::PricingConfig& cfg, const OutputFlags& out) {
    std::vector<fr::OptionSpec> book;
    for (const double d : maturities_days)
        for (const double k : strikes_pct) book.push_back({k, d / 252.0});

    const std::vector<fr::SolverKind> solvers =
        method == "both" ? std::vector<fr::SolverKind>{fr::SolverKind::Hybrid, fr::SolverKind::Adams}
                         : std::vector<fr::SolverKind>{parse_solver(method)};
    const auto rows = fr::price_book(mf.p, book, solvers, adams_search, cfg);

    Table t;
    t.columns = {"maturity_days", "strike_pct", "method", "steps",
                 "price",         "implied_vol", "cpu_ms", "flags"};
    for (const auto& r : rows)
        t.rows.push_back({fmt(r.maturity * 252.0), fmt(r.strike_pct), fr::to_string(r.solver),
                          std::to_string(r.steps), fmt(r.price),
                          r.implied_vol ? fmt(*r.implied_vol) : "n/a", fmt(r.cpu_millis), r.flags});
    emit(t, out);
    return 0;
}

int run_skew(const ModelFlags& mf, const std::vector<double>& maturities_days, double dk,
             const fr::PricingConfig& cfg, const OutputFlags& out) {
    std::vector<double> mats;
    mats.reserve(maturities_days.size());
    for (const double d : maturities_days) mats.push_back(d / 252.0);
    const auto pts = fr::atm_skew(mf.p, mats, dk, cfg);
    Table t;
    t.columns = {"maturity_days", "alpha", "skew"};
    for (const auto& s : pts)
        t.rows.push_back({fmt(s.maturity * 252.0), fmt(mf.p.alpha), fmt(s.skew)});
    emit(t, out);
    return 0;
}

int run_convergence(const CoeffFlags& cf, double t, const std::vector<int>& ns, double sf,
                    double eps0, int r_max, const OutputFlags& out) {
    const fr::RiccatiCoeffs c = cf.to_coeffs();
    const auto s = fr::build_coefficients(c, r_max);
    fr::HybridConfig hc;
    hc.eps0 = eps0;
    hc.switch_factor = sf;
    hc.r_max = r_max;

    int n_ref = 0;
    for (const int n : ns) n_ref = std::max(n_ref, n);
    hc.n = 4 * n_ref;
    const fr::Triplet ref = fr::rr3(s, t, hc); // self-converged reference

    Table tab;
    tab.columns = {"n", "cbar1", "err_plain", "err_rr2", "err_rr3"};
    for (const int n : ns) {
        hc.n = n;
        const double cbar = fr::error_expansion_diag(s, t, n, hc);
        const auto plain = fr::hybrid_solve(s, t, hc);
        std::string e2 = "n/a", e3 = "n/a";
        if (n % 2 == 0) e2 = fmt(std::abs((fr::rr2(s, t, hc) - ref).psi));
        if (n % 4 == 0) e3 = fmt(std::abs((fr::rr3(s, t, hc) - ref).psi));
        tab.rows.push_back(
            {std::to_string(n), fmt(cbar), fmt(std::abs((plain - ref).psi)), e2, e3});
    }
    emit(tab, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional Riccati power-series / hybrid solver and rough Heston pricer"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file with [subcommand] sections");

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker pool cap (default FRAC_RICCATI_THREADS or hardware)");

    SolveCommand solve_cmd, triplet_cmd;
    CLI::App* solve = app.add_subcommand("solve", "triplet (psi, I1 psi, I_{1-alpha} psi) at t");
    solve_cmd.add_to(solve);
    CLI::App* triplet = app.add_subcommand("triplet", "alias of solve");
    triplet_cmd.add_to(triplet);

    CoeffFlags rcf;
    int rr_max = 250;
    CLI::App* radius = app.add_subcommand("radius", "convergence radius estimates and bounds");
    rcf.add_to(radius);
    radius->add_option("--r-max", rr_max, "computed series order");

    ModelFlags pmf;
    std::vector<double> pmats{1, 5, 21, 126, 252, 504};
    std::vector<double> pstrikes{80, 85, 90, 95, 100, 105, 110, 115, 120};
    std::string pmethod = "hybrid";
    bool padams_search = false;
    fr::PricingConfig pcfg;
    OutputFlags pout;
    CLI::App* price = app.add_subcommand("price", "European call book via Carr-Madan inversion");
    pmf.add_to(price);
    price->add_option("--maturities-days", pmats, "maturities in trading days (1y = 252)");
    price->add_option("--strikes-pct", pstrikes, "strikes in percent of spot");
    price->add_option("--method", pmethod, "hybrid|adams|series|both")
        ->check(CLI::IsMember({"hybrid", "adams", "series", "both"}));
    price->add_flag("--adams-search", padams_search,
                    "search the Adams step count against the hybrid implied vols");
    price->add_option("--n", pcfg.n_steps, "hybrid step count");
    price->add_option("--alpha-cm", pcfg.alpha_cm, "Carr-Madan dampening factor");
    price->add_option("--grid-step", pcfg.grid_step, "frequency grid spacing");
    price->add_option("--grid-max", pcfg.grid_max, "frequency grid upper end");
    pout.add_to(price);

    ModelFlags kmf;
    std::vector<double> kmats{1, 5, 21, 126, 252};
    double kdk = 1e-3;
    fr::PricingConfig kcfg;
    OutputFlags kout;
    CLI::App* skew = app.add_subcommand("skew", "ATM implied-vol skew term structure");
    kmf.add_to(skew);
    skew->add_option("--maturities-days", kmats, "maturities in trading days");
    skew->add_option("--dk", kdk, "log-strike bump");
    skew->add_option("--n", kcfg.n_steps, "hybrid step count");
    kout.add_to(skew);

    CoeffFlags ccf;
    double ct = 1.0 / 252.0;
    std::vector<int> cns{8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
    double csf = 0.5, ceps0 = 0.005;
    int cr_max = 250;
    OutputFlags cout_flags;
    CLI::App* conv = app.add_subcommand("convergence", "error-expansion diagnostic table");
    ccf.add_to(conv);
    conv->add_option("--t", ct, "evaluation time");
    conv->add_option("--n-list", cns, "step counts");
    conv->add_option("--switch-factor", csf, "series/Euler switch damping in (0,1]");
    conv->add_option("--eps0", ceps0, "series accuracy target");
    conv->add_option("--r-max", cr_max, "computed series order");
    cout_flags.add_to(conv);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return solve_cmd.run();
        if (triplet->parsed()) return triplet_cmd.run();
        if (radius->parsed()) return run_radius(rcf, rr_max);
        if (price->parsed()) {
            pcfg.threads = threads;
            return run_price(pmf, pmats, pstrikes, pmethod, padams_search, pcfg, pout);
        }
        if (skew->parsed()) {
            kcfg.threads = threads;
            return run_skew(kmf, kmats, kdk, kcfg, kout);
        }
        if (conv->parsed()) return run_convergence(ccf, ct, cns, csf, ceps0, cr_max, cout_flags);
    } catch (const fr::BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fr::NonConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
