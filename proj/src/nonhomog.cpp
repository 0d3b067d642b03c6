#include "fracriccati/nonhomog.hpp"

#include <algorithm>
#include <cmath>

#include "fracriccati/errors.hpp"
#include "fracriccati/special.hpp"

namespace fracriccati {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

void check_supported_alpha(double alpha, bool u_zero, bool v_zero) {
    if (u_zero && v_zero) {
        if (!(alpha > 0.0) || alpha > 2.0)
            throw DomainError("alpha must lie in (0,2]");
        return; // homogeneous reduction, any order
    }
    const bool low = alpha > 0.5 && alpha < 1.0;
    const bool high = alpha > 1.0 && alpha <= 2.0;
    if (!low && !high)
        throw DomainError("nonhomog: nonzero initial data requires alpha in (1/2,1) or (1,2]");
}

// Gamma(num)/Gamma(den) guarding against poles of the numerator/denominator.
double gamma_ratio_guarded(double num, double den, int k, int level) {
    if (is_nonpositive_integer(num) || is_nonpositive_integer(den))
        throw GammaPoleAtError(k, level,
                               "nonhomog recursion: Gamma pole at (k=" + std::to_string(k) +
                                   ", l=" + std::to_string(level) + ")");
    if (num > 0.0 && den > 0.0) return gamma_ratio(num, den);
    return (gamma(Complex{num, 0.0}) / gamma(Complex{den, 0.0})).real();
}

// Constructive-bound constants (diagnostics). theta* solves theta * rho*(theta)^{1/alpha} = 1.
double rho_star_of_theta(const RiccatiCoeffs& c, Complex u, Complex v, double theta) {
    const double a = c.alpha;
    const double lam = std::abs(c.lambda), mu = std::abs(c.mu), nu = std::abs(c.nu);
    const double bhalf = beta(a / 2.0, a / 2.0);
    const double bbar = bhalf * (bhalf + 1.0);
    if (a < 1.0) {
        const double k1 = (1.0 + a / (2.0 * a - 1.0)) * std::pow(2.0, -a / 2.0) *
                          std::pow(2.0 * a - 1.0, -a) *
                          std::pow(1.0 + 3.0 * (1.0 - a) / (4.0 * (2.0 * a - 1.0)), -a);
        const double k2 = a / (3.0 * a - 1.0) * std::pow(2.0 * a * (2.0 * a - 1.0), -a / 2.0) *
                          std::pow(std::max(2.0 * (2.0 * a - 1.0) / (1.0 - a), 1.0), a / 2.0);
        const double c0 = std::max(nu / gamma(a + 1.0), std::abs(u) / (theta * gamma(a)));
        const double rho1 = std::sqrt(lam * std::abs(u) * bhalf * k1 / (theta * gamma(a)));
        const double bq = std::pow(2.0, 1.0 - a / 2.0) * k2 * mu;
        const double rho2 = 0.5 * (bq + std::sqrt(bq * bq + 4.0 * k2 * c0 * bbar * lam));
        return std::max(rho1, rho2);
    }
    const double k5 = std::pow(3.0, 1.0 - a / 2.0) * std::pow(a - 1.0, -a);
    const double k6 = a / (2.0 * (a - 1.0)) * std::pow(a * (a - 1.0), -a / 2.0);
    const double c1 = std::max(std::abs(u) / gamma(a),
                               std::sqrt(2.0 * k5 * lam * std::abs(v) / gamma(a - 1.0)));
    const double base = k6 * (mu + std::sqrt(mu * mu + lam * nu * bbar / (gamma(a + 1.0) * k6)));
    return std::max(base, c1 / theta);
}

void fill_diagnostics(DoubleSeries& ds) {
    const double a = ds.alpha;
    const bool low = a > 0.5 && a < 1.0;
    const bool high = a > 1.0 && a <= 2.0;
    if (!(low || high) || (ds.u == Complex{0.0} && ds.v == Complex{0.0})) {
        ds.theta_star = std::numeric_limits<double>::quiet_NaN();
        ds.rho_star_level = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const auto target = [&](double th) {
        return th * std::pow(rho_star_of_theta(ds.coeffs, ds.u, ds.v, th), 1.0 / a) - 1.0;
    };
    double lo = 1e-12, hi = 1.0;
    while (target(hi) < 0.0 && hi < 1e12) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (target(mid) < 0.0 ? lo : hi) = mid;
    }
    ds.theta_star = 0.5 * (lo + hi);
    ds.rho_star_level = rho_star_of_theta(ds.coeffs, ds.u, ds.v, ds.theta_star);
}

} // namespace

Complex DoubleSeries::at(int k, int level) const {
    if (level < 0 || level > L_max || k < 1 || k > k_cap) return Complex{0.0};
    const int val = valuation[static_cast<size_t>(level)];
    if (val == kInfValuation || k < val) return Complex{0.0};
    const size_t j = static_cast<size_t>(k - val);
    const auto& row = levels[static_cast<size_t>(level)];
    return j < row.size() ? row[j] : Complex{0.0};
}

std::vector<int> valuations(double alpha, bool nu_zero, bool u_zero, bool v_zero, int L) {
    if (L < 0)
        throw DomainError("valuations: L must be >= 0");
    if (alpha <= 0.5 && !u_zero)
        throw DomainError("valuations: alpha <= 1/2 with u != 0 is unsupported");
    check_supported_alpha(alpha, u_zero, v_zero);

    std::vector<int> k(static_cast<size_t>(L) + 1, kInfValuation);
    k[0] = nu_zero ? kInfValuation : 1;
    if (alpha < 1.0) {
        if (!u_zero)
            for (int l = 1; l <= L; ++l) k[static_cast<size_t>(l)] = std::max(2 * l - 1, 1);
    } else if (alpha > 1.0) {
        if (!u_zero || !v_zero)
            for (int l = 1; l <= L; ++l)
                k[static_cast<size_t>(l)] = l >= 3 ? l : 1;
    }
    return k;
}

DoubleSeries build_double_coefficients(const RiccatiCoeffs& c, Complex u, Complex v,
                                       int L_max, int k_cap) {
    const double a = c.alpha;
    const bool u_zero = u == Complex{0.0};
    const bool v_zero = v == Complex{0.0};
    if (a <= 1.0 && !v_zero)
        throw DomainError("build_double_coefficients: v is only meaningful for alpha > 1");
    if (a <= 0.5 && !u_zero)
        throw DomainError("build_double_coefficients: alpha <= 1/2 with u != 0 is unsupported");
    check_supported_alpha(a, u_zero, v_zero);
    if (L_max < 0 || k_cap < 1)
        throw DomainError("build_double_coefficients: need L_max >= 0 and k_cap >= 1");

    DoubleSeries ds;
    ds.coeffs = c;
    ds.alpha = a;
    ds.u = u;
    ds.v = v;
    ds.L_max = L_max;
    ds.k_cap = k_cap;

    // Theoretical valuations are imposed: a_{k,l} = 0 for k < k(l). The
    // convolution's k_i >= k(l_i) constraint refers to these valuations; for
    // alpha in (1, 3/2] the unconstrained cross terms (e.g. the v^2 product
    // feeding (k,l) = (3,4)) correspond to non-integrable monomials and do not
    // belong to the expansion.
    const std::vector<int> kmin = valuations(a, c.nu == Complex{0.0}, u_zero, v_zero, L_max);

    // dense working table, trimmed to ragged storage afterwards
    std::vector<std::vector<Complex>> table(static_cast<size_t>(L_max) + 1,
                                            std::vector<Complex>(static_cast<size_t>(k_cap) + 1,
                                                                 Complex{0.0}));
    auto at = [&](int k, int l) -> Complex {
        if (l < 0 || l > L_max || k < 1 || k > k_cap) return Complex{0.0};
        return table[static_cast<size_t>(l)][static_cast<size_t>(k)];
    };

    table[0][1] = c.nu / gamma(a + 1.0);
    if (L_max >= 1) table[1][1] = u / gamma(a);
    if (a > 1.0 && L_max >= 2) table[2][1] = v / gamma(a - 1.0);

    for (int k = 2; k <= k_cap; ++k) {
        for (int l = 0; l <= L_max; ++l) {
            if (kmin[static_cast<size_t>(l)] == kInfValuation ||
                k < kmin[static_cast<size_t>(l)])
                continue;
            Complex conv{0.0}; // a*2_{k-1,l}
            for (int l1 = 0; l1 <= l; ++l1)
                for (int k1 = 1; k1 <= k - 2; ++k1)
                    conv += at(k1, l1) * at(k - 1 - k1, l - l1);
            const Complex rhs = c.mu * at(k - 1, l) + c.lambda * conv;
            if (rhs == Complex{0.0}) continue;
            const double num = a * (k - 1) - l + 1.0;
            const double den = a * k - l + 1.0;
            table[static_cast<size_t>(l)][static_cast<size_t>(k)] =
                rhs * gamma_ratio_guarded(num, den, k, l);
        }
    }

    ds.valuation.assign(static_cast<size_t>(L_max) + 1, kInfValuation);
    ds.levels.assign(static_cast<size_t>(L_max) + 1, {});
    for (int l = 0; l <= L_max; ++l) {
        int first = kInfValuation;
        for (int k = 1; k <= k_cap; ++k)
            if (at(k, l) != Complex{0.0}) { first = k; break; }
        ds.valuation[static_cast<size_t>(l)] = first;
        if (first != kInfValuation)
            ds.levels[static_cast<size_t>(l)].assign(
                table[static_cast<size_t>(l)].begin() + first,
                table[static_cast<size_t>(l)].end());
    }

    fill_diagnostics(ds);
    return ds;
}

std::vector<Complex> starting_values_closed_form(const RiccatiCoeffs& c, Complex u, int L) {
    const double a = c.alpha;
    if (!(a > 0.5) || !(a < 1.0))
        throw DomainError("starting_values_closed_form: requires alpha in (1/2,1)");
    if (L < 1)
        throw DomainError("starting_values_closed_form: L must be >= 1");
    std::vector<double> cl(static_cast<size_t>(L) + 1, 0.0);
    cl[1] = 1.0;
    for (int l = 2; l <= L; ++l) {
        double s = 0.0;
        for (int j = 1; j < l; ++j) s += cl[static_cast<size_t>(j)] * cl[static_cast<size_t>(l - j)];
        cl[static_cast<size_t>(l)] =
            gamma_ratio((2.0 * a - 1.0) * (l - 1), (2.0 * a - 1.0) * l + 1.0 - a) * s;
    }
    std::vector<Complex> out(static_cast<size_t>(L) + 1, Complex{0.0});
    const Complex base = u / gamma(a);
    Complex lam_pow{1.0}, base_pow{1.0};
    for (int l = 1; l <= L; ++l) {
        base_pow *= base;
        if (l >= 2) lam_pow *= c.lambda;
        out[static_cast<size_t>(l)] = lam_pow * base_pow * cl[static_cast<size_t>(l)];
    }
    return out;
}

std::vector<Complex> starting_values_closed_form_high(const RiccatiCoeffs& c, Complex u,
                                                      Complex v, int L) {
    const double a = c.alpha;
    if (!(a > 1.0) || a > 2.0)
        throw DomainError("starting_values_closed_form_high: requires alpha in (1,2]");
    if (c.lambda == Complex{0.0})
        throw DomainError("starting_values_closed_form_high: requires lambda != 0");
    if (L < 1)
        throw DomainError("starting_values_closed_form_high: L must be >= 1");
    std::vector<Complex> out(static_cast<size_t>(L) + 1, Complex{0.0});
    const Complex base = 2.0 * c.lambda * v / gamma(a - 1.0);

    out[1] = u / gamma(a);
    // even diagonal: prod over Gamma((2j-1)(a-1)) / Gamma((2j-1)(a-1)+a)
    Complex even = c.mu / (2.0 * c.lambda);
    Complex odd = u / gamma(a);
    for (int m = 1; 2 * m <= L || 2 * m + 1 <= L; ++m) {
        even *= base * gamma_ratio((2.0 * m - 1.0) * (a - 1.0), (2.0 * m - 1.0) * (a - 1.0) + a);
        odd *= base * gamma_ratio(2.0 * m * (a - 1.0), 2.0 * m * (a - 1.0) + a);
        if (2 * m <= L) out[static_cast<size_t>(2 * m)] = even;
        if (2 * m + 1 <= L) out[static_cast<size_t>(2 * m + 1)] = odd;
    }
    return out;
}

namespace {

// Shared evaluator: weight(k, l) maps each monomial coefficient; exponent(k, l)
// is the resulting power of t.
template <typename WeightFn, typename ExpFn>
DoubleEval eval_levels(const DoubleSeries& ds, double t, double tol,
                       WeightFn&& weight, ExpFn&& exponent) {
    if (!(tol > 0.0))
        throw DomainError("eval_double: tol must be positive");
    const bool has_singular = ds.u != Complex{0.0} || ds.v != Complex{0.0};
    if (t < 0.0 || (t == 0.0 && has_singular))
        throw DomainError("eval_double: t must be positive for nonzero initial data");
    if (t == 0.0) return {Complex{0.0}, 0};

    int last_nonempty = -1;
    for (int l = 0; l <= ds.L_max; ++l)
        if (ds.valuation[static_cast<size_t>(l)] != kInfValuation) last_nonempty = l;
    if (last_nonempty < 0) return {Complex{0.0}, 0};

    Complex total{0.0};
    int below = 0;
    for (int l = 0; l <= last_nonempty; ++l) {
        const int val = ds.valuation[static_cast<size_t>(l)];
        Complex level_sum{0.0};
        if (val != kInfValuation) {
            const auto& row = ds.levels[static_cast<size_t>(l)];
            for (size_t j = 0; j < row.size(); ++j) {
                const int k = val + static_cast<int>(j);
                level_sum += row[j] * weight(k, l) * std::pow(t, exponent(k, l));
            }
        }
        total += level_sum;
        below = std::abs(level_sum) < tol ? below + 1 : 0;
        if (l == last_nonempty) {
            // levels exhausted: fine if the series genuinely ends here or the
            // tail is already certified small
            if (last_nonempty == ds.L_max && below == 0)
                throw NonConvergenceError(
                    "eval_double: level contributions did not decay below tol within L_max levels");
            return {total, l + 1};
        }
        if (l >= 1 && below >= 2) return {total, l + 1};
    }
    return {total, last_nonempty + 1};
}

} // namespace

DoubleEval eval_double(const DoubleSeries& ds, double t, double tol) {
    const double a = ds.alpha;
    return eval_levels(
        ds, t, tol, [](int, int) { return 1.0; },
        [a](int k, int l) { return a * k - l; });
}

DoubleEval eval_double_i1(const DoubleSeries& ds, double t, double tol) {
    const double a = ds.alpha;
    return eval_levels(
        ds, t, tol, [a](int k, int l) { return 1.0 / (a * k - l + 1.0); },
        [a](int k, int l) { return a * k - l + 1.0; });
}

DoubleEval eval_double_i1ma(const DoubleSeries& ds, double t, double tol) {
    const double a = ds.alpha;
    if (a > 1.0)
        throw DomainError("eval_double_i1ma: requires alpha <= 1");
    return eval_levels(
        ds, t, tol,
        [a](int k, int l) {
            return a < 1.0 ? frac_integral_monomial(a * k - l, 1.0 - a) : 1.0; // I_0 = id
        },
        [a](int k, int l) { return a * k - l + 1.0 - a; });
}

} // namespace fracriccati
