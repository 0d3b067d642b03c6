#ifndef FRACRICCATI_ERRORS_HPP
#define FRACRICCATI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracriccati {

/// Gamma evaluated at a non-positive integer.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Precondition violated (argument outside the documented domain).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Radius estimator asked for |a_n|^{-1/(alpha n)} with a_n = 0 while other
/// coefficients are nonzero.
struct UndefinedRadiusError : std::domain_error {
    explicit UndefinedRadiusError(const std::string& what) : std::domain_error(what) {}
};

/// A structural hypothesis (sign pattern, mu = 0, ...) does not hold.
struct HypothesisError : std::domain_error {
    explicit HypothesisError(const std::string& what) : std::domain_error(what) {}
};

/// Time stepping exceeded the overflow guard: the solution explodes before T.
struct BlowUpError : std::runtime_error {
    double t_blowup;
    explicit BlowUpError(double t, const std::string& what)
        : std::runtime_error(what), t_blowup(t) {}
};

/// Doubly-indexed recursion hit Gamma(alpha*k - l + 1) at a non-positive integer.
struct GammaPoleAtError : std::domain_error {
    int k, level;
    GammaPoleAtError(int k_, int level_, const std::string& what)
        : std::domain_error(what), k(k_), level(level_) {}
};

/// Transform argument outside the validity region.
struct RegionError : std::domain_error {
    explicit RegionError(const std::string& what) : std::domain_error(what) {}
};

/// Level contributions of the doubly-indexed series failed to decay.
struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fracriccati

#endif
