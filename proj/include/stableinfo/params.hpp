#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace stableinfo {

/// Largest |beta| accepted. The one-sided laws (beta = +-1) behave
/// qualitatively differently and are excluded from the supported domain.
inline constexpr double kBetaMax = 0.999;

/// Parameters of a stable law in Zolotarev's (M) parameterization:
/// location mu, scale sigma > 0, characteristic exponent alpha in (1,2],
/// skewness beta in [-kBetaMax, kBetaMax].
struct StableParams {
    double mu = 0.0;
    double sigma = 1.0;
    double alpha = 2.0;
    double beta = 0.0;
};

inline void validate(double alpha, double beta) {
    if (!(alpha > 1.0) || !(alpha <= 2.0) || std::isnan(alpha))
        throw std::invalid_argument("alpha must lie in (1, 2], got " + std::to_string(alpha));
    if (!(std::fabs(beta) <= kBetaMax))
        throw std::invalid_argument("|beta| must be <= " + std::to_string(kBetaMax) +
                                    ", got " + std::to_string(beta));
}

inline void validate(const StableParams& p) {
    if (!(p.sigma > 0.0) || std::isnan(p.sigma))
        throw std::invalid_argument("sigma must be positive, got " + std::to_string(p.sigma));
    if (std::isnan(p.mu) || std::isinf(p.mu))
        throw std::invalid_argument("mu must be finite");
    validate(p.alpha, p.beta);
}

/// Quantities derived once from (alpha, beta):
///   zeta   = -beta * tan(pi*alpha/2)            (shift of the integral representation)
///   varrho = (2/(pi*alpha)) * atan(beta * tan(pi*alpha/2))
///   delta  = 2 - alpha                          (distance to the Gaussian boundary)
/// At alpha = 2 the tangent singularity cancels; zeta and varrho are exactly 0.
struct DerivedQuantities {
    double zeta = 0.0;
    double varrho = 0.0;
    double delta = 0.0;
};

inline DerivedQuantities derive(double alpha, double beta) {
    validate(alpha, beta);
    DerivedQuantities d;
    d.delta = 2.0 - alpha;
    if (alpha == 2.0 || beta == 0.0) {
        // tan(pi*alpha/2) -> 0 as alpha -> 2; beta = 0 kills both expressions.
        d.zeta = 0.0;
        d.varrho = 0.0;
        return d;
    }
    const double t = std::tan(1.5707963267948966 * alpha);  // pi*alpha/2, alpha in (1,2)
    d.zeta = -beta * t;
    d.varrho = (2.0 / (3.141592653589793 * alpha)) * std::atan(beta * t);
    return d;
}

inline DerivedQuantities derive(const StableParams& p) {
    validate(p);
    return derive(p.alpha, p.beta);
}

/// Sign-dependent endpoint parameter varrho* = varrho * sgn(x - zeta).
inline double varrho_star(const DerivedQuantities& d, double x) {
    return (x >= d.zeta) ? d.varrho : -d.varrho;
}

struct Standardized {
    double x_std;
    double scale;  // 1/sigma, the Jacobian of the standardization
};

/// Reduce evaluation at general (mu, sigma) to the standard case via
/// f(x; mu,sigma,alpha,beta) = (1/sigma) f((x-mu)/sigma; alpha,beta).
inline Standardized standardize(double x, const StableParams& p) {
    return {(x - p.mu) / p.sigma, 1.0 / p.sigma};
}

}  // namespace stableinfo
