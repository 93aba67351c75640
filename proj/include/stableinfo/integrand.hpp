#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "params.hpp"

namespace stableinfo::integrand {

// The positive integrand A(phi; alpha, beta) of the one-dimensional integral
// representation of the stable density (Nolan 1997, Zolotarev 1986):
//
//   A = (C/B) * (D*E/B)^(1/(alpha-1))
//
//   B = sin(pi/2 * (alpha*phi + a))        a = alpha*varrho
//   C = cos(pi/2 * ((alpha-1)*phi + a))
//   D = cos(pi/2 * phi)
//   E = cos(pi/2 * a)
//
// a is evaluated exactly as (2/pi) * atan(beta * tan(pi*alpha/2)); the factors
// are rewritten in lambda = 1 - phi for phi >= 1/2, where the direct forms
// cancel catastrophically. At alpha = 2 the whole expression collapses to
// 1/(4 sin^2(pi*phi/2)).

struct IntegrandFactors {
    double B, C, D, E;  // factors of A itself
    double F, G, H;     // cofactors appearing in A' (F = B', G = -C', H = -D' up to pi/2 scales)
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = kPi / 2.0;

struct Ctx {
    double alpha, beta;
    double delta;   // 2 - alpha
    double a;       // alpha * varrho, exact
    double varrho;  // lower endpoint is -varrho for x - zeta > 0
};

inline Ctx make_ctx(double alpha, double beta) {
    const DerivedQuantities d = derive(alpha, beta);
    return {alpha, beta, d.delta, alpha * d.varrho, d.varrho};
}

// Factors in terms of lambda = 1 - phi; all arguments are small near phi = 1,
// so no cancellation occurs.
inline IntegrandFactors factors_lambda(const Ctx& c, double lam) {
    const double ub = c.delta + (2.0 - c.delta) * lam - c.a;
    const double uc = c.delta + (1.0 - c.delta) * lam - c.a;
    IntegrandFactors f;
    f.B = std::sin(kHalfPi * ub);
    f.C = std::sin(kHalfPi * uc);
    f.D = std::sin(kHalfPi * lam);
    f.E = std::cos(kHalfPi * c.a);
    f.F = -std::cos(kHalfPi * ub);
    f.G = std::cos(kHalfPi * uc);
    f.H = std::cos(kHalfPi * lam);
    return f;
}

inline IntegrandFactors factors_direct(const Ctx& c, double phi) {
    const double ub = (2.0 - c.delta) * phi + c.a;
    const double uc = (1.0 - c.delta) * phi + c.a;
    IntegrandFactors f;
    f.B = std::sin(kHalfPi * ub);
    f.C = std::cos(kHalfPi * uc);
    f.D = std::cos(kHalfPi * phi);
    f.E = std::cos(kHalfPi * c.a);
    f.F = std::cos(kHalfPi * ub);
    f.G = std::sin(kHalfPi * uc);
    f.H = std::sin(kHalfPi * phi);
    return f;
}

inline IntegrandFactors factors(const Ctx& c, double phi) {
    return (phi >= 0.5) ? factors_lambda(c, 1.0 - phi) : factors_direct(c, phi);
}

inline void check_domain(const Ctx& c, double phi) {
    if (!(phi > -c.varrho) || !(phi < 1.0))
        throw std::domain_error("integrand: phi outside (-varrho*, 1)");
}

inline double log_A(const Ctx& c, const IntegrandFactors& f) {
    return std::log(f.C) - std::log(f.B) +
           (std::log(f.D) + std::log(f.E) - std::log(f.B)) / (1.0 - c.delta);
}

inline double A_value(const Ctx& c, const IntegrandFactors& f) {
    return (f.C / f.B) * std::exp(std::log(f.D * f.E / f.B) / (1.0 - c.delta));
}

// Bracket multiplying A in A' (without the leading pi/2).
inline double dlogA_bracket(const Ctx& c, const IntegrandFactors& f) {
    const double d = c.delta;
    return (2.0 - d) * (2.0 - d) / (d - 1.0) * (f.F / f.B) - (1.0 - d) * (f.G / f.C) -
           (f.H / f.D) / (1.0 - d);
}

}  // namespace detail

inline IntegrandFactors factors(double phi, double alpha, double beta) {
    const auto c = detail::make_ctx(alpha, beta);
    detail::check_domain(c, phi);
    return detail::factors(c, phi);
}

inline double A(double phi, double alpha, double beta) {
    const auto c = detail::make_ctx(alpha, beta);
    detail::check_domain(c, phi);
    return detail::A_value(c, detail::factors(c, phi));
}

/// A evaluated at phi = 1 - lambda without forming phi; needed where lambda
/// is below machine epsilon relative to 1.
inline double A_from_lambda(double lambda, double alpha, double beta) {
    const auto c = detail::make_ctx(alpha, beta);
    if (!(lambda > 0.0) || !(lambda < 1.0 + c.varrho))
        throw std::domain_error("integrand: lambda outside (0, 1 + varrho*)");
    return detail::A_value(c, detail::factors_lambda(c, lambda));
}

inline double log_A(double phi, double alpha, double beta) {
    const auto c = detail::make_ctx(alpha, beta);
    detail::check_domain(c, phi);
    return detail::log_A(c, detail::factors(c, phi));
}

/// dA/dphi. A times a sum of three cotangent-type ratios.
inline double A_prime(double phi, double alpha, double beta) {
    const auto c = detail::make_ctx(alpha, beta);
    detail::check_domain(c, phi);
    const auto f = detail::factors(c, phi);
    return detail::A_value(c, f) * detail::kHalfPi * detail::dlogA_bracket(c, f);
}

/// d^2A/dphi^2 = A' * bracket + A * (pi^2/(4(1-delta))) * cosecant terms.
inline double A_second(double phi, double alpha, double beta) {
    const auto c = detail::make_ctx(alpha, beta);
    detail::check_domain(c, phi);
    const auto f = detail::factors(c, phi);
    const double d = c.delta;
    const double a_val = detail::A_value(c, f);
    const double br = detail::dlogA_bracket(c, f);
    const double ap = a_val * detail::kHalfPi * br;
    const double cube = (2.0 - d) * (2.0 - d) * (2.0 - d) / (f.B * f.B) -
                        (1.0 - d) * (1.0 - d) * (1.0 - d) / (f.C * f.C) - 1.0 / (f.D * f.D);
    return ap * detail::kHalfPi * br +
           a_val * detail::kPi * detail::kPi / (4.0 * (1.0 - d)) * cube;
}

enum class ExpansionRegime { InnerScale, MidScale, OuterScale };

/// Closed-form approximants of A(1 - lambda) near the endpoint, as alpha -> 2.
/// InnerScale (lambda <= delta/eps_prime):
///     (lambda/delta)^(1/(1-delta)) (1+beta+lambda/delta) / (1+beta+2 lambda/delta)^2
/// MidScale   (lambda ~ delta^(1/2-eps)) and
/// OuterScale (delta^(1/2-eps) <= lambda, lambda small):
///     1/4 + pi^2 lambda^2 / 16
/// Throws when (lambda, delta) violate the regime hypothesis.
inline double A_expansion(double lambda, double delta, double beta, ExpansionRegime regime,
                          double eps = 0.1, double eps_prime = 0.1) {
    if (!(delta > 0.0) || !(delta < 1.0)) throw std::domain_error("A_expansion: delta outside (0,1)");
    if (!(lambda >= 0.0)) throw std::domain_error("A_expansion: lambda must be >= 0");
    if (!(eps > 0.0) || !(eps < 0.5)) throw std::domain_error("A_expansion: eps outside (0, 1/2)");
    const double pivot = std::pow(delta, 0.5 - eps);
    switch (regime) {
        case ExpansionRegime::InnerScale: {
            if (lambda > delta / eps_prime)
                throw std::domain_error("A_expansion: InnerScale needs lambda <= delta/eps_prime");
            if (lambda == 0.0) return 0.0;
            const double r = lambda / delta;
            return std::pow(r, 1.0 / (1.0 - delta)) * (1.0 + beta + r) /
                   ((1.0 + beta + 2.0 * r) * (1.0 + beta + 2.0 * r));
        }
        case ExpansionRegime::MidScale:
            if (!(lambda >= 0.5 * pivot) || !(lambda <= 2.0 * pivot))
                throw std::domain_error("A_expansion: MidScale needs lambda near delta^(1/2-eps)");
            break;
        case ExpansionRegime::OuterScale:
            if (!(lambda >= pivot) || !(lambda <= 0.5))
                throw std::domain_error(
                    "A_expansion: OuterScale needs delta^(1/2-eps) <= lambda <= 1/2");
            break;
    }
    return 0.25 + std::numbers::pi * std::numbers::pi * lambda * lambda / 16.0;
}

struct MonotoneReport {
    bool monotone = true;
    double first_violation_phi = std::numeric_limits<double>::quiet_NaN();
    int violations = 0;
};

/// Grid scan for monotone decrease of A on (-varrho*, 1). Checks both the
/// sign of A' and consecutive differences on an n_grid mesh. Reports
/// violations instead of throwing.
inline MonotoneReport check_monotone(double alpha, double beta, int n_grid,
                                     double delta_max = 0.5) {
    const auto c = detail::make_ctx(alpha, beta);
    if (c.delta > delta_max)
        throw std::domain_error("check_monotone: delta above configured threshold");
    MonotoneReport rep;
    const double margin = 1e-9;
    const double lo = -c.varrho + margin;
    const double hi = 1.0 - margin;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_grid; ++k) {
        const double phi = lo + (hi - lo) * static_cast<double>(k) / (n_grid - 1);
        const auto f = detail::factors(c, phi);
        const double val = detail::A_value(c, f);
        const double deriv = val * detail::kHalfPi * detail::dlogA_bracket(c, f);
        const bool bad_diff = !(val <= prev * (1.0 + 1e-12) + 1e-300);
        const bool bad_sign = deriv > 1e-12 * std::max(1.0, val);
        if (bad_diff || bad_sign) {
            ++rep.violations;
            if (rep.monotone) {
                rep.monotone = false;
                rep.first_violation_phi = phi;
            }
        }
        prev = val;
    }
    return rep;
}

}  // namespace stableinfo::integrand
