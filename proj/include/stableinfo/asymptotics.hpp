#pragma once

#include <cmath>
#include <stdexcept>

#include "density.hpp"
#include "params.hpp"

namespace stableinfo::asymptotics {

// Closed-form approximants of the density, its derivative and the location /
// scale scores as alpha -> 2: a Gaussian N(0,2) core plus a power tail
//   core(x) = f(x - zeta; 2)
//   tail(x) = (1 + beta*) delta |x - zeta|^(delta - 3),   beta* = beta sgn(x - zeta)
// The core dominates for |x - zeta| below ~2 sqrt(log 1/delta), the tail
// above it; their sum approximates f uniformly for large |x| and small delta.

inline double beta_star(double y, double beta) { return (y >= 0.0) ? beta : -beta; }

inline double gaussian_core_term(double x, double alpha, double beta) {
    const auto d = derive(alpha, beta);
    return density::gaussian_density(x - d.zeta);
}

inline double power_tail_term(double x, double alpha, double beta) {
    const auto d = derive(alpha, beta);
    const double y = x - d.zeta;
    if (y == 0.0) throw std::domain_error("power_tail_term: x == zeta");
    return (1.0 + beta_star(y, beta)) * d.delta * std::pow(std::fabs(y), d.delta - 3.0);
}

inline double gaussian_core_deriv(double x, double alpha, double beta) {
    const auto d = derive(alpha, beta);
    const double y = x - d.zeta;
    return -0.5 * y * density::gaussian_density(y);
}

inline double power_tail_deriv(double x, double alpha, double beta) {
    const auto d = derive(alpha, beta);
    const double y = x - d.zeta;
    if (y == 0.0) throw std::domain_error("power_tail_deriv: x == zeta");
    const double sgn = (y > 0.0) ? 1.0 : -1.0;
    return -3.0 * (1.0 + beta_star(y, beta)) * d.delta * std::pow(std::fabs(y), d.delta - 4.0) * sgn;
}

/// g = core + tail.
inline double density_approx(double x, double alpha, double beta) {
    return gaussian_core_term(x, alpha, beta) + power_tail_term(x, alpha, beta);
}

/// g' = core' + tail'.
inline double density_deriv_approx(double x, double alpha, double beta) {
    return gaussian_core_deriv(x, alpha, beta) + power_tail_deriv(x, alpha, beta);
}

enum class RegimeKind { Core, Crossover, Tail };

inline const char* regime_name(RegimeKind k) {
    switch (k) {
        case RegimeKind::Core: return "core";
        case RegimeKind::Crossover: return "crossover";
        case RegimeKind::Tail: return "tail";
    }
    return "?";
}

struct Regime {
    RegimeKind kind = RegimeKind::Core;
    double boundary_low = 0.0;   // (2 - delta_knob) sqrt(log 1/delta)
    double boundary_high = 0.0;  // (2 + delta_knob) sqrt(log 1/delta)
    double delta_knob = 0.5;
};

/// Classify |x - zeta| against the core/tail crossover radii
/// (2 -+ delta_knob) sqrt(log 1/delta). Both radii grow without bound as
/// alpha -> 2.
inline Regime classify(double x, double alpha, double beta, double delta_knob = 0.5) {
    if (!(delta_knob > 0.0) || !(delta_knob < 1.0))
        throw std::domain_error("classify: delta_knob outside (0,1)");
    const auto d = derive(alpha, beta);
    Regime r;
    r.delta_knob = delta_knob;
    const double root = std::sqrt(std::log(1.0 / d.delta));
    r.boundary_low = (2.0 - delta_knob) * root;
    r.boundary_high = (2.0 + delta_knob) * root;
    const double ay = std::fabs(x - d.zeta);
    r.kind = (ay <= r.boundary_low)    ? RegimeKind::Core
             : (ay >= r.boundary_high) ? RegimeKind::Tail
                                       : RegimeKind::Crossover;
    return r;
}

/// Score approximant -g'/g for the location parameter.
inline double score_mu_approx(double x, double alpha, double beta) {
    return -density_deriv_approx(x, alpha, beta) / density_approx(x, alpha, beta);
}

/// Score approximant -1 - (x - zeta) g'/g for the scale parameter.
inline double score_sigma_approx(double x, double alpha, double beta) {
    const auto d = derive(alpha, beta);
    const double g = density_approx(x, alpha, beta);
    const double gp = density_deriv_approx(x, alpha, beta);
    return -1.0 - (x - d.zeta) * gp / g;
}

// Limiting branch values of the score approximants in the two regimes,
// exposed separately so the branch structure itself can be tested.
inline double score_mu_core(double x, double alpha, double beta) {
    return 0.5 * (x - derive(alpha, beta).zeta);
}
inline double score_mu_tail(double x, double alpha, double beta) {
    return 3.0 / (x - derive(alpha, beta).zeta);
}
inline double score_sigma_core(double x, double alpha, double beta) {
    const double y = x - derive(alpha, beta).zeta;
    return 0.5 * y * y;
}
inline double score_sigma_tail(double, double, double) { return 2.0; }

/// Leading tail form of f_alpha: -(1 + beta*) |y|^-(1+alpha). Valid for
/// |y| >= y0; the next-order coefficients are not exposed (they are known
/// only up to unspecified constants).
inline double f_alpha_tail(double x, double alpha, double beta, double y0 = 5.0) {
    const auto d = derive(alpha, beta);
    const double y = x - d.zeta;
    if (!(std::fabs(y) >= y0)) throw std::domain_error("f_alpha_tail: |x - zeta| below y0");
    return -(1.0 + beta_star(y, beta)) * std::pow(std::fabs(y), -(1.0 + alpha));
}

/// Leading tail form of f_beta: delta sgn(y) |y|^-(1+alpha), |y| >= y0.
inline double f_beta_tail(double x, double alpha, double beta, double y0 = 5.0) {
    const auto d = derive(alpha, beta);
    const double y = x - d.zeta;
    if (!(std::fabs(y) >= y0)) throw std::domain_error("f_beta_tail: |x - zeta| below y0");
    const double sgn = (y > 0.0) ? 1.0 : -1.0;
    return d.delta * sgn * std::pow(std::fabs(y), -(1.0 + alpha));
}

}  // namespace stableinfo::asymptotics
