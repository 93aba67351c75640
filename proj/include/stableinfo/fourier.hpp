#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "params.hpp"
#include "quadrature.hpp"
#include "result_types.hpp"

namespace stableinfo::fourier {

using quad::QuadConfig;

/// Characteristic function in the (M) parameterization at (mu, sigma) = (0, 1):
///   Phi(t) = exp(-|t|^alpha { 1 + i beta sgn(t) tan(pi alpha/2) (|t|^(1-alpha) - 1) }).
/// |Phi(t)| = exp(-|t|^alpha) for every beta. At alpha = 2 the phase vanishes.
inline std::complex<double> cf(double t, double alpha, double beta) {
    validate(alpha, beta);
    const double at = std::fabs(t);
    if (at == 0.0) return {1.0, 0.0};
    const double mod = std::exp(-std::pow(at, alpha));
    if (alpha == 2.0) return {mod, 0.0};
    const double b = beta * std::tan(std::numbers::pi * alpha / 2.0);
    // exponent: -|t|^a + i sgn(t) b (|t|^a - |t|)
    const double phase = (t > 0.0 ? 1.0 : -1.0) * b * (std::pow(at, alpha) - at);
    return std::polar(mod, phase);
}

struct CharacteristicEvaluation {
    double t = 0.0;
    std::complex<double> value = {1.0, 0.0};
    double decay_envelope = 1.0;  // exp(-|t|^alpha)
};

inline CharacteristicEvaluation cf_eval(double t, double alpha, double beta) {
    CharacteristicEvaluation e;
    e.t = t;
    e.value = cf(t, alpha, beta);
    e.decay_envelope = std::exp(-std::pow(std::fabs(t), alpha));
    return e;
}

namespace detail {

inline QuadConfig default_cfg() {
    QuadConfig c;
    c.abs_tol = 1e-12;
    c.rel_tol = 1e-10;
    c.max_subdivisions = 4000;
    return c;
}

enum class Kernel { Density, SpatialDeriv, DAlpha, DBeta };

// Real-axis inversion context for fixed (alpha, beta). With y = x - zeta and
// b = beta tan(pi alpha/2) = -zeta, the half-line inversion integrals are
//   f      = (1/pi) int_0^inf e^(-t^a) cos(theta) dt,  theta = b t^a - t y
//   f'     = (1/pi) int_0^inf e^(-t^a) t sin(theta) dt
//   f_a    = (1/pi) int_0^inf e^(-t^a) [ -t^a ln t cos(theta)
//              - (b'(t^a - t) + b t^a ln t) sin(theta) ] dt
//   f_b    = (1/pi) int_0^inf e^(-t^a) [ -tan(pi a/2)(t^a - t) sin(theta) ] dt
// (differentiation of log Phi under the integral, holding x fixed).
struct InvCtx {
    double alpha, beta;
    double zeta, b, bprime, tan_half;

    explicit InvCtx(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
        const DerivedQuantities d = derive(alpha_, beta_);
        zeta = d.zeta;
        b = -d.zeta;
        const double c = std::cos(std::numbers::pi * alpha_ / 2.0);
        bprime = beta_ * (std::numbers::pi / 2.0) / (c * c);
        tan_half = (alpha_ == 2.0) ? 0.0 : std::tan(std::numbers::pi * alpha_ / 2.0);
    }

    double theta(double t, double y) const { return b * std::pow(t, alpha) - t * y; }
    double theta_deriv(double t, double y) const {
        return b * alpha * std::pow(t, alpha - 1.0) - y;
    }

    double eval(Kernel k, double t, double y) const {
        if (t <= 0.0) return 0.0;
        const double ta = std::pow(t, alpha);
        const double env = std::exp(-ta);
        if (env == 0.0) return 0.0;
        const double th = b * ta - t * y;
        switch (k) {
            case Kernel::Density:
                return env * std::cos(th);
            case Kernel::SpatialDeriv:
                return env * t * std::sin(th);
            case Kernel::DAlpha: {
                const double lt = std::log(t);
                return env * (-ta * lt * std::cos(th) - (bprime * (ta - t) + b * ta * lt) * std::sin(th));
            }
            case Kernel::DBeta:
                return env * (-tan_half * (ta - t) * std::sin(th));
        }
        return 0.0;
    }

    // growth of the non-oscillatory factor, for truncation bounds
    double factor_bound(Kernel k, double t) const {
        const double ta = std::pow(t, alpha);
        switch (k) {
            case Kernel::Density: return 1.0;
            case Kernel::SpatialDeriv: return t;
            case Kernel::DAlpha:
                return ta * std::fabs(std::log(t)) * (1.0 + std::fabs(b)) +
                       std::fabs(bprime) * (ta + t);
            case Kernel::DBeta: return std::fabs(tan_half) * (ta + t);
        }
        return 1.0;
    }
};

struct InvResult {
    double value = 0.0;
    double abs_error = 0.0;
    long n_evals = 0;
    bool converged = false;
};

// Half-line integral of an inversion kernel. For slow oscillation the
// adaptive engine works on [0, T*] directly; for |y| > 10 the range is cut at
// the zeros of the trigonometric factor (theta crossing multiples of pi,
// located by Newton steps off a linear prediction), each arc is integrated
// with a single Gauss-Kronrod pass, and the arc sums are Aitken-accelerated.
inline InvResult invert(const InvCtx& c, Kernel k, double y, const QuadConfig& cfg) {
    InvResult r;
    const double tol_floor = std::clamp(cfg.abs_tol, 1e-14, 1e-6);
    const double big_l = -std::log(1e-16 * tol_floor);
    const double tstar = std::pow(big_l, 1.0 / c.alpha);
    // truncation remainder: int_T^inf e^(-t^a) dt <= e^(-T^a) / (a T^(a-1))
    const double trunc = std::exp(-big_l) / (c.alpha * std::pow(tstar, c.alpha - 1.0)) *
                         std::max(1.0, c.factor_bound(k, tstar));

    // Zero-splitting needs theta monotone in t, i.e. |y| above the largest
    // phase-modulation slope |b| alpha t^(alpha-1); below that, plain
    // adaptive subdivision resolves the oscillation.
    const double y_osc = std::max(
        10.0, 2.0 * std::fabs(c.b) * c.alpha * std::pow(tstar, c.alpha - 1.0));
    if (std::fabs(y) <= y_osc) {
        std::vector<double> pts{0.0};
        for (double t = 0.5; t < tstar; t *= 2.0) pts.push_back(t);
        pts.push_back(tstar);
        auto q = quad::integrate_segmented([&](double t) { return c.eval(k, t, y); }, pts, cfg);
        r.value = q.value;
        r.abs_error = q.abs_error + trunc;
        r.n_evals = q.n_evals;
        r.converged = q.converged;
        return r;
    }

    const double dir = (y > 0.0) ? -1.0 : 1.0;  // theta is monotone with sign -sgn(y)
    double prev_t = 0.0;
    double sum = 0.0, err = 0.0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;  // last three partial sums
    long segs = 0;
    const long max_segs = 400000;
    const double quit = 1e-3 * std::max(cfg.abs_tol, 1e-15);
    bool tail_bounded = false;
    for (long kseg = 1; segs < max_segs; ++kseg) {
        const double target = dir * std::numbers::pi * static_cast<double>(kseg);
        const double guess =
            prev_t + std::numbers::pi / std::fabs(c.theta_deriv(std::max(prev_t, 1e-8), y));
        double t = guess;
        for (int it = 0; it < 3; ++it) {
            const double dth = c.theta_deriv(t, y);
            if (dth == 0.0) break;
            t -= (c.theta(t, y) - target) / dth;
        }
        const double lo = prev_t + 0.25 * std::numbers::pi / std::fabs(y);
        const double hi = prev_t + 4.0 * std::numbers::pi / std::fabs(y);
        if (!(t >= lo && t <= hi)) t = std::min(std::max(guess, lo), hi);
        const bool last = !(t < tstar);
        if (last) t = tstar;
        auto e = quad::detail::gk15([&](double u) { return c.eval(k, u, y); }, prev_t, t);
        r.n_evals += 15;
        sum += e.value;
        err += e.error;
        s1 = s2;
        s2 = s3;
        s3 = sum;
        prev_t = t;
        ++segs;
        if (last) break;
        const double env_rest = std::exp(-std::pow(t, c.alpha)) / (c.alpha * std::pow(t, c.alpha - 1.0)) *
                                std::max(1.0, c.factor_bound(k, tstar));
        if (std::fabs(e.value) < quit && env_rest < quit) {
            err += env_rest;
            tail_bounded = true;
            break;
        }
    }
    // Aitken step on the arc partial sums; arcs alternate in sign, so the
    // extrapolation tightens the truncated alternating series.
    double value = sum;
    if (segs >= 3) {
        const double d1 = s3 - s2, d0 = s2 - s1;
        const double den = d1 - d0;
        if (d1 * d0 < 0.0 && std::fabs(den) > 1e3 * std::numeric_limits<double>::epsilon() * std::fabs(s3)) {
            const double corr = -d1 * d1 / den;
            if (std::isfinite(corr) && std::fabs(corr) < std::fabs(d1)) {
                value = s3 + corr;
                err += std::fabs(corr);
            }
        }
    }
    r.value = value;
    r.abs_error = err + (tail_bounded ? 0.0 : trunc);
    r.converged = segs < max_segs;
    return r;
}

inline InvResult invert(double x, double alpha, double beta, Kernel k, const QuadConfig& cfg) {
    const InvCtx c(alpha, beta);
    return invert(c, k, x - c.zeta, cfg);
}

}  // namespace detail

/// Density by inversion of the characteristic function:
///   f(x) = (1/pi) Re int_0^inf e^(-itx) Phi(t) dt.
/// Serves as the reference backend near the mode and as the independent
/// cross-check for the integral-representation path everywhere else.
inline DensityResult density_fourier(double x, double alpha, double beta,
                                     const QuadConfig& cfg = detail::default_cfg()) {
    auto iv = detail::invert(x, alpha, beta, detail::Kernel::Density, cfg);
    DensityResult r;
    r.value = iv.value / std::numbers::pi;
    r.abs_error = iv.abs_error / std::numbers::pi;
    r.n_evals = iv.n_evals;
    r.method = Method::FourierFallback;
    r.converged = iv.converged;
    if (r.value < 0.0) {
        if (r.value < -(1e-12 + r.abs_error)) r.converged = false;
        r.value = 0.0;
    }
    return r;
}

/// Spatial derivative f'(x) by the differentiated inversion formula.
inline DensityResult density_deriv_fourier(double x, double alpha, double beta,
                                           const QuadConfig& cfg = detail::default_cfg()) {
    auto iv = detail::invert(x, alpha, beta, detail::Kernel::SpatialDeriv, cfg);
    DensityResult r;
    r.value = iv.value / std::numbers::pi;
    r.abs_error = iv.abs_error / std::numbers::pi;
    r.n_evals = iv.n_evals;
    r.method = Method::FourierFallback;
    r.converged = iv.converged;
    return r;
}

/// Exact parameter derivative f_alpha = d f / d alpha at fixed x, by
/// differentiation under the inversion integral. At alpha = 2 the derivative
/// is one-sided (alpha approaches 2 from below); the result is flagged.
inline DerivResult f_alpha(double x, double alpha, double beta,
                           const QuadConfig& cfg = detail::default_cfg()) {
    auto iv = detail::invert(x, alpha, beta, detail::Kernel::DAlpha, cfg);
    DerivResult r;
    r.value = iv.value / std::numbers::pi;
    r.abs_error = iv.abs_error / std::numbers::pi;
    r.n_evals = iv.n_evals;
    r.converged = iv.converged;
    r.one_sided = (alpha == 2.0);
    return r;
}

/// Exact parameter derivative f_beta = d f / d beta. Identically 0 at
/// alpha = 2, where the skewness phase vanishes.
inline DerivResult f_beta(double x, double alpha, double beta,
                          const QuadConfig& cfg = detail::default_cfg()) {
    DerivResult r;
    if (alpha == 2.0) {
        r.converged = true;
        return r;
    }
    auto iv = detail::invert(x, alpha, beta, detail::Kernel::DBeta, cfg);
    r.value = iv.value / std::numbers::pi;
    r.abs_error = iv.abs_error / std::numbers::pi;
    r.n_evals = iv.n_evals;
    r.converged = iv.converged;
    return r;
}

}  // namespace stableinfo::fourier
