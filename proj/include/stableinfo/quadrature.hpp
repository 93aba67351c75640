#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

namespace stableinfo::quad {

enum class EndpointTransform { None, AlgebraicSingularity, DoubleExponential };

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    EndpointTransform endpoint_transform = EndpointTransform::None;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long n_evals = 0;
    bool converged = false;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK qk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

// One Gauss-Kronrod pass over [a,b] with the QUADPACK error heuristic.
template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    const double fc = f(c);
    double k = fc * kWgk[7];
    double g = fc * kWg[3];
    double resabs = std::fabs(fc) * kWgk[7];
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        k += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) g += kWg[i / 2] * (f1 + f2);
        resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
    }
    const double mean = 0.5 * k;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[2 * i] - mean) + std::fabs(fv[2 * i + 1] - mean));

    const double ah = std::fabs(h);
    const double value = k * h;
    resabs *= ah;
    resasc *= ah;
    double err = std::fabs((k - g) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    return {value, err};
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration over the union of the intervals
/// [pts[0],pts[1]], ..., [pts[n-2],pts[n-1]]. The initial subdivision is the
/// given break sequence; the worst panel is bisected until the summed error
/// estimate meets max(abs_tol, rel_tol*|value|) or the subdivision budget is
/// exhausted.
template <class F>
QuadResult integrate_segmented(F&& f, const std::vector<double>& pts, const QuadConfig& cfg = {}) {
    QuadResult r;
    if (pts.size() < 2) return r;
    std::priority_queue<detail::Segment> heap;
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i] < pts[i + 1])) continue;
        auto e = detail::gk15(f, pts[i], pts[i + 1]);
        r.n_evals += 15;
        heap.push({pts[i], pts[i + 1], e.value, e.error});
        total += e.value;
        err += e.error;
    }
    int splits = 0;
    double floor_err = 0.0;  // error stuck at roundoff-limited panels
    while (!heap.empty() && err > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)) &&
           splits < cfg.max_subdivisions) {
        detail::Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(s.a < m && m < s.b)) {  // interval no longer splittable
            err -= s.error;
            floor_err += s.error;
            continue;
        }
        auto e1 = detail::gk15(f, s.a, m);
        auto e2 = detail::gk15(f, m, s.b);
        r.n_evals += 30;
        total += e1.value + e2.value - s.value;
        err += e1.error + e2.error - s.error;
        heap.push({s.a, m, e1.value, e1.error});
        heap.push({m, s.b, e2.value, e2.error});
        ++splits;
    }
    r.value = total;
    r.abs_error = std::max(err, 0.0) + floor_err;
    r.converged = r.abs_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
    return r;
}

namespace detail {

// Tanh-sinh (double-exponential) rule on [a,b]. Nodes cluster doubly
// exponentially at the endpoints, so integrable endpoint singularities
// converge at a super-algebraic rate. Levels are nested trapezoid
// refinements; the error estimate is the last refinement difference.
//
// Integrands may take either f(x) or f(x, xc), where xc is the distance to
// the nearer endpoint computed without cancellation: xc = b - x > 0 on the
// upper half of the rule, xc = -(x - a) < 0 on the lower half. Singular
// integrands should use the two-argument form; with f(x) alone, accuracy
// near an endpoint singularity is limited by the rounding of x itself.
template <class F>
QuadResult tanh_sinh(F&& f, double a, double b, const QuadConfig& cfg) {
    QuadResult r;
    const double half = 0.5 * (b - a);
    const double tmax = 3.9;
    const double pi2 = 1.5707963267948966;
    constexpr bool two_arg = std::is_invocable_v<F&, double, double>;

    auto eval = [&](double t, double& w) -> double {
        const double s = pi2 * std::sinh(t);
        const double ch = std::cosh(s);
        w = half * pi2 * std::cosh(t) / (ch * ch);
        if (w == 0.0 || !std::isfinite(w)) {
            w = 0.0;
            return 0.0;
        }
        // distance to the nearer endpoint, computed without cancellation
        const double d = half * std::exp(-std::fabs(s)) / ch;  // = half*(1 - |tanh(s)|)
        const double x = (t >= 0.0) ? b - d : a + d;
        double v;
        if constexpr (two_arg) {
            v = f(x, (t >= 0.0) ? d : -d);
        } else {
            if (x <= a || x >= b) {  // node rounded onto the endpoint
                w = 0.0;
                return 0.0;
            }
            v = f(x);
        }
        return std::isfinite(v) ? v : 0.0;
    };

    double w0, w1, w2;
    double sum = eval(0.0, w0) * w0;
    sum += eval(tmax, w1) * w1 + eval(-tmax, w2) * w2;
    r.n_evals = 3;
    double h = tmax;
    double prev = sum * h;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t < tmax; t += 2.0 * h) {  // odd multiples of h are new
            double wa, wb;
            add += eval(t, wa) * wa + eval(-t, wb) * wb;
            r.n_evals += 2;
        }
        sum += add;
        const double cur = sum * h;
        const double diff = std::fabs(cur - prev);
        prev = cur;
        r.abs_error = diff;
        if (level >= 4 && diff <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(cur))) {
            r.value = cur;
            r.converged = true;
            return r;
        }
    }
    r.value = prev;
    r.converged = r.abs_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(prev));
    return r;
}

}  // namespace detail

/// Adaptive integration of f over [a,b].
/// EndpointTransform::AlgebraicSingularity substitutes x = a + (m-a)u^2 /
/// x = b - (b-m)u^2 about the midpoint, which regularizes power singularities
/// x^g with g > -1 at either endpoint. EndpointTransform::DoubleExponential
/// applies the tanh-sinh rule.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    // adapt two-argument (x, distance-to-endpoint) integrands for the
    // non-tanh-sinh paths
    auto f1 = [&](double x) {
        if constexpr (std::is_invocable_v<F&, double, double>) {
            const double dr = b - x, dl = x - a;
            return (dr <= dl) ? f(x, dr) : f(x, -dl);
        } else {
            return f(x);
        }
    };
    switch (cfg.endpoint_transform) {
        case EndpointTransform::None:
            return integrate_segmented(f1, {a, b}, cfg);
        case EndpointTransform::DoubleExponential:
            return detail::tanh_sinh(f, a, b, cfg);
        case EndpointTransform::AlgebraicSingularity: {
            const double m = 0.5 * (a + b);
            QuadConfig sub = cfg;
            sub.abs_tol = 0.5 * cfg.abs_tol;
            sub.endpoint_transform = EndpointTransform::None;
            const double ca = m - a, cb = b - m;
            auto left = integrate_segmented(
                [&](double u) { return f1(a + ca * u * u) * 2.0 * ca * u; }, {0.0, 1.0}, sub);
            auto right = integrate_segmented(
                [&](double u) { return f1(b - cb * u * u) * 2.0 * cb * u; }, {0.0, 1.0}, sub);
            QuadResult r;
            r.value = left.value + right.value;
            r.abs_error = left.abs_error + right.abs_error;
            r.n_evals = left.n_evals + right.n_evals;
            r.converged = left.converged && right.converged;
            return r;
        }
    }
    return {};
}

struct DecayHint {
    enum Kind { Exponential, PowerLaw } kind = Exponential;
    double exponent = 2.0;  // PowerLaw only: |f| ~ t^-exponent, exponent > 1

    static DecayHint exponential() { return {Exponential, 0.0}; }
    static DecayHint power_law(double p) { return {PowerLaw, p}; }
};

/// Integral of f over [a, inf). Exponential decay is handled by the rational
/// map t = a + u/(1-u); power-law decay t^-p by the substitution
/// u = (a/t)^(p-1), which makes the pure power law a constant integrand.
/// Power-law evaluation is truncated at t = 1e12; the truncation remainder is
/// bounded from the last probed value and added to abs_error.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, DecayHint decay, const QuadConfig& cfg = {}) {
    if (decay.kind == DecayHint::Exponential) {
        auto g = [&](double u) {
            const double om = 1.0 - u;
            const double t = a + u / om;
            const double v = f(t);
            return std::isfinite(v) ? v / (om * om) : 0.0;
        };
        return integrate_segmented(g, {0.0, 0.5, 0.8, 0.95, 0.99, 1.0}, cfg);
    }
    const double p = decay.exponent;
    if (!(p > 1.0)) {
        QuadResult r;
        r.converged = false;
        return r;
    }
    const double a0 = (a > 0.0) ? a : 1.0;  // map needs a positive anchor
    QuadResult head;                        // [a, a0] when a <= 0
    if (a < a0) head = integrate_segmented(f, {a, a0}, cfg);
    const double tcap = 1e12;
    const double ucap = std::pow(a0 / tcap, p - 1.0);
    auto g = [&](double u) {
        const double t = a0 * std::pow(u, -1.0 / (p - 1.0));
        const double v = f(t);
        return std::isfinite(v) ? v * (a0 / (p - 1.0)) * std::pow(u, -p / (p - 1.0)) : 0.0;
    };
    QuadResult r = integrate_segmented(g, {ucap, 0.01, 0.1, 0.5, 1.0}, cfg);
    // remainder beyond tcap, assuming |f| <= C t^-p calibrated at tcap
    const double ftail = std::fabs(f(tcap));
    r.abs_error += ftail * tcap / (p - 1.0);
    r.n_evals += 1 + head.n_evals;
    r.value += head.value;
    r.abs_error += head.abs_error;
    r.converged = r.converged && (a >= a0 || head.converged);
    return r;
}

/// Richardson-extrapolated central difference, O(h^4).
template <class F>
double fd_derivative(F&& f, double x, double h = 1e-5) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

/// Richardson-extrapolated central second difference, O(h^4).
template <class F>
double fd_second_derivative(F&& f, double x, double h = 1e-5) {
    const double fc = f(x);
    const double s1 = (f(x + h) - 2.0 * fc + f(x - h)) / (h * h);
    const double s2 = (f(x + 0.5 * h) - 2.0 * fc + f(x - 0.5 * h)) / (0.25 * h * h);
    return (4.0 * s2 - s1) / 3.0;
}

}  // namespace stableinfo::quad
