#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "detail/format.hpp"
#include "detail/parallel.hpp"
#include "fisher.hpp"
#include "fourier.hpp"
#include "params.hpp"

namespace stableinfo::oracle {

// Reference pipeline for tests and acceptance runs. Everything here is built
// from density_fourier, finite differences and trapezoid sums only, so it
// shares no code path with the integral-representation pipeline it checks.

struct OracleReport {
    std::string quantity;
    double main_value = 0.0;
    double oracle_value = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    bool pass = false;
};

inline OracleReport compare(const std::string& quantity, double main_value, double oracle_value,
                            double abs_tol, double rel_tol = 0.0) {
    OracleReport r;
    r.quantity = quantity;
    r.main_value = main_value;
    r.oracle_value = oracle_value;
    r.abs_diff = std::fabs(main_value - oracle_value);
    const double scale = std::max(std::fabs(main_value), std::fabs(oracle_value));
    r.rel_diff = (scale > 0.0) ? r.abs_diff / scale : 0.0;
    r.pass = r.abs_diff <= std::max(abs_tol, rel_tol * std::fabs(oracle_value));
    return r;
}

inline std::string to_json_line(const OracleReport& r) {
    using stableinfo::detail::g17;
    std::string s = "{\"quantity\":\"" + r.quantity + "\",\"main_value\":" + g17(r.main_value) +
                    ",\"oracle_value\":" + g17(r.oracle_value) + ",\"abs_diff\":" + g17(r.abs_diff) +
                    ",\"rel_diff\":" + g17(r.rel_diff) +
                    ",\"pass\":" + (r.pass ? "true" : "false") + "}";
    return s;
}

namespace detail {

inline double log_density(double x, double alpha, double beta, const quad::QuadConfig& cfg) {
    const double f = fourier::density_fourier(x, alpha, beta, cfg).value;
    if (!(f > 1e-300)) throw std::underflow_error("oracle: density underflow");
    return std::log(f);
}

// O(h^4) Richardson central difference of a callable.
template <class F>
double rich4(F&& g, double t0, double h) {
    const double d1 = (g(t0 + h) - g(t0 - h)) / (2.0 * h);
    const double d2 = (g(t0 + 0.5 * h) - g(t0 - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

inline quad::QuadConfig fd_cfg() {
    quad::QuadConfig c;
    c.abs_tol = 1e-13;
    c.rel_tol = 1e-11;
    c.max_subdivisions = 4000;
    return c;
}

struct ScoreMask {
    bool mu = false, sigma = false, alpha = false, beta = false;
};

// Finite-difference scores from log density_fourier alone. The mu and sigma
// derivatives are realized through the location-scale relation
// f(x; mu, sigma) = f((x-mu)/sigma)/sigma, i.e. by shifting and rescaling x.
inline fisher::ScoreVector score_fd_masked(double x, double alpha, double beta,
                                           const ScoreMask& m, double h) {
    const auto cfg = fd_cfg();
    auto L = [&](double xx, double a, double b) { return log_density(xx, a, b, cfg); };
    fisher::ScoreVector s;
    if (m.mu) s.s_mu = -rich4([&](double t) { return L(t, alpha, beta); }, x, h);
    if (m.sigma)
        s.s_sigma =
            rich4([&](double sg) { return -std::log(sg) + L(x / sg, alpha, beta); }, 1.0, h);
    if (m.alpha) {
        if (alpha == 2.0) {
            // boundary: one-sided O(h^2) stencil into alpha < 2
            s.s_alpha = (3.0 * L(x, 2.0, beta) - 4.0 * L(x, 2.0 - h, beta) + L(x, 2.0 - 2.0 * h, beta)) /
                        (2.0 * h);
        } else {
            const double hh = std::min(h, 0.5 * (2.0 - alpha));
            s.s_alpha = rich4([&](double a) { return L(x, a, beta); }, alpha, hh);
        }
    }
    if (m.beta) {
        if (std::fabs(beta) + h <= kBetaMax) {
            s.s_beta = rich4([&](double b) { return L(x, alpha, b); }, beta, h);
        } else {
            const double dir = (beta > 0.0) ? -1.0 : 1.0;  // step toward the interior
            s.s_beta = dir *
                       (3.0 * L(x, alpha, beta) - 4.0 * L(x, alpha, beta + dir * h) +
                        L(x, alpha, beta + 2.0 * dir * h)) /
                       (2.0 * h);
        }
    }
    return s;
}

}  // namespace detail

/// All four scores by Richardson finite differences of log density_fourier.
inline fisher::ScoreVector score_fd(double x, double alpha, double beta, double h = 1e-4) {
    return detail::score_fd_masked(x, alpha, beta, {true, true, true, true}, h);
}

/// Trapezoid-rule information entry over [zeta - x_max, zeta + x_max] on an
/// n-point grid (n >= 1000), with the closed-form power-tail remainder added
/// beyond the cut. Scores come from score_fd, the weight from
/// density_fourier.
inline double fisher_trapezoid(int i, int j, double alpha, double beta, double x_max, int n) {
    validate(alpha, beta);
    if (n < 1000) throw std::invalid_argument("fisher_trapezoid: n must be >= 1000");
    if (i < 0 || i > 3 || j < 0 || j > 3) throw std::invalid_argument("fisher_trapezoid: bad index");
    const double zeta = derive(alpha, beta).zeta;
    detail::ScoreMask m;
    for (int k : {i, j}) {
        if (k == fisher::kMu) m.mu = true;
        if (k == fisher::kSigma) m.sigma = true;
        if (k == fisher::kAlpha) m.alpha = true;
        if (k == fisher::kBeta) m.beta = true;
    }
    const double h = 2.0 * x_max / static_cast<double>(n - 1);
    std::vector<double> contrib(static_cast<std::size_t>(n));
    stableinfo::detail::parallel_for(n, [&](int k) {
        const double x = zeta - x_max + h * static_cast<double>(k);
        const double f = fourier::density_fourier(x, alpha, beta, detail::fd_cfg()).value;
        // below the inversion quadrature's noise floor the log-density
        // differences are meaningless; the closed-form tails carry that mass
        if (!(f > 1e-10)) {
            contrib[k] = 0.0;
            return;
        }
        const auto s = detail::score_fd_masked(x, alpha, beta, m, 1e-4);
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        contrib[k] = w * s[i] * s[j] * f;
    });
    double acc = 0.0;
    for (double c : contrib) acc += c;
    double v = acc * h;
    if (alpha < 2.0)
        for (double side : {1.0, -1.0})
            v += fisher::detail::tail_entry_one_side(i, j, alpha, beta, side, x_max);
    return v;
}

/// All ten distinct entries from one shared grid of finite-difference scores.
inline fisher::FisherMatrix fisher_trapezoid_all(double alpha, double beta, double x_max, int n) {
    validate(alpha, beta);
    if (n < 1000) throw std::invalid_argument("fisher_trapezoid_all: n must be >= 1000");
    const double zeta = derive(alpha, beta).zeta;
    const double h = 2.0 * x_max / static_cast<double>(n - 1);
    std::vector<std::array<double, 10>> contrib(static_cast<std::size_t>(n));
    static const std::array<std::pair<int, int>, 10> pairs = {
        {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};
    stableinfo::detail::parallel_for(n, [&](int k) {
        contrib[k].fill(0.0);
        const double x = zeta - x_max + h * static_cast<double>(k);
        const double f = fourier::density_fourier(x, alpha, beta, detail::fd_cfg()).value;
        if (!(f > 1e-10)) return;  // inversion noise floor, see above
        const auto s = detail::score_fd_masked(x, alpha, beta, {true, true, true, true}, 1e-4);
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        for (int p = 0; p < 10; ++p)
            contrib[k][p] = w * s[pairs[p].first] * s[pairs[p].second] * f;
    });
    fisher::FisherMatrix mat;
    for (int p = 0; p < 10; ++p) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += contrib[k][p];
        double v = acc * h;
        if (alpha < 2.0)
            for (double side : {1.0, -1.0})
                v += fisher::detail::tail_entry_one_side(pairs[p].first, pairs[p].second, alpha,
                                                         beta, side, x_max);
        const auto [i, j] = pairs[p];
        mat.entries[i][j] = mat.entries[j][i] = v;
        mat.provenance[i][j] = mat.provenance[j][i] = fisher::Provenance::Quadrature;
    }
    return mat;
}

struct ClosedForm {
    std::string id;
    double value;
};

/// Registry of exact reference values used by the verify command and the
/// acceptance suite.
inline std::vector<ClosedForm> closed_forms() {
    const double pi = std::numbers::pi;
    std::vector<ClosedForm> v;
    v.push_back({"density_at_mode_alpha_1.5", std::tgamma(1.0 + 1.0 / 1.5) / pi});
    v.push_back({"density_at_mode_alpha_1.8", std::tgamma(1.0 + 1.0 / 1.8) / pi});
    v.push_back({"density_at_mode_alpha_2.0", std::tgamma(1.5) / pi});
    v.push_back({"gaussian_density_0", 1.0 / (2.0 * std::sqrt(pi))});
    v.push_back({"gaussian_density_1", std::exp(-0.25) / (2.0 * std::sqrt(pi))});
    v.push_back({"gaussian_density_2", std::exp(-1.0) / (2.0 * std::sqrt(pi))});
    v.push_back({"gaussian_density_deriv_1", -std::exp(-0.25) / (4.0 * std::sqrt(pi))});
    v.push_back({"zeta_1.5_0.5", 0.5});  // tan(3 pi/4) = -1
    v.push_back({"zeta_1.9_0.5", -0.5 * std::tan(0.95 * pi)});
    v.push_back({"varrho_1.9_0.5", (2.0 / (1.9 * pi)) * std::atan(0.5 * std::tan(0.95 * pi))});
    return v;
}

}  // namespace stableinfo::oracle
