#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "density.hpp"
#include "detail/parallel.hpp"
#include "fourier.hpp"
#include "params.hpp"
#include "quadrature.hpp"

namespace stableinfo::fisher {

using quad::QuadConfig;

/// Parameter ordering used everywhere: (mu, sigma, alpha, beta).
enum Par : int { kMu = 0, kSigma = 1, kAlpha = 2, kBeta = 3 };

inline const char* param_name(int i) {
    static const char* names[4] = {"mu", "sigma", "alpha", "beta"};
    return (i >= 0 && i < 4) ? names[i] : "?";
}

/// Score vector (d/dtheta log f)(x) at standard parameters:
///   s_mu = -f'/f, s_sigma = -1 - x f'/f, s_alpha = f_alpha/f, s_beta = f_beta/f.
struct ScoreVector {
    double s_mu = 0.0;
    double s_sigma = 0.0;
    double s_alpha = 0.0;
    double s_beta = 0.0;

    double operator[](int i) const {
        switch (i) {
            case kMu: return s_mu;
            case kSigma: return s_sigma;
            case kAlpha: return s_alpha;
            default: return s_beta;
        }
    }
};

inline ScoreVector score_vector(double x, double alpha, double beta,
                                const QuadConfig& cfg = density::detail::default_cfg()) {
    const auto pair = density::density_pair_std(x, alpha, beta, cfg);
    const double f = pair.f.value;
    if (!(f > 1e-300)) throw std::underflow_error("score_vector: density underflow");
    ScoreVector s;
    s.s_mu = -pair.fprime.value / f;
    s.s_sigma = -1.0 - x * pair.fprime.value / f;
    s.s_alpha = fourier::f_alpha(x, alpha, beta, cfg).value / f;
    s.s_beta = fourier::f_beta(x, alpha, beta, cfg).value / f;
    return s;
}

enum class Provenance { Quadrature, Asymptotic, TableLimit };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Quadrature: return "quadrature";
        case Provenance::Asymptotic: return "asymptotic";
        case Provenance::TableLimit: return "table-limit";
    }
    return "?";
}

/// Symmetric 4x4 information matrix with per-entry provenance. Entries the
/// asymptotic theory pins down only as o(.)/O(.) orders are reported as 0
/// with the order recorded in order_note.
struct FisherMatrix {
    std::array<std::array<double, 4>, 4> entries{};
    std::array<std::array<double, 4>, 4> abs_error{};
    std::array<std::array<Provenance, 4>, 4> provenance{};
    std::array<std::array<const char*, 4>, 4> order_note{};

    FisherMatrix() {
        for (auto& row : order_note)
            for (auto& c : row) c = "";
    }
};

/// Cut points for the x-integration of information entries, applied on each
/// side of zeta: numeric segments over [0,T), [T,x1), [x1,x2), [x2,x3) and an
/// analytic power-law tail on [x3, inf). x1/x2 are the regime boundaries,
/// x3 = exp(delta^(-1/2)) capped at 1e12. At accessible delta the ordering
/// T < x1 < x2 < x3 usually fails (the boundaries grow only like
/// sqrt(log 1/delta)); the plan is then flagged degenerate and the entry
/// integrator simply drops the out-of-order cuts.
struct IntervalPlan {
    double T = 5.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
    double delta_knob = 0.5;
    bool degenerate = false;
};

inline IntervalPlan make_interval_plan(double alpha, double T = 5.0, double delta_knob = 0.5) {
    validate(alpha, 0.0);
    const double delta = 2.0 - alpha;
    if (!(delta > 0.0)) throw std::domain_error("make_interval_plan: needs alpha < 2");
    IntervalPlan p;
    p.T = T;
    p.delta_knob = delta_knob;
    const double root = std::sqrt(std::log(1.0 / delta));
    p.x1 = (2.0 - delta_knob) * root;
    p.x2 = (2.0 + delta_knob) * root;
    p.x3 = std::min(std::exp(1.0 / std::sqrt(delta)), 1e12);
    p.degenerate = !(T < p.x1 && p.x1 < p.x2 && p.x2 < p.x3);
    if (p.x3 < T) p.x3 = T;  // tail handling still needs a cut beyond T
    return p;
}

namespace detail {

// int_X^inf u^(-q-1) (1 + d ln u)^m du for q > 0, by parts.
inline double tail_moment(double q, int m, double X, double d) {
    const double w = 1.0 + d * std::log(X);
    double r = std::pow(X, -q) / q;
    if (m == 0) return r;
    if (m == 1) return std::pow(X, -q) * w / q + (d / q) * tail_moment(q, 0, X, d);
    return std::pow(X, -q) * w * w / q + (2.0 * d / q) * tail_moment(q, 1, X, d);
}

// One-sided [X, inf) contribution to the (i,j) information entry from the
// power-tail forms: with b = 1 + beta*s and w = 1 + delta ln u,
//   f ~ delta b u^(delta-3),  s_mu ~ 3s/u,  s_sigma ~ 2 + 3 zeta s/u,
//   s_alpha ~ -w/delta,       s_beta ~ s/b.
inline double tail_entry_one_side(int i, int j, double alpha, double beta, double s, double X) {
    const double d = 2.0 - alpha;
    const double z = derive(alpha, beta).zeta;
    const double b = 1.0 + beta * s;
    const double q2 = 2.0 - d, q3 = 3.0 - d, q4 = 4.0 - d;
    const int a = std::min(i, j), c = std::max(i, j);
    if (a == kMu && c == kMu) return 9.0 * d * b * tail_moment(q4, 0, X, d);
    if (a == kMu && c == kSigma)
        return d * b * (6.0 * s * tail_moment(q3, 0, X, d) + 9.0 * z * tail_moment(q4, 0, X, d));
    if (a == kMu && c == kAlpha) return -3.0 * s * b * tail_moment(q3, 1, X, d);
    if (a == kMu && c == kBeta) return 3.0 * d * tail_moment(q3, 0, X, d);
    if (a == kSigma && c == kSigma)
        return d * b *
               (4.0 * tail_moment(q2, 0, X, d) + 12.0 * z * s * tail_moment(q3, 0, X, d) +
                9.0 * z * z * tail_moment(q4, 0, X, d));
    if (a == kSigma && c == kAlpha)
        return -b * (2.0 * tail_moment(q2, 1, X, d) + 3.0 * z * s * tail_moment(q3, 1, X, d));
    if (a == kSigma && c == kBeta)
        return d * (2.0 * s * tail_moment(q2, 0, X, d) + 3.0 * z * tail_moment(q3, 0, X, d));
    if (a == kAlpha && c == kAlpha) return (b / d) * tail_moment(q2, 2, X, d);
    if (a == kAlpha && c == kBeta) return -s * tail_moment(q2, 1, X, d);
    return (d / b) * tail_moment(q2, 0, X, d);  // (beta, beta)
}

struct Needs {
    bool fprime = false, falpha = false, fbeta = false;
};

inline Needs needs_for(int i, int j) {
    Needs n;
    for (int k : {i, j}) {
        if (k == kMu || k == kSigma) n.fprime = true;
        if (k == kAlpha) n.falpha = true;
        if (k == kBeta) n.fbeta = true;
    }
    return n;
}

// s_i s_j f at x = zeta + side*u, computing only the required derivative
// integrals.
inline double entry_integrand(int i, int j, double alpha, double beta, double zeta, double side,
                              double u, const Needs& nd, const QuadConfig& cfg, long& evals) {
    const double x = zeta + side * u;
    double f, fp = 0.0;
    if (nd.fprime) {
        const auto pr = density::density_pair_std(x, alpha, beta, cfg);
        f = pr.f.value;
        fp = pr.fprime.value;
        evals += pr.f.n_evals + pr.fprime.n_evals;
    } else {
        const auto fr = density::density_std(x, alpha, beta, cfg);
        f = fr.value;
        evals += fr.n_evals;
    }
    if (!(f > 1e-300)) return 0.0;  // excluded; the analytic tail covers far points
    double comp[4] = {0, 0, 0, 0};
    comp[kMu] = -fp / f;
    comp[kSigma] = -1.0 - x * fp / f;
    if (nd.falpha) {
        const auto fa = fourier::f_alpha(x, alpha, beta, cfg);
        comp[kAlpha] = fa.value / f;
        evals += fa.n_evals;
    }
    if (nd.fbeta) {
        const auto fb = fourier::f_beta(x, alpha, beta, cfg);
        comp[kBeta] = fb.value / f;
        evals += fb.n_evals;
    }
    return comp[i] * comp[j] * f;
}

inline QuadConfig inner_cfg() {
    QuadConfig c;
    c.abs_tol = 1e-12;
    c.rel_tol = 1e-8;
    c.max_subdivisions = 2000;
    return c;
}

}  // namespace detail

struct EntryResult {
    double value = 0.0;
    double abs_error = 0.0;
    long n_evals = 0;
    bool converged = false;
};

/// The exact parameter-derivative integrands cost O(|x|) function
/// evaluations on the real axis, so the numeric segments stop here even when
/// the plan's x3 lies further out; the closed-form tail picks up from the
/// cut. Beyond this radius the closed form is accurate to ~1/x relative on a
/// contribution that is itself below 1e-6 of any entry.
inline constexpr double kNumericTailCut = 5e3;

/// One information entry I_ij = int s_i s_j f dx, integrated over both
/// half-lines around zeta with the plan's segmentation. Segments extending
/// past u = 8 are integrated in log u. The [x3, inf) remainder uses the
/// closed-form power-tail approximation; half its magnitude is charged to
/// the error estimate.
inline EntryResult fisher_entry(int i, int j, double alpha, double beta, const IntervalPlan& plan,
                                const QuadConfig& entry_cfg = QuadConfig{1e-7, 1e-5, 600,
                                                                         quad::EndpointTransform::None}) {
    validate(alpha, beta);
    if (alpha == 2.0 && (i == kAlpha || j == kAlpha))
        throw std::domain_error("fisher_entry: alpha entries diverge at alpha = 2; "
                                "use fisher_asymptotic or table1_limits");
    if (i < 0 || i > 3 || j < 0 || j > 3) throw std::invalid_argument("fisher_entry: bad index");

    const double zeta = derive(alpha, beta).zeta;
    const auto nd = detail::needs_for(i, j);
    const QuadConfig icfg = detail::inner_cfg();
    const double x_cut = std::min(plan.x3, kNumericTailCut);

    // ascending in-range cut points
    std::vector<double> cand{plan.T, plan.x1, plan.x2};
    std::sort(cand.begin(), cand.end());
    std::vector<double> cuts{0.0};
    for (double c : cand)
        if (c > cuts.back() + 1e-9 && c < x_cut) cuts.push_back(c);
    cuts.push_back(x_cut);

    // one job per (side, segment); jobs run independently and are summed in
    // index order, so the result does not depend on scheduling
    struct Job {
        double side, a, b;
    };
    std::vector<Job> jobs;
    for (double side : {1.0, -1.0})
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) jobs.push_back({side, cuts[k], cuts[k + 1]});

    std::vector<quad::QuadResult> parts(jobs.size());
    std::vector<long> evals(jobs.size(), 0);
    stableinfo::detail::parallel_for(static_cast<int>(jobs.size()), [&](int idx) {
        const Job jb = jobs[idx];
        auto g = [&](double u) {
            return detail::entry_integrand(i, j, alpha, beta, zeta, jb.side, u, nd, icfg,
                                           evals[idx]);
        };
        QuadConfig scfg = entry_cfg;
        scfg.abs_tol = entry_cfg.abs_tol / static_cast<double>(cuts.size());
        if (jb.a >= 4.0 && jb.b > 2.0 * jb.a) {
            // long power-law segment: integrate in v = ln u
            parts[idx] = quad::integrate(
                [&](double v) { const double u = std::exp(v); return g(u) * u; },
                std::log(jb.a), std::log(jb.b), scfg);
        } else {
            parts[idx] = quad::integrate(g, jb.a, jb.b, scfg);
        }
    });

    EntryResult r;
    r.converged = true;
    for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
        r.value += parts[idx].value;
        r.abs_error += parts[idx].abs_error;
        r.converged = r.converged && parts[idx].converged;
        r.n_evals += evals[idx];
    }
    for (double side : {1.0, -1.0}) {
        const double tail = detail::tail_entry_one_side(i, j, alpha, beta, side, x_cut);
        r.value += tail;
        r.abs_error += 0.5 * std::fabs(tail);
    }
    return r;
}

/// All ten distinct entries, assembled symmetrically. Entries are computed
/// independently and may run concurrently (STABLE_INFO_THREADS caps the pool).
inline FisherMatrix fisher_matrix(double alpha, double beta, const IntervalPlan& plan,
                                  const QuadConfig& entry_cfg = QuadConfig{1e-7, 1e-5, 600,
                                                                           quad::EndpointTransform::None}) {
    static const std::array<std::pair<int, int>, 10> pairs = {{{0, 0},
                                                               {0, 1},
                                                               {0, 2},
                                                               {0, 3},
                                                               {1, 1},
                                                               {1, 2},
                                                               {1, 3},
                                                               {2, 2},
                                                               {2, 3},
                                                               {3, 3}}};
    std::array<EntryResult, 10> results;
    stableinfo::detail::parallel_for(10, [&](int k) {
        results[k] = fisher_entry(pairs[k].first, pairs[k].second, alpha, beta, plan, entry_cfg);
    });
    FisherMatrix m;
    for (int k = 0; k < 10; ++k) {
        const auto [i, j] = pairs[k];
        m.entries[i][j] = m.entries[j][i] = results[k].value;
        m.abs_error[i][j] = m.abs_error[j][i] = results[k].abs_error;
        m.provenance[i][j] = m.provenance[j][i] = Provenance::Quadrature;
    }
    return m;
}

/// Asymptotic information matrix as alpha -> 2:
///   I_mumu -> 1/2,  I_sigsig -> 2,
///   I_sigalpha ~ -(1/2) log log(1/delta),
///   I_alphaalpha ~ 1 / (4 delta log(1/delta)),
///   I_betabeta ~ delta / (4 (1-beta^2) log(1/delta)).
/// Entries known only to order are reported as 0 and tagged.
inline FisherMatrix fisher_asymptotic(double alpha, double beta) {
    validate(alpha, beta);
    const double delta = 2.0 - alpha;
    if (!(delta > 0.0) || !(delta < 1.0 / std::numbers::e))
        throw std::domain_error("fisher_asymptotic: needs delta in (0, 1/e)");
    const double L = std::log(1.0 / delta);
    FisherMatrix m;
    for (auto& row : m.provenance)
        for (auto& p : row) p = Provenance::Asymptotic;
    m.entries[kMu][kMu] = 0.5;
    m.entries[kSigma][kSigma] = 2.0;
    m.entries[kAlpha][kAlpha] = 1.0 / (4.0 * delta * L);
    m.entries[kSigma][kAlpha] = m.entries[kAlpha][kSigma] = -0.5 * std::log(L);
    m.entries[kBeta][kBeta] = delta / (4.0 * (1.0 - beta * beta) * L);
    m.order_note[kMu][kSigma] = m.order_note[kSigma][kMu] = "o(1)";
    m.order_note[kMu][kAlpha] = m.order_note[kAlpha][kMu] = "o(1)";
    m.order_note[kMu][kBeta] = m.order_note[kBeta][kMu] = "O(delta)";
    m.order_note[kSigma][kBeta] = m.order_note[kBeta][kSigma] = "o(delta log log 1/delta)";
    m.order_note[kAlpha][kBeta] = m.order_note[kBeta][kAlpha] = "o(1/log(1/delta))";
    return m;
}

/// Limits at alpha = 2: finite location/scale information, diverging
/// alpha-alpha and sigma-alpha entries, everything else 0.
inline FisherMatrix table1_limits() {
    FisherMatrix m;
    for (auto& row : m.provenance)
        for (auto& p : row) p = Provenance::TableLimit;
    const double inf = std::numeric_limits<double>::infinity();
    m.entries[kMu][kMu] = 0.5;
    m.entries[kSigma][kSigma] = 2.0;
    m.entries[kAlpha][kAlpha] = inf;
    m.entries[kSigma][kAlpha] = m.entries[kAlpha][kSigma] = -inf;
    return m;
}

}  // namespace stableinfo::fisher
