#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "stableinfo/fisher.hpp"
#include "stableinfo/oracle.hpp"
#include "support/matrix4.hpp"

using namespace stableinfo;
using fisher::kAlpha;
using fisher::kBeta;
using fisher::kMu;
using fisher::kSigma;

TEST_CASE("score vector at the Gaussian boundary") {
    const auto s = fisher::score_vector(1.0, 2.0, 0.0);
    CHECK(s.s_mu == Catch::Approx(0.5).margin(1e-12));
    CHECK(s.s_sigma == Catch::Approx(-0.5).margin(1e-12));
    CHECK(s.s_beta == 0.0);
    // s_beta vanishes at alpha = 2 for any x
    CHECK(fisher::score_vector(-2.7, 2.0, 0.4).s_beta == 0.0);
}

TEST_CASE("score vector matches the finite-difference oracle") {
    const auto s = fisher::score_vector(3.0, 1.8, 0.4);
    const auto o = oracle::score_fd(3.0, 1.8, 0.4);
    CHECK(std::fabs(s.s_mu - o.s_mu) <= 1e-5);
    CHECK(std::fabs(s.s_sigma - o.s_sigma) <= 1e-5);
    CHECK(std::fabs(s.s_alpha - o.s_alpha) <= 1e-5);
    CHECK(std::fabs(s.s_beta - o.s_beta) <= 1e-5);
}

TEST_CASE("interval plan cut points") {
    auto p = fisher::make_interval_plan(1.96);  // delta = 0.04
    CHECK(p.x1 == Catch::Approx(2.6912).epsilon(2e-4));
    CHECK(p.x2 == Catch::Approx(4.4853).epsilon(2e-4));
    CHECK(p.x3 == Catch::Approx(std::exp(5.0)).epsilon(1e-12));
    CHECK(p.degenerate);  // x1 < T = 5 at this delta

    // at delta = 0.25 the boundaries collapse well inside [0, T)
    p = fisher::make_interval_plan(1.75);
    CHECK(p.x3 == Catch::Approx(std::exp(2.0)).epsilon(1e-12));
    CHECK(p.degenerate);

    // deep in the asymptotic regime the ordering T < x1 < x2 < x3 holds
    p = fisher::make_interval_plan(2.0 - 1e-6);
    CHECK_FALSE(p.degenerate);
    CHECK(p.x3 == 1e12);  // cap

    CHECK_THROWS_AS(fisher::make_interval_plan(2.0), std::domain_error);
}

TEST_CASE("location information at the Gaussian boundary") {
    // I_mumu for N(0,2) is 1/2; entries not involving alpha stay finite at 2
    fisher::IntervalPlan plan;
    plan.T = 5.0;
    plan.x1 = 6.0;
    plan.x2 = 7.0;
    plan.x3 = 60.0;
    auto e = fisher::fisher_entry(kMu, kMu, 2.0, 0.0, plan);
    CHECK(e.converged);
    CHECK(e.value == Catch::Approx(0.5).margin(1e-6));
    auto s = fisher::fisher_entry(kSigma, kSigma, 2.0, 0.0, plan);
    CHECK(s.value == Catch::Approx(2.0).margin(1e-5));
    // alpha-entries diverge there
    CHECK_THROWS_AS(fisher::fisher_entry(kAlpha, kAlpha, 2.0, 0.0, plan), std::domain_error);
}

TEST_CASE("odd integrands vanish under symmetry") {
    const auto plan = fisher::make_interval_plan(1.9);
    auto e = fisher::fisher_entry(kMu, kSigma, 1.9, 0.0, plan);
    CHECK(std::fabs(e.value) <= 1e-6);
}

TEST_CASE("fisher matrix at delta = 0.1, beta = 0.4") {
    const auto plan = fisher::make_interval_plan(1.9);
    const auto m = fisher::fisher_matrix(1.9, 0.4, plan);

    // symmetry by construction
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(m.entries[i][j] == m.entries[j][i]);
            CHECK(m.provenance[i][j] == fisher::Provenance::Quadrature);
        }

    // positive semi-definite up to numerical noise
    const auto ev = test_support::sym4_eigenvalues(m.entries);
    for (double l : ev) CHECK(l >= -1e-8);

    // diagonal entries are positive and of the expected size
    CHECK(m.entries[kMu][kMu] == Catch::Approx(0.474).epsilon(0.01));
    CHECK(m.entries[kSigma][kSigma] == Catch::Approx(1.626).epsilon(0.01));
    CHECK(m.entries[kAlpha][kAlpha] == Catch::Approx(0.9917).epsilon(0.01));
    CHECK(m.entries[kSigma][kAlpha] < 0.0);
}

TEST_CASE("matrix against the all-finite-difference pipeline") {
    // every distinct entry reproduced by the finite-difference pipeline at a
    // matched tail cut, at both tested distances from the boundary
    for (double alpha : {1.8, 1.9}) {
        const auto plan = fisher::make_interval_plan(alpha);
        const auto main = fisher::fisher_matrix(alpha, 0.5, plan);
        const auto orc = oracle::fisher_trapezoid_all(alpha, 0.5, plan.x3, 6001);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                INFO("alpha=" << alpha << " entry " << fisher::param_name(i) << ","
                              << fisher::param_name(j));
                CHECK(std::fabs(main.entries[i][j] - orc.entries[i][j]) <=
                      1e-4 * std::fabs(orc.entries[i][j]));
            }
    }
}

TEST_CASE("I_mubeta at beta = 0 is O(delta) but not zero") {
    // unlike the odd-integrand entries, mu-beta survives symmetry; its size
    // tracks delta with a stable constant
    double cmin = 1e300, cmax = 0.0;
    for (double delta : {0.2, 0.1, 0.05}) {
        const double alpha = 2.0 - delta;
        const auto plan = fisher::make_interval_plan(alpha);
        const auto e = fisher::fisher_entry(kMu, kBeta, alpha, 0.0, plan);
        const double c = e.value / delta;
        INFO("delta=" << delta << " I_mubeta=" << e.value << " C=" << c);
        CHECK(e.value > 1e-3);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    CHECK(cmax / cmin <= 2.0);
}

TEST_CASE("asymptotic matrix formulas") {
    const auto m = fisher::fisher_asymptotic(1.99, 0.0);  // delta = 0.01
    CHECK(m.entries[kMu][kMu] == 0.5);
    CHECK(m.entries[kSigma][kSigma] == 2.0);
    CHECK(m.entries[kAlpha][kAlpha] == Catch::Approx(5.4287).epsilon(1e-4));
    CHECK(m.entries[kSigma][kAlpha] == Catch::Approx(-0.76359).epsilon(1e-4));
    CHECK(m.entries[kBeta][kBeta] == Catch::Approx(5.4287e-4).epsilon(1e-4));
    CHECK(m.provenance[kMu][kMu] == fisher::Provenance::Asymptotic);
    // order-tagged zero entries
    CHECK(m.entries[kMu][kBeta] == 0.0);
    CHECK(std::string(m.order_note[kMu][kBeta]) == "O(delta)");
    CHECK(std::string(m.order_note[kSigma][kBeta]) == "o(delta log log 1/delta)");
    CHECK(std::string(m.order_note[kAlpha][kBeta]) == "o(1/log(1/delta))");
    // log log 1/delta needs delta < 1/e
    CHECK_THROWS_AS(fisher::fisher_asymptotic(1.5, 0.0), std::domain_error);
}

TEST_CASE("limits at alpha = 2") {
    const auto m = fisher::table1_limits();
    CHECK(m.entries[kMu][kMu] == 0.5);
    CHECK(m.entries[kSigma][kSigma] == 2.0);
    CHECK(std::isinf(m.entries[kAlpha][kAlpha]));
    CHECK(m.entries[kAlpha][kAlpha] > 0.0);
    CHECK(std::isinf(m.entries[kSigma][kAlpha]));
    CHECK(m.entries[kSigma][kAlpha] < 0.0);
    CHECK(m.entries[kBeta][kBeta] == 0.0);
    CHECK(m.entries[kMu][kBeta] == 0.0);
    CHECK(m.provenance[kBeta][kBeta] == fisher::Provenance::TableLimit);
}

TEST_CASE("near-boundary matrix structure (alpha = 1.999)") {
    const auto plan = fisher::make_interval_plan(1.999);
    const auto m = fisher::fisher_matrix(1.999, 0.0, plan);
    CHECK(m.entries[kMu][kMu] == Catch::Approx(0.5).epsilon(0.05));
    CHECK(m.entries[kSigma][kSigma] == Catch::Approx(2.0).epsilon(0.05));
    CHECK(m.entries[kAlpha][kAlpha] > 10.0);       // diverging
    CHECK(m.entries[kBeta][kBeta] < 1e-3);         // vanishing
    CHECK(m.entries[kSigma][kAlpha] < -0.5);       // diverging negative
    CHECK(std::fabs(m.entries[kMu][kSigma]) < 1e-4);
    CHECK(std::fabs(m.entries[kMu][kAlpha]) < 1e-4);
}

TEST_CASE("bad indices and parameters are rejected") {
    const auto plan = fisher::make_interval_plan(1.9);
    CHECK_THROWS_AS(fisher::fisher_entry(4, 0, 1.9, 0.0, plan), std::invalid_argument);
    CHECK_THROWS_AS(fisher::fisher_entry(0, 0, 1.9, 1.0, plan), std::invalid_argument);
}
