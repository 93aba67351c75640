#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "stableinfo/density.hpp"
#include "stableinfo/fourier.hpp"
#include "stableinfo/quadrature.hpp"

using namespace stableinfo;

TEST_CASE("characteristic function basics") {
    CHECK(fourier::cf(0.0, 1.7, 0.5) == std::complex<double>(1.0, 0.0));
    // the skewness phase carries |t|^(1-alpha) - 1, which vanishes at |t| = 1
    for (double alpha : {1.5, 1.8, 1.99})
        for (double beta : {0.0, 0.7, -0.9}) {
            const auto v = fourier::cf(1.0, alpha, beta);
            CHECK(v.real() == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
            CHECK(std::fabs(v.imag()) < 1e-15);
        }
    // symmetric case is real
    for (double t : {0.3, 1.7, 4.0}) {
        const auto v = fourier::cf(t, 1.6, 0.0);
        CHECK(v.imag() == 0.0);
        CHECK(v.real() == Catch::Approx(std::exp(-std::pow(t, 1.6))).epsilon(1e-13));
    }
}

TEST_CASE("modulus of the characteristic function is the decay envelope") {
    for (double alpha : {1.5, 1.9, 2.0})
        for (double beta : {0.0, 0.5, -0.9})
            for (double t : {-3.0, -0.9, 0.1, 0.9, 2.5}) {
                const auto e = fourier::cf_eval(t, alpha, beta);
                CHECK(std::abs(e.value) == Catch::Approx(e.decay_envelope).epsilon(1e-13));
                CHECK(std::abs(e.value) <= 1.0);
            }
    // conjugate symmetry
    const auto plus = fourier::cf(1.3, 1.7, 0.4);
    const auto minus = fourier::cf(-1.3, 1.7, 0.4);
    CHECK(plus.real() == minus.real());
    CHECK(plus.imag() == -minus.imag());
}

TEST_CASE("density by inversion at reference points") {
    // f(0; alpha, 0) = Gamma(1 + 1/alpha)/pi
    auto r = fourier::density_fourier(0.0, 1.5, 0.0);
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(0.28735275145216445).margin(1e-11));
    // Gaussian boundary evaluated by quadrature, not by the closed form
    r = fourier::density_fourier(1.0, 2.0, 0.0);
    CHECK(r.value == Catch::Approx(0.21969564473386120).margin(1e-12));
    // cross-method agreement away from the mode
    const double nolan = density::density_std(4.0, 1.9, 0.7).value;
    r = fourier::density_fourier(4.0, 1.9, 0.7);
    CHECK(std::fabs(r.value - nolan) <= 1e-8);
}

TEST_CASE("truncation bound is part of the reported error") {
    auto r = fourier::density_fourier(0.7, 1.6, 0.3);
    quad::QuadConfig tight;
    tight.abs_tol = 1e-14;
    tight.rel_tol = 1e-12;
    tight.max_subdivisions = 8000;
    auto r2 = fourier::density_fourier(0.7, 1.6, 0.3, tight);
    CHECK(std::fabs(r.value - r2.value) <= 10.0 * r.abs_error);
}

TEST_CASE("f_alpha at a reference point and against finite differences") {
    // reference: mpmath, centered difference at 40 digits
    auto r = fourier::f_alpha(1.2, 1.8, 0.5);
    CHECK(r.converged);
    CHECK_FALSE(r.one_sided);
    CHECK(r.value == Catch::Approx(0.040892234134239582).margin(1e-9));

    // Richardson finite difference of density_fourier in alpha, h = 1e-4
    auto fd = quad::fd_derivative(
        [&](double a) { return fourier::density_fourier(1.2, a, 0.5).value; }, 1.8, 1e-4);
    CHECK(std::fabs(r.value - fd) <= 1e-5);
}

TEST_CASE("f_beta at reference points") {
    // identically zero at the Gaussian boundary
    for (double x : {-2.0, 0.0, 1.5}) {
        auto r = fourier::f_beta(x, 2.0, 0.3);
        CHECK(r.value == 0.0);
        CHECK(r.converged);
    }
    auto r = fourier::f_beta(1.2, 1.8, 0.5);
    CHECK(r.value == Catch::Approx(0.00022271429456318640).margin(1e-10));
    auto fd = quad::fd_derivative(
        [&](double b) { return fourier::density_fourier(1.2, 1.8, b).value; }, 0.5, 1e-4);
    CHECK(std::fabs(r.value - fd) <= 1e-5);
}

TEST_CASE("parameter derivatives agree with finite differences on a grid") {
    for (double alpha : {1.6, 1.8, 1.95})
        for (double beta : {-0.4, 0.0, 0.4})
            for (double x : {-3.0, -0.7, 0.2, 1.1, 5.0}) {
                INFO("alpha=" << alpha << " beta=" << beta << " x=" << x);
                const double fa = fourier::f_alpha(x, alpha, beta).value;
                const double fa_fd = quad::fd_derivative(
                    [&](double a) { return fourier::density_fourier(x, a, beta).value; }, alpha,
                    1e-4);
                CHECK(std::fabs(fa - fa_fd) <= std::max(1e-6, 1e-4 * std::fabs(fa)));
                const double fb = fourier::f_beta(x, alpha, beta).value;
                const double fb_fd = quad::fd_derivative(
                    [&](double b) { return fourier::density_fourier(x, alpha, b).value; }, beta,
                    1e-4);
                CHECK(std::fabs(fb - fb_fd) <= std::max(1e-6, 1e-4 * std::fabs(fb)));
            }
}

TEST_CASE("reflection symmetries of the parameter derivatives") {
    for (double alpha : {1.7, 1.9})
        for (double beta : {0.0, 0.3, 0.8})
            for (double x : {0.4, 1.3, 6.0, 15.0}) {
                // f_alpha(x; alpha, beta) = f_alpha(-x; alpha, -beta)
                CHECK(std::fabs(fourier::f_alpha(x, alpha, beta).value -
                                fourier::f_alpha(-x, alpha, -beta).value) <= 1e-8);
                // f_beta(x; alpha, beta) = -f_beta(-x; alpha, -beta)
                CHECK(std::fabs(fourier::f_beta(x, alpha, beta).value +
                                fourier::f_beta(-x, alpha, -beta).value) <= 1e-8);
            }
    // symmetric family: f_alpha is even in x
    for (double x : {0.5, 2.5, 8.0})
        CHECK(std::fabs(fourier::f_alpha(x, 1.85, 0.0).value -
                        fourier::f_alpha(-x, 1.85, 0.0).value) <= 1e-10);
}

TEST_CASE("f_beta is uniformly O(delta)") {
    double prev_c = 0.0;
    for (double delta : {0.2, 0.1, 0.05}) {
        const double alpha = 2.0 - delta;
        double worst = 0.0;
        for (int k = 0; k <= 80; ++k) {
            const double x = -20.0 + 40.0 * k / 80.0;
            worst = std::max(worst, std::fabs(fourier::f_beta(x, alpha, 0.0).value));
        }
        const double c = worst / delta;
        INFO("delta=" << delta << " max|f_beta|=" << worst << " C=" << c);
        CHECK(c < 0.5);
        if (prev_c > 0.0) {
            CHECK(c <= 2.0 * prev_c);
            CHECK(c >= 0.5 * prev_c);
        }
        prev_c = c;
    }
}

TEST_CASE("one-sided alpha derivative at the boundary is flagged") {
    auto r = fourier::f_alpha(1.0, 2.0, 0.0);
    CHECK(r.one_sided);
    // one-sided value matches a backward difference into alpha < 2
    const double h = 1e-5;
    const double fd = (density::gaussian_density(1.0) -
                       fourier::density_fourier(1.0, 2.0 - h, 0.0).value) /
                      h;
    CHECK(r.value == Catch::Approx(fd).margin(2e-4));
}

TEST_CASE("oscillatory path agrees with the integral representation far out") {
    for (double x : {12.0, 20.0, 35.0}) {
        const double a = fourier::density_fourier(x, 1.9, 0.5).value;
        const double b = density::density_std(x, 1.9, 0.5).value;
        INFO("x=" << x);
        CHECK(std::fabs(a - b) <= 1e-10);
    }
}
