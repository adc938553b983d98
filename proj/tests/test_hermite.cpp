#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latscheme/hermite.hpp"

using namespace latscheme;

TEST_CASE("hermite_coeffs from the recurrence") {
    CHECK(hermite_coeffs(0) == std::vector<long long>{1});
    CHECK(hermite_coeffs(1) == std::vector<long long>{0, 1});
    CHECK(hermite_coeffs(2) == std::vector<long long>{-1, 0, 1});
    CHECK(hermite_coeffs(4) == std::vector<long long>{3, 0, -6, 0, 1});
    CHECK_THROWS_AS(hermite_coeffs(21), std::invalid_argument);
}

TEST_CASE("G_eval values and derivative identity") {
    CHECK(G_eval(0, 0.0) == 1.0);
    CHECK(std::abs(G_eval(1, 1.0)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    // G_r' = G_{r+1} by central differences; error measured relative to the
    // scale of G_{r+1}, which grows like (r-1)!!
    const double h = 1e-4;
    for (int r = 0; r <= 10; ++r) {
        double worst = 0.0, scale = 0.0;
        for (double a = -6.0; a <= 6.0; a += 0.05) {
            double fd = (G_eval(r, a + h) - G_eval(r, a - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - G_eval(r + 1, a)));
            scale = std::max(scale, std::abs(G_eval(r + 1, a)));
        }
        CHECK(worst / scale <= 1e-6);
    }
}

TEST_CASE("smallest_abs_zero") {
    CHECK(smallest_abs_zero(1) == 0.0);
    CHECK(smallest_abs_zero(2) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(smallest_abs_zero(4) == doctest::Approx(std::sqrt(3.0 - std::sqrt(6.0))).epsilon(1e-12));
    CHECK(smallest_abs_zero(3) == 0.0);
}

TEST_CASE("hermite_zeros are complete and ordered") {
    for (int r : {2, 5, 8, 13}) {
        auto z = hermite_zeros(r);
        REQUIRE(static_cast<int>(z.size()) == r);
        for (std::size_t i = 1; i < z.size(); ++i) CHECK(z[i] > z[i - 1]);
        // each zero is bracketed to 1e-12 (a residual check would be swamped
        // by the polynomial's scale at large r)
        for (double zi : z)
            CHECK(hermite_eval(r, zi - 1e-12) * hermite_eval(r, zi + 1e-12) <= 0.0);
    }
}

TEST_CASE("M and V constants") {
    CHECK(M_const(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(M_const(1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(M_const(2) == doctest::Approx(1.0).epsilon(1e-12));
    // |H_3(z_4)| = sqrt(6) z_4 with z_4 = sqrt(3 - sqrt 6), giving 1.38012...
    double m3 = std::exp(-(3.0 - std::sqrt(6.0)) / 2.0) * std::sqrt(6.0) *
                std::sqrt(3.0 - std::sqrt(6.0));
    CHECK(M_const(3) == doctest::Approx(m3).epsilon(1e-12));
    CHECK(M_const(3) == doctest::Approx(1.38012).epsilon(1e-5));
    CHECK(M_const(4) == doctest::Approx(3.0).epsilon(1e-12));
    // M_{2r} = (2r-1)!!
    double dfact = 1.0;
    for (int r = 1; r <= 6; ++r) {
        dfact *= 2.0 * r - 1.0;
        CHECK(M_const(2 * r) == doctest::Approx(dfact).epsilon(1e-12));
    }
    CHECK(V_const(0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(V_const(1) == doctest::Approx(4.0 * std::exp(-0.5)).epsilon(1e-10));
    CHECK(V_const(2) == doctest::Approx(2.0 * (1.0 + 4.0 * std::exp(-1.5))).epsilon(1e-10));
}

TEST_CASE("1D predictions: formula spot checks") {
    CHECK(predict_local(0.0, 1.0, 10.0, 1) == 0.0);
    // basic scheme, r = 0: |psi'(0)| e^{-1/2} / (sqrt(2 pi) sigma^2 lambda)
    double beta = 0.7, s2 = 1.3, lam = 9.0;
    CHECK(predict_local(beta, s2, lam, 0) ==
          doctest::Approx(beta * std::exp(-0.5) / (std::sqrt(2.0 * std::numbers::pi) * s2 * lam))
              .epsilon(1e-13));
    CHECK(predict_kolmogorov(beta, s2, lam, 0) ==
          doctest::Approx(beta / std::sqrt(2.0 * std::numbers::pi * s2 * lam)).epsilon(1e-13));

    // r = 2, beta = p3/3, sigma2 = 1: the leading constant is M_3/3 = 0.46004
    double p3 = 1.2020569031595943;
    double expect = p3 / 3.0 * 1.3801190461607493 /
                    (std::sqrt(2.0 * std::numbers::pi) * lam * lam);
    CHECK(predict_local(p3 / 3.0, 1.0, lam, 2) == doctest::Approx(expect).epsilon(1e-10));

    // r = 1, beta = -p2/2: d_K = p2 / (2 sqrt(2 pi e) lambda), d_TV twice... with V_1
    double p2 = 1.6449340668482264;
    CHECK(predict_kolmogorov(-p2 / 2.0, 1.0, lam, 1) ==
          doctest::Approx(p2 / (2.0 * std::sqrt(2.0 * std::numbers::pi * std::numbers::e) * lam))
              .epsilon(1e-12));
    CHECK(predict_tv(-p2 / 2.0, 1.0, lam, 1) ==
          doctest::Approx(2.0 * p2 / (std::sqrt(2.0 * std::numbers::pi * std::numbers::e) * lam))
              .epsilon(1e-12));
    CHECK(predict_tv(p3 / 3.0, 1.0, lam, 2) ==
          doctest::Approx(2.0 * (1.0 + 4.0 * std::exp(-1.5)) * p3 /
                          (3.0 * std::sqrt(2.0 * std::numbers::pi) * std::pow(lam, 1.5)))
              .epsilon(1e-12));
}

TEST_CASE("predictions scale exactly in lambda") {
    double beta = 0.41, s2 = 1.0, lam = 7.0;
    for (int r : {0, 1, 2, 3}) {
        CHECK(predict_local(beta, s2, lam, r) / predict_local(beta, s2, 4.0 * lam, r) ==
              doctest::Approx(std::pow(4.0, r / 2.0 + 1.0)).epsilon(1e-12));
        CHECK(predict_kolmogorov(beta, s2, lam, r) / predict_kolmogorov(beta, s2, 4.0 * lam, r) ==
              doctest::Approx(std::pow(4.0, (r + 1.0) / 2.0)).epsilon(1e-12));
        CHECK(predict_tv(beta, s2, lam, r) / predict_tv(beta, s2, 4.0 * lam, r) ==
              doctest::Approx(std::pow(4.0, (r + 1.0) / 2.0)).epsilon(1e-12));
    }
    // at r = 0, d_TV is twice d_K at the formula level: V_0 / |G_0(z_1)| = 2
    CHECK(predict_tv(beta, s2, lam, 0) / predict_kolmogorov(beta, s2, lam, 0) ==
          doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("2D sup: single Hermite factor has its maximum at the origin") {
    BetaMap b{{{2, 0}, 1.0}};
    double sup = hermite_sup_2d(b, {1.0, 1.0});
    // e^{-x^2/2} |x^2 - 1|: value 1 at 0, and 2 e^{-3/2} < 1 at x^2 = 3
    CHECK(sup == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(2.0 * std::exp(-1.5) < 1.0);
}

TEST_CASE("2D sup: coloured-permutation combination peaks at the origin") {
    double p2 = 1.6449340668482264;
    BetaMap b{{{2, 0}, -p2 / 8.0}, {{1, 1}, -p2 / 4.0}, {{0, 2}, -p2 / 8.0}};
    std::array<double, 2> sigma{std::sqrt(0.5), std::sqrt(0.5)};
    // sum beta H / sigma^alpha = (p2/4)(2 - (x+y)^2), maximal at x = y = 0
    double sup = hermite_sup_2d(b, sigma);
    CHECK(sup == doctest::Approx(p2 / 2.0).epsilon(1e-8));
}

TEST_CASE("2D integral: rotational reduction and the quoted value") {
    double p2 = 1.6449340668482264;
    BetaMap b{{{2, 0}, -p2 / 8.0}, {{1, 1}, -p2 / 4.0}, {{0, 2}, -p2 / 8.0}};
    std::array<double, 2> sigma{std::sqrt(0.5), std::sqrt(0.5)};
    double raw = hermite_integral_2d(b, sigma);     // (p2/4) * integral of e^{-|x|^2/2}|2-(x+y)^2|
    double scaled = raw / (p2 / 4.0);
    CHECK(scaled == doctest::Approx(12.162).epsilon(1e-3));
    // substitution u = (x+y)/sqrt(2): integral = sqrt(2 pi) * int e^{-u^2/2} 2|1-u^2| du = 8 sqrt(2 pi) e^{-1/2}
    double exact = 8.0 * std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5);
    CHECK(scaled == doctest::Approx(exact).epsilon(1e-6));

    CHECK(predict_tv_md(b, sigma, 40.0, 1) ==
          doctest::Approx(raw / (2.0 * std::numbers::pi * 40.0)).epsilon(1e-12));
    CHECK(predict_local_md(BetaMap{}, sigma, 40.0, 1) == 0.0);
    CHECK(predict_local_md(b, sigma, 40.0, 1) ==
          doctest::Approx((p2 / 2.0) / (2.0 * std::numbers::pi * 0.5 * std::pow(40.0, 2.0)))
              .epsilon(1e-7));
}

TEST_CASE("gaussian_kolmogorov") {
    // lambda = 1: the jump at k = 0 is among the candidates
    double g1 = gaussian_kolmogorov(1.0);
    auto Phi = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
    CHECK(g1 >= std::abs(std::exp(-1.0) - Phi(0.0)) - 1e-12);
    // Berry-Esseen decay
    double g25 = gaussian_kolmogorov(25.0);
    double g100 = gaussian_kolmogorov(100.0);
    double g400 = gaussian_kolmogorov(400.0);
    CHECK(g400 < g100);
    CHECK(g100 < g25);
    // 1/sqrt(lambda) scaling stabilizes within 10%
    CHECK(std::abs(g400 * 20.0 / (g100 * 10.0) - 1.0) < 0.10);
}
