#include "gsqg/special.hpp"

#include "gsqg/types.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace gsqg;

namespace {
constexpr double pi = std::numbers::pi;

double odd_harmonic(int j) {
    double s = 0.0;
    for (int i = 1; i <= j; ++i) s += 1.0 / (2.0 * i - 1.0);
    return s;
}
} // namespace

TEST_CASE("gamma function values and poles") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_fn(4.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
    CHECK(gamma_fn(0.75) == doctest::Approx(1.2254167024651776).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_fn(0.0), domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.0), domain_error);
    CHECK_THROWS_AS(gamma_fn(-5.0), domain_error);
    CHECK_THROWS_AS(gamma_fn(300.0), domain_error); // overflow
    // negative non-integer arguments are fine
    CHECK(gamma_fn(-0.5) == doctest::Approx(-3.5449077018110322).epsilon(1e-14));
}

TEST_CASE("log gamma carries the sign") {
    int sign = 0;
    const double lg = log_gamma(-0.5, &sign);
    CHECK(sign == -1);
    CHECK(std::exp(lg) == doctest::Approx(3.5449077018110322).epsilon(1e-13));
    log_gamma(2.5, &sign);
    CHECK(sign == 1);
    CHECK_THROWS_AS(log_gamma(-3.0, nullptr), domain_error);
}

TEST_CASE("kernel normalization constant") {
    CHECK(c_alpha(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c_alpha(1.25) == doctest::Approx(0.71967346430574951).epsilon(1e-14));
    CHECK(c_alpha(1.5) == doctest::Approx(0.47798879748612500).epsilon(1e-14));
    CHECK(c_alpha(1.75) == doctest::Approx(0.24324180091226321).epsilon(1e-14));
    CHECK(c_alpha(0.5) == doctest::Approx(2.0920992401062033).epsilon(1e-14));
    CHECK_THROWS_AS(c_alpha(0.0), validation_error);
    CHECK_THROWS_AS(c_alpha(2.0), validation_error);
    CHECK_THROWS_AS(c_alpha(-1.0), validation_error);
}

TEST_CASE("multiplier book normalizations at alpha = 1") {
    CHECK(sigma_j(1, 1.0, SigmaNorm::raw) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(sigma_j(2, 1.0, SigmaNorm::raw) == doctest::Approx(32.0 / 3.0).epsilon(1e-15));
    CHECK(sigma_j(1, 1.0, SigmaNorm::two_over_pi) ==
          doctest::Approx(2.0 / pi).epsilon(1e-15));
    CHECK(sigma_j(2, 1.0, SigmaNorm::two_over_pi) ==
          doctest::Approx(0.84882636315677512).epsilon(1e-14));
}

TEST_CASE("calibrated multiplier anchors") {
    // first mode is neutral (disk translation)
    for (double a : {1.0, 1.25, 1.5, 1.75}) CHECK(sigma_j(1, a) == 0.0);

    CHECK(sigma_j(2, 1.0) == doctest::Approx(0.21220659078919378).epsilon(1e-14));
    CHECK(sigma_j(2, 1.25) == doctest::Approx(0.19024305032032492).epsilon(1e-13));
    CHECK(sigma_j(2, 1.5) == doctest::Approx(0.15468270075782820).epsilon(1e-13));
    CHECK(sigma_j(2, 1.75) == doctest::Approx(0.09667636308550901).epsilon(1e-13));
    CHECK(sigma_j(8, 1.0) == doctest::Approx(0.65049835193168313).epsilon(1e-14));
    CHECK(sigma_j(32, 1.5) == doctest::Approx(1.7707365675596931).epsilon(1e-13));
    CHECK(sigma_j(2, 1.5, SigmaNorm::raw) == doctest::Approx(2.4408312432058022).epsilon(1e-13));

    CHECK_THROWS_AS(sigma_j(0, 1.5), validation_error);
    CHECK_THROWS_AS(sigma_j(2, 2.0), validation_error);
}

TEST_CASE("multipliers are positive and strictly increasing") {
    for (double a : {0.5, 1.0, 1.25, 1.5, 1.75}) {
        for (SigmaNorm norm : {SigmaNorm::calibrated, SigmaNorm::two_over_pi, SigmaNorm::raw}) {
            const auto t = sigma_table(64, a, norm);
            REQUIRE(t.size() == 64);
            for (int j = 1; j <= 64; ++j) {
                const double s = t[static_cast<size_t>(j - 1)];
                if (norm == SigmaNorm::calibrated && j == 1)
                    CHECK(s == 0.0);
                else
                    CHECK(s > 0.0);
                if (j >= 2) CHECK(s > t[static_cast<size_t>(j - 2)]);
            }
        }
    }
}

TEST_CASE("log-space path agrees with direct gamma ratios") {
    for (double a : {1.25, 1.5, 1.75}) {
        const double K = gamma_fn(1.0 - a) / (gamma_fn(0.5 * a) * gamma_fn(1.0 - 0.5 * a));
        auto g = [a](int m) { return gamma_fn(m + 0.5 * a) / gamma_fn(m + 1.0 - 0.5 * a); };
        for (int j = 2; j <= 64; ++j) {
            const double direct = c_alpha(a) * K * (g(1) - g(j));
            const double stable = sigma_j(j, a);
            CHECK(std::fabs(stable - direct) / std::fabs(direct) < 1e-10);
        }
    }
}

TEST_CASE("large-j growth matches the expected asymptotic shape") {
    // least squares of sigma_j against {basis(j), 1} over j in [N/2, N]
    auto fit_residual = [](const std::vector<double>& sig, double (*basis)(int, double),
                           double a) {
        const int N = static_cast<int>(sig.size());
        double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
        for (int j = N / 2; j <= N; ++j) {
            const double f = basis(j, a);
            s11 += f * f;
            s12 += f;
            s22 += 1.0;
            r1 += f * sig[static_cast<size_t>(j - 1)];
            r2 += sig[static_cast<size_t>(j - 1)];
        }
        const double det = s11 * s22 - s12 * s12;
        const double slope = (r1 * s22 - r2 * s12) / det;
        const double icept = (s11 * r2 - s12 * r1) / det;
        double worst = 0.0;
        for (int j = N / 2; j <= N; ++j) {
            const double model = slope * basis(j, a) + icept;
            worst = std::max(worst,
                             std::fabs(model - sig[static_cast<size_t>(j - 1)]) /
                                 sig[static_cast<size_t>(j - 1)]);
        }
        return worst;
    };

    const auto t1 = sigma_table(64, 1.0);
    CHECK(fit_residual(t1, [](int j, double) { return std::log(static_cast<double>(j)); },
                       1.0) < 0.05);
    for (double a : {1.25, 1.5, 1.75}) {
        const auto t = sigma_table(64, a);
        CHECK(fit_residual(t, [](int j, double aa) { return std::pow(j, aa - 1.0); }, a) < 0.05);
    }
}

TEST_CASE("regularized kernel moments") {
    CHECK(kernel_moment_reg(0, 1.0) == 0.0);
    CHECK(kernel_moment_reg(0, 1.5) == 0.0);
    for (int m : {1, 2, 5})
        CHECK(kernel_moment_reg(m, 1.0) ==
              doctest::Approx(-(2.0 / pi) * odd_harmonic(m)).epsilon(1e-14));
    CHECK(kernel_moment_reg(1, 1.5) == doctest::Approx(-0.53935260118837936).epsilon(1e-13));
    CHECK(kernel_moment_reg(2, 1.5) == doctest::Approx(-0.86296416190140697).epsilon(1e-13));
    CHECK(kernel_moment_reg(3, 1.5) == doctest::Approx(-1.1146620424559840).epsilon(1e-13));
    CHECK_THROWS_AS(kernel_moment_reg(-1, 1.5), validation_error);
    // moments decrease (kernel mass concentrates at the singularity)
    for (int m = 1; m < 32; ++m)
        CHECK(kernel_moment_reg(m + 1, 1.5) < kernel_moment_reg(m, 1.5));
}

TEST_CASE("multiplier table carries its parameters") {
    const auto t = multiplier_table(16, 1.5, SigmaNorm::calibrated);
    CHECK(t.alpha == 1.5);
    CHECK(t.normalization == SigmaNorm::calibrated);
    REQUIRE(t.sigma.size() == 16);
    for (int j = 1; j <= 16; ++j)
        CHECK(t.sigma[static_cast<size_t>(j - 1)] == sigma_j(j, 1.5));
}

TEST_CASE("quadrature oracle reproduces independently computed anchors") {
    // frozen with 30-digit arithmetic from the defining integrals
    CHECK(std::fabs(oracle::sigma_quadrature(1, 1.5)) < 1e-10);
    CHECK(oracle::sigma_quadrature(2, 1.0) ==
          doctest::Approx(0.21220659078919378).epsilon(1e-10));
    CHECK(oracle::sigma_quadrature(2, 1.5) ==
          doctest::Approx(0.15468270075782820).epsilon(1e-10));
    CHECK(oracle::sigma_quadrature(8, 1.0) ==
          doctest::Approx(0.65049835193168313).epsilon(1e-10));
    CHECK(oracle::sigma_quadrature(2, 1.25) ==
          doctest::Approx(0.19024305032032492).epsilon(1e-10));
}
