#include "gsqg/special.hpp"

#include "gsqg/types.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gsqg {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// sum_{i=1}^{j} 1/(2i-1)
double odd_harmonic(int j) {
    double s = 0.0;
    for (int i = 1; i <= j; ++i) s += 1.0 / (2.0 * i - 1.0);
    return s;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw validation_error("alpha must lie in (0, 2), got " + std::to_string(alpha));
}

} // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw domain_error("gamma pole at x = " + std::to_string(x));
    const double v = std::tgamma(x);
    if (!std::isfinite(v))
        throw domain_error("gamma overflow at x = " + std::to_string(x));
    return v;
}

double log_gamma(double x, int* sign) {
    if (is_nonpositive_integer(x))
        throw domain_error("gamma pole at x = " + std::to_string(x));
    int s = 0;
    const double v = ::lgamma_r(x, &s);
    if (sign) *sign = s;
    return v;
}

double c_alpha(double alpha) {
    check_alpha(alpha);
    // 2^(alpha-1) Gamma(alpha/2) / Gamma(1 - alpha/2)
    return std::exp((alpha - 1.0) * std::numbers::ln2 + log_gamma(0.5 * alpha) -
                    log_gamma(1.0 - 0.5 * alpha));
}

double gamma_ratio_g(int m, double alpha) {
    check_alpha(alpha);
    if (m < 0) throw validation_error("gamma_ratio_g needs m >= 0");
    return std::exp(log_gamma(m + 0.5 * alpha) - log_gamma(m + 1.0 - 0.5 * alpha));
}

namespace {

// log of g_m relative to g_anchor: log(g_m) - log(g_anchor)
double log_g_delta(int m, int anchor, double alpha) {
    return (log_gamma(m + 0.5 * alpha) - log_gamma(m + 1.0 - 0.5 * alpha)) -
           (log_gamma(anchor + 0.5 * alpha) - log_gamma(anchor + 1.0 - 0.5 * alpha));
}

// K = Gamma(1-alpha) / (Gamma(alpha/2) Gamma(1-alpha/2)); negative on (1,2).
double prefactor_K(double alpha) {
    int s = 0;
    const double lg = log_gamma(1.0 - alpha, &s);
    return s * std::exp(lg - log_gamma(0.5 * alpha) - log_gamma(1.0 - 0.5 * alpha));
}

} // namespace

double kernel_moment_reg(int m, double alpha) {
    check_alpha(alpha);
    if (m < 0) throw validation_error("kernel_moment_reg needs m >= 0");
    if (m == 0) return 0.0;
    if (alpha == 1.0) return -(2.0 / std::numbers::pi) * odd_harmonic(m);
    // K (g_m - g_0) = K g_0 expm1(log g_m - log g_0), stable as alpha -> 1.
    const double Kg0 = prefactor_K(alpha) * gamma_ratio_g(0, alpha);
    return Kg0 * std::expm1(log_g_delta(m, 0, alpha));
}

double sigma_j(int j, double alpha, SigmaNorm norm) {
    check_alpha(alpha);
    if (j < 1) throw validation_error("sigma_j needs j >= 1");
    if (alpha == 1.0) {
        switch (norm) {
            case SigmaNorm::calibrated: return (2.0 / std::numbers::pi) * (odd_harmonic(j) - 1.0);
            case SigmaNorm::two_over_pi: return (2.0 / std::numbers::pi) * odd_harmonic(j);
            case SigmaNorm::raw: return 8.0 * odd_harmonic(j);
        }
    }
    if (norm == SigmaNorm::calibrated) {
        // c_alpha K (g_1 - g_j) = -c_alpha K g_1 expm1(log g_j - log g_1)
        const double P = c_alpha(alpha) * prefactor_K(alpha) * gamma_ratio_g(1, alpha);
        return -P * std::expm1(log_g_delta(j, 1, alpha));
    }
    // book normalization for alpha != 1: 2^alpha K (g_0 - g_j)
    const double Q = std::exp2(alpha) * prefactor_K(alpha) * gamma_ratio_g(0, alpha);
    return -Q * std::expm1(log_g_delta(j, 0, alpha));
}

std::vector<double> sigma_table(int N, double alpha, SigmaNorm norm) {
    if (N < 1) throw validation_error("sigma_table needs N >= 1");
    std::vector<double> out(static_cast<size_t>(N));
    for (int j = 1; j <= N; ++j) out[static_cast<size_t>(j - 1)] = sigma_j(j, alpha, norm);
    return out;
}

MultiplierTable multiplier_table(int N, double alpha, SigmaNorm norm) {
    MultiplierTable t;
    t.alpha = alpha;
    t.normalization = norm;
    t.sigma = sigma_table(N, alpha, norm);
    return t;
}

} // namespace gsqg
