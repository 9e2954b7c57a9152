#pragma once

#include <vector>

namespace gsqg {

// Gamma function with explicit pole detection (throws domain_error at
// non-positive integers and on overflow).
double gamma_fn(double x);

// log|Gamma(x)| and the sign of Gamma(x); same pole policy.
double log_gamma(double x, int* sign = nullptr);

// Kernel normalization c_alpha = Gamma(alpha/2) / (2^(1-alpha) Gamma((2-alpha)/2)),
// alpha in (0, 2). c_1 = 1.
double c_alpha(double alpha);

// Gamma-ratio g_m = Gamma(m + alpha/2) / Gamma(m + 1 - alpha/2), evaluated in
// log space (valid for any m >= 0 without overflow).
double gamma_ratio_g(int m, double alpha);

// Regularized cosine moments of the periodic kernel |2 sin(u/2)|^(-alpha):
//   lambda_reg(m) = (1/2pi) Int [cos(mu) - 1] |2 sin(u/2)|^(-alpha) du
// (each moment diverges for alpha >= 1; differences are finite).
double kernel_moment_reg(int m, double alpha);

enum class SigmaNorm {
    calibrated,  // matches the linearized action of the actual self-interaction
    two_over_pi, // alpha = 1 book constant (2/pi) sum_{i<=j} 1/(2i-1)
    raw          // alpha = 1 book constant 8 sum_{i<=j} 1/(2i-1)
};

// Dispersion multiplier sigma_j: the linearization of the self-interaction
// at the disk acts on cos(jx) as +j sigma_j gamma sin(jx). Calibrated form:
//   sigma_j = c_alpha * K * (g_1 - g_j),  K = Gamma(1-alpha)/(Gamma(alpha/2) Gamma(1-alpha/2))
// with the alpha -> 1 limit (2/pi) (sum_{i=1}^{j} 1/(2i-1) - 1). sigma_1 = 0:
// the first mode translates the disk and is neutral. The two_over_pi and raw
// normalizations reproduce the two alpha = 1 book constants (only the scale
// differs; for alpha != 1 they both fall back to 2^alpha K (g_0 - g_j)).
double sigma_j(int j, double alpha, SigmaNorm norm = SigmaNorm::calibrated);

// sigma_j for j = 1..N in one pass (shares the log-gamma anchors).
std::vector<double> sigma_table(int N, double alpha, SigmaNorm norm = SigmaNorm::calibrated);

// Multiplier table with its defining parameters. sigma[j-1] holds sigma_j;
// the sequence is strictly increasing in j for every supported alpha.
struct MultiplierTable {
    double alpha = 1.0;
    SigmaNorm normalization = SigmaNorm::calibrated;
    std::vector<double> sigma;
};
MultiplierTable multiplier_table(int N, double alpha, SigmaNorm norm = SigmaNorm::calibrated);

} // namespace gsqg
