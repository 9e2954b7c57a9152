#include "gsqg/quadrature.hpp"

#include "gsqg/special.hpp"
#include "gsqg/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

namespace gsqg {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void check_alpha_range(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw validation_error("alpha must lie in (0, 2), got " + std::to_string(alpha));
}
} // namespace

double mean_integral(const std::function<double(double)>& f, int M) {
    if (M < 2) throw validation_error("mean_integral needs M >= 2");
    double acc = 0.0;
    for (int m = 0; m < M; ++m) acc += f(two_pi * m / M);
    return acc / M;
}

SingularConvolution SingularConvolution::build(double alpha, int M) {
    check_alpha_range(alpha);
    if (M < 4 || M % 2 != 0)
        throw validation_error("SingularConvolution needs even M >= 4, got " + std::to_string(M));
    SingularConvolution rule;
    rule.M = M;
    rule.alpha = alpha;
    std::vector<double> lam(static_cast<size_t>(M / 2 + 1));
    for (int j = 0; j <= M / 2; ++j) lam[static_cast<size_t>(j)] = kernel_moment_reg(j, alpha);
    rule.w.resize(static_cast<size_t>(M));
    for (int l = 0; l < M; ++l) {
        double acc = 0.0;
        for (int j = 1; j < M / 2; ++j)
            acc += 2.0 * lam[static_cast<size_t>(j)] * std::cos(two_pi * j * l / M);
        acc += lam[static_cast<size_t>(M / 2)] * (l % 2 == 0 ? 1.0 : -1.0);
        rule.w[static_cast<size_t>(l)] = acc / M;
    }
    return rule;
}

double SingularConvolution::apply(const std::vector<double>& values, int m) const {
    if (static_cast<int>(values.size()) != M)
        throw validation_error("SingularConvolution::apply: value count != M");
    double acc = 0.0;
    for (int k = 0; k < M; ++k) {
        if (k == m) continue;
        acc += w[static_cast<size_t>((k - m + M) % M)] * values[static_cast<size_t>(k)];
    }
    return acc;
}

namespace {

double subtraction_pass(const std::function<double(double)>& h, double y0, double alpha, int M) {
    const SingularConvolution rule = SingularConvolution::build(alpha, M);
    std::vector<double> vals(static_cast<size_t>(M));
    for (int k = 1; k < M; ++k) vals[static_cast<size_t>(k)] = h(y0 + two_pi * k / M);
    vals[0] = 0.0;
    return rule.apply(vals, 0);
}

double split_pass(const std::function<double(double)>& h, double y0, double alpha,
                  const QuadratureConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta < std::numbers::pi))
        throw validation_error("gauss_jacobi_split needs 0 < delta < pi");
    // Near field: (1/2pi) Int_0^delta [h(y0+u) + h(y0-u)] |2 sin(u/2)|^(-alpha) du.
    // Writing the kernel as u^(-alpha) (u / (2 sin(u/2)))^alpha and dividing the
    // bracket (which vanishes quadratically) by u gives a smooth integrand
    // against the Jacobi weight u^(1-alpha).
    std::vector<double> t, wt;
    gauss_jacobi01(cfg.M_near, 1.0 - alpha, t, wt);
    double near = 0.0;
    for (int i = 0; i < cfg.M_near; ++i) {
        const double u = cfg.delta * t[static_cast<size_t>(i)];
        const double bracket = h(y0 + u) + h(y0 - u);
        const double ratio = u / (2.0 * std::sin(0.5 * u));
        near += wt[static_cast<size_t>(i)] * (bracket / u) * std::pow(ratio, alpha);
    }
    near *= std::pow(cfg.delta, 2.0 - alpha) / two_pi;
    // Far field: (1/2pi) Int_delta^{2pi-delta} h(y0+u) |2 sin(u/2)|^(-alpha) du
    // over composite Gauss-Legendre panels.
    std::vector<double> gx, gw;
    const int n_gl = 16;
    gauss_legendre(n_gl, gx, gw);
    const int n_panels = std::max(8, cfg.M_far / (2 * n_gl));
    const double a = cfg.delta, b = two_pi - cfg.delta;
    double far = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double pa = a + (b - a) * p / n_panels;
        const double pb = a + (b - a) * (p + 1) / n_panels;
        for (int i = 0; i < n_gl; ++i) {
            const double u = 0.5 * (pa + pb) + 0.5 * (pb - pa) * gx[static_cast<size_t>(i)];
            const double kern = std::pow(std::abs(2.0 * std::sin(0.5 * u)), -alpha);
            far += 0.5 * (pb - pa) * gw[static_cast<size_t>(i)] * h(y0 + u) * kern;
        }
    }
    far /= two_pi;
    return near + far;
}

} // namespace

double mean_integral_singular(const std::function<double(double)>& h, double y0, double alpha,
                              const QuadratureConfig& cfg) {
    check_alpha_range(alpha);
    double scale = std::abs(h(y0 + 1.0)) + std::abs(h(y0 + 2.0)) + 1e-30;
    if (std::abs(h(y0)) > 1e-10 * scale)
        throw validation_error("mean_integral_singular requires h(y0) = 0");
    if (cfg.scheme == SingularScheme::gauss_jacobi_split) return split_pass(h, y0, alpha, cfg);
    const double coarse = subtraction_pass(h, y0, alpha, cfg.M_far);
    if (!cfg.self_test) return coarse;
    const double fine = subtraction_pass(h, y0, alpha, 2 * cfg.M_far);
    const double drift = std::abs(fine - coarse);
    if (drift > cfg.tol_quadrature * std::max(1.0, std::abs(fine)))
        throw quadrature_error("quadrature self-test failed: doubling drift " +
                               std::to_string(drift) + " exceeds tolerance");
    return fine;
}

namespace {

// Nodes/weights from a symmetric tridiagonal Jacobi matrix.
void golub_welsch(const std::vector<double>& diag, const std::vector<double>& subdiag, double mu0,
                  std::vector<double>& nodes, std::vector<double>& weights) {
    const int n = static_cast<int>(diag.size());
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
    Eigen::VectorXd e(n - 1 > 0 ? n - 1 : 0);
    for (int i = 0; i + 1 < n; ++i) e[i] = subdiag[static_cast<size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw quadrature_error("Golub-Welsch eigensolve failed");
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        nodes[static_cast<size_t>(i)] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        weights[static_cast<size_t>(i)] = mu0 * v0 * v0;
    }
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw validation_error("gauss_legendre needs n >= 1");
    std::vector<double> diag(static_cast<size_t>(n), 0.0), sub(static_cast<size_t>(n - 1));
    for (int k = 1; k < n; ++k)
        sub[static_cast<size_t>(k - 1)] = k / std::sqrt(4.0 * k * k - 1.0);
    golub_welsch(diag, sub, 2.0, nodes, weights);
}

void gauss_jacobi01(int n, double beta, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw validation_error("gauss_jacobi01 needs n >= 1");
    if (!(beta > -1.0)) throw validation_error("gauss_jacobi01 needs beta > -1");
    // Jacobi weight (1+x)^beta on [-1,1], then map t = (1+x)/2.
    const double a = 0.0, b = beta;
    std::vector<double> diag(static_cast<size_t>(n)), sub(static_cast<size_t>(n - 1 > 0 ? n - 1 : 0));
    diag[0] = (b - a) / (a + b + 2.0);
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        diag[static_cast<size_t>(k)] = (b * b - a * a) / (s * (s + 2.0));
        sub[static_cast<size_t>(k - 1)] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) /
                                                    (s * s * (s + 1.0) * (s - 1.0)));
    }
    const double mu0 = std::exp2(a + b + 1.0) * std::exp(log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                                                         log_gamma(a + b + 2.0));
    std::vector<double> x, w;
    golub_welsch(diag, sub, mu0, x, w);
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    const double scale = std::exp2(-(beta + 1.0));
    for (int i = 0; i < n; ++i) {
        nodes[static_cast<size_t>(i)] = 0.5 * (1.0 + x[static_cast<size_t>(i)]);
        weights[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] * scale;
    }
}

double self_kernel_denominator(double s, double x, double y, double px, double py, double Rx,
                               double Ry) {
    const double dp = px - py;
    const double sh = 2.0 * std::sin(0.5 * (x - y));
    const double D = s * s * dp * dp + Rx * Ry * sh * sh;
    if (!(D > 0.0) && x != y)
        throw degenerate_boundary_error("self-interaction chord distance vanished off-diagonal");
    return D;
}

double cross_kernel_denominator(double eps, double d, double bi, double bt, double x, double y,
                                double Ri, double Rt) {
    const double cx = eps * bi * Ri * std::cos(x) + eps * bt * Rt * std::cos(y) - d;
    const double cy = eps * bi * Ri * std::sin(x) + eps * bt * Rt * std::sin(y);
    const double Q = cx * cx + cy * cy;
    if (!(Q > 0.0)) throw degenerate_boundary_error("interpatch distance vanished");
    return Q;
}

namespace {

double radius_at(const CosineSeries& p, const PairGeometry& g, int patch_index, double x) {
    const double b = patch_index == 1 ? g.b1 : g.b2;
    const double R = 1.0 + signed_size_param(g.eps, g.alpha, b) * p.eval(x);
    if (!(R > 0.0))
        throw degenerate_boundary_error("radius 1 + s*p became non-positive");
    return R;
}

} // namespace

double self_kernel_denominator(const CosineSeries& p, const PairGeometry& g, int patch_index,
                               double x, double y) {
    if (patch_index != 1 && patch_index != 2)
        throw validation_error("patch_index must be 1 or 2");
    const double b = patch_index == 1 ? g.b1 : g.b2;
    const double s = signed_size_param(g.eps, g.alpha, b);
    const double D = self_kernel_denominator(s, x, y, p.eval(x), p.eval(y),
                                             radius_at(p, g, patch_index, x),
                                             radius_at(p, g, patch_index, y));
    return std::pow(D, 0.5 * g.alpha);
}

double cross_kernel_denominator(const CosineSeries& p1, const CosineSeries& p2,
                                const PairGeometry& g, int i, double x, double y) {
    if (i != 1 && i != 2) throw validation_error("patch index i must be 1 or 2");
    const CosineSeries& pi_ = i == 1 ? p1 : p2;
    const CosineSeries& pt = i == 1 ? p2 : p1;
    const double bi = i == 1 ? g.b1 : g.b2;
    const double bt = i == 1 ? g.b2 : g.b1;
    const double Q = cross_kernel_denominator(g.eps, g.d, bi, bt, x, y,
                                              radius_at(pi_, g, i, x),
                                              radius_at(pt, g, 3 - i, y));
    return std::pow(Q, 0.5 * g.alpha);
}

KernelPow::KernelPow(double alpha) : alpha_(alpha), half_(0.5 * alpha) {
    check_alpha_range(alpha);
    const double m8 = 4.0 * alpha;
    if (std::abs(m8 - std::round(m8)) < 1e-12) {
        dyadic_ = true;
        m8_ = static_cast<int>(std::round(m8));
    }
}

double KernelPow::phi(double w) const {
    const double x = 1.0 + w;
    if (!(x > 0.0))
        throw degenerate_boundary_error("kernel power argument 1 + w must be positive");
    if (dyadic_) {
        // (1+w)^(-m/8): square-root chain; the telescoped difference keeps
        // phi exact near w = 0 (the factor w cancels algebraically).
        const double r2 = std::sqrt(x);
        const double r4 = std::sqrt(r2);
        const double r8 = std::sqrt(r4);
        double S = 1.0, rp = 1.0;
        for (int k = 1; k < m8_; ++k) {
            rp *= r8;
            S += rp;
        }
        const double rm = rp * r8; // r8^m
        return -S / (rm * (r2 + 1.0) * (r4 + 1.0) * (r8 + 1.0));
    }
    if (std::abs(w) < 1e-280) return -half_;
    return std::expm1(-half_ * std::log1p(w)) / w;
}

} // namespace gsqg
