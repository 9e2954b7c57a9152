#pragma once

#include "gsqg/types.hpp"

#include <functional>
#include <vector>

namespace gsqg {

enum class SingularScheme { subtraction, gauss_jacobi_split };

struct QuadratureConfig {
    SingularScheme scheme = SingularScheme::subtraction;
    int M_far = 512;           // uniform grid size (subtraction) / far-field budget (split)
    int M_near = 64;           // Gauss-Jacobi node count (split scheme)
    double delta = 0.39269908169872414; // near-field half width, pi/8
    double tol_quadrature = 1e-11;
    bool self_test = true;     // doubling check (subtraction scheme)
};

// Mean value (1/2pi) Int_0^{2pi} f of a smooth periodic callback; uniform
// trapezoid, spectrally accurate.
double mean_integral(const std::function<double(double)>& f, int M);

// Mean integral (1/2pi) Int h(y) |2 sin((y - y0)/2)|^(-alpha) dy for smooth
// periodic h with h(y0) = 0 (required; checked). alpha in [1, 2).
double mean_integral_singular(const std::function<double(double)>& h, double y0, double alpha,
                              const QuadratureConfig& cfg = {});

// Product-quadrature weights on the uniform M-grid for the regularized kernel:
// with values h_k = h(2 pi k / M) and h_m = 0,
//   (1/2pi) Int h(y) |2 sin((x_m - y)/2)|^(-alpha) dy  ~=  sum_k w[(k-m) mod M] h_k
// exact whenever h is a trigonometric polynomial of degree < M/2 (the rule
// integrates the grid interpolant against the kernel using its cosine moments).
struct SingularConvolution {
    int M = 0;
    double alpha = 0.0;
    std::vector<double> w;

    static SingularConvolution build(double alpha, int M);
    // values must vanish at index m (the singular node is skipped).
    double apply(const std::vector<double>& values, int m) const;
};

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Gauss-Jacobi rule for Int_0^1 f(t) t^beta dt, beta > -1.
void gauss_jacobi01(int n, double beta, std::vector<double>& nodes, std::vector<double>& weights);

// Squared chord distance between boundary points of one patch, divided by the
// scale-free parameterization: s^2 (p(x)-p(y))^2 + 4 R(x) R(y) sin^2((x-y)/2).
// Throws degenerate_boundary_error if non-positive at x != y.
double self_kernel_denominator(double s, double x, double y, double px, double py, double Rx,
                               double Ry);

// Same quantity raised to the power alpha/2, evaluated from a cosine series
// for the selected patch. Zero exactly at x = y when p(x) = p(y).
double self_kernel_denominator(const CosineSeries& p, const PairGeometry& g, int patch_index,
                               double x, double y);

// Squared distance between a point of patch i (angle x, radius eps*bi*Ri) and
// one of the reflected second patch (angle y, radius eps*bt*Rt), centers d apart.
double cross_kernel_denominator(double eps, double d, double bi, double bt, double x, double y,
                                double Ri, double Rt);

// Same cross distance raised to alpha/2 from the two cosine series; strictly
// positive whenever d > 2(b1+b2) and |eps| < 1/2.
double cross_kernel_denominator(const CosineSeries& p1, const CosineSeries& p2,
                                const PairGeometry& g, int i, double x, double y);

// Stable evaluation of the kernel power (1 + w)^(-alpha/2) and its
// first-order difference quotient phi(w) = ((1+w)^(-alpha/2) - 1)/w
// (continuous at w = 0 with value -alpha/2). For dyadic alpha (4*alpha
// integral) a square-root chain avoids transcendental calls and keeps phi
// fully cancellation-free.
class KernelPow {
  public:
    explicit KernelPow(double alpha);
    double phi(double w) const;
    double G(double w) const { return 1.0 + w * phi(w); }
    double alpha() const { return alpha_; }

  private:
    double alpha_;
    double half_;
    int m8_ = 0; // alpha/2 = m8/8 when dyadic
    bool dyadic_ = false;
};

} // namespace gsqg
