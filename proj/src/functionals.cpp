#include "gsqg/functionals.hpp"

#include "gsqg/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gsqg {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

Workspace::Workspace(double alpha_, int N_, int M_)
    : alpha(alpha_), N(N_), M(M_), grid(M_), kpow(alpha_),
      conv(SingularConvolution::build(alpha_, M_)), calpha(c_alpha(alpha_)) {
    if (N < 1) throw validation_error("Workspace needs N >= 1");
    if (M < 4 * N) throw validation_error("Workspace needs M >= 4N");
    sin_tab.resize(static_cast<size_t>(M));
    cos_tab.resize(static_cast<size_t>(M));
    s2h.resize(static_cast<size_t>(M));
    for (int l = 0; l < M; ++l) {
        sin_tab[static_cast<size_t>(l)] = std::sin(two_pi * l / M);
        cos_tab[static_cast<size_t>(l)] = std::cos(two_pi * l / M);
        s2h[static_cast<size_t>(l)] = 2.0 * std::sin(std::numbers::pi * l / M);
    }
}

SineProjection Workspace::project(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != M) throw validation_error("project: value count != M");
    SineProjection out;
    out.coeffs = SineSeries(N);
    for (int j = 1; j <= N; ++j) {
        double acc = 0.0;
        for (int m = 0; m < M; ++m)
            acc += v[static_cast<size_t>(m)] * sin_tab[static_cast<size_t>((j * m) % M)];
        out.coeffs.a[static_cast<size_t>(j - 1)] = 2.0 * acc / M;
    }
    double mean_sq = 0.0, mean = 0.0, alt = 0.0;
    for (int m = 0; m < M; ++m) {
        const double e = 0.5 * (v[static_cast<size_t>(m)] + v[static_cast<size_t>((M - m) % M)]);
        mean_sq += e * e;
        mean += e;
        alt += (m % 2 == 0 ? e : -e);
    }
    mean_sq /= M;
    mean /= M;
    alt /= M;
    out.parity_leak = std::sqrt(std::max(0.0, 2.0 * mean_sq - mean * mean - alt * alt));
    return out;
}

namespace {

struct ModeAmplitudes {
    double g1, g2; // vortex amplitudes in effect
};

ModeAmplitudes amplitudes(const PairGeometry& geom, const SolveState& state) {
    if (state.mode == PairMode::traveling) return {geom.gamma1, state.scalar2};
    return {geom.gamma1, geom.gamma2};
}

// Frame transport term. Corotating: rotation with speed Omega about
// (xbar, 0). Traveling: steady translation with speed U.
std::vector<double> point_block(int i, const PairGeometry& geom, const SolveState& state,
                                const Workspace& ws) {
    const double b = (i == 1) ? geom.b1 : geom.b2;
    const double s = signed_size_param(geom.eps, geom.alpha, b);
    const CosineSeries& p = (i == 1) ? state.p1 : state.p2;
    std::vector<double> out(static_cast<size_t>(ws.M));
    if (state.mode == PairMode::corotating) {
        const double Omega = state.scalar1;
        const double xbar = state.scalar2;
        const double center = (i == 1) ? -xbar : (xbar - geom.d);
        for (int m = 0; m < ws.M; ++m) {
            const double x = ws.grid.x[static_cast<size_t>(m)];
            const double dp = p.deriv(x);
            const double R = 1.0 + s * p.eval(x);
            out[static_cast<size_t>(m)] =
                -Omega * (geom.eps * b * s * dp +
                          center * (s * dp * ws.cos_tab[static_cast<size_t>(m)] / R -
                                    ws.sin_tab[static_cast<size_t>(m)]));
        }
    } else {
        const double U = state.scalar1;
        for (int m = 0; m < ws.M; ++m) {
            const double x = ws.grid.x[static_cast<size_t>(m)];
            const double dp = p.deriv(x);
            const double R = 1.0 + s * p.eval(x);
            out[static_cast<size_t>(m)] =
                -U * (ws.sin_tab[static_cast<size_t>(m)] -
                      s * dp * ws.cos_tab[static_cast<size_t>(m)] / R);
        }
    }
    return out;
}

// Same-patch interaction: product quadrature against the singular kernel of
// the chord distance, with the kernel power split so the point-limit factor
// cancels algebraically (stable uniformly in eps, including eps = 0).
std::vector<double> self_block(const PatchSamples& P, double s, double coef,
                               const Workspace& ws) {
    const int M = ws.M;
    std::vector<double> out(static_cast<size_t>(M));
    for (int m = 0; m < M; ++m) {
        const double px = P.p[static_cast<size_t>(m)];
        const double dpx = P.dp[static_cast<size_t>(m)];
        const double Rx = P.R[static_cast<size_t>(m)];
        double acc21 = 0.0, acc22 = 0.0, acc2334 = 0.0;
        for (int k = 0; k < M; ++k) {
            if (k == m) continue;
            const size_t l = static_cast<size_t>((k - m + M) % M);
            const double sin_xy = -ws.sin_tab[l]; // sin(x_m - y_k)
            const double cos_xy = ws.cos_tab[l];
            const double pk = P.p[static_cast<size_t>(k)];
            const double q = (px - pk) / ws.s2h[l];
            const double BAos = (px + pk) + s * (q * q + px * pk);
            const double w = s * BAos;
            const double ph = ws.kpow.phi(w);
            const double G = 1.0 + w * ph;
            const double E = ph * BAos;
            const double wc = ws.conv.w[l];
            acc21 += wc * (pk + P.R[static_cast<size_t>(k)] * E) * sin_xy;
            acc22 += wc * (P.dp[static_cast<size_t>(k)] - dpx) * cos_xy * G;
            acc2334 += wc * ((px - pk) * cos_xy + P.dp[static_cast<size_t>(k)] * sin_xy) * G;
        }
        out[static_cast<size_t>(m)] = coef * (acc21 + acc22 + s * dpx / Rx * acc2334);
    }
    return out;
}

// Other-patch interaction for target patch i. The interpatch distance equals
// d at the point limit; the deviation w = (Q - d^2)/d^2 carries an exact
// factor eps, so the eps-scaled kernel difference is evaluated without any
// small-eps branch.
std::vector<double> cross_block(const PatchSamples& Pi, const PatchSamples& Pt, double bi,
                                double bt, double coef_t, const PairGeometry& geom,
                                const Workspace& ws) {
    const int M = ws.M;
    const double eps = geom.eps;
    const double d = geom.d;
    const double alpha = geom.alpha;
    const double dma = std::pow(d, -alpha);
    const double epsa_bt = std::pow(std::abs(eps), alpha) * std::pow(bt, 1.0 + alpha);
    const double amp2 = eps * std::pow(std::abs(eps), 2.0 * alpha) * std::pow(bt, 1.0 + 2.0 * alpha);
    const double amp3 = std::pow(std::abs(eps), alpha) * std::pow(bt, alpha);
    std::vector<double> out(static_cast<size_t>(M));
    for (int m = 0; m < M; ++m) {
        const double Rx = Pi.R[static_cast<size_t>(m)];
        const double axm = bi * Rx;
        const double cosx = ws.cos_tab[static_cast<size_t>(m)];
        const double sinx = ws.sin_tab[static_cast<size_t>(m)];
        const double ptx = Pt.p[static_cast<size_t>(m)];
        const double dptx = Pt.dp[static_cast<size_t>(m)];
        const double Rtx = Pt.R[static_cast<size_t>(m)];
        double acc31a = 0.0, acc31b = 0.0, acc32 = 0.0, acc33 = 0.0, acc34 = 0.0;
        for (int k = 0; k < M; ++k) {
            const size_t l = static_cast<size_t>((k - m + M) % M);
            const double sin_xy = -ws.sin_tab[l];
            const double cos_xy = ws.cos_tab[l];
            const double ayk = bt * Pt.R[static_cast<size_t>(k)];
            const double Sx1 = axm * cosx + ayk * ws.cos_tab[static_cast<size_t>(k)];
            const double Sy1 = axm * sinx + ayk * ws.sin_tab[static_cast<size_t>(k)];
            const double wqoe = (eps * (Sx1 * Sx1 + Sy1 * Sy1) - 2.0 * d * Sx1) / (d * d);
            const double wq = eps * wqoe;
            const double ph = ws.kpow.phi(wq);
            const double Gq = 1.0 + wq * ph;
            const double E31 = ph * wqoe; // ((1+wq)^(-alpha/2) - 1) / eps
            acc31a += Pt.p[static_cast<size_t>(k)] * sin_xy;
            acc31b += Pt.R[static_cast<size_t>(k)] * sin_xy * E31;
            acc32 += Pt.dp[static_cast<size_t>(k)] * sin_xy * Gq;
            acc33 += (Pt.dp[static_cast<size_t>(k)] - dptx) * cos_xy * Gq;
            acc34 += (ptx - Pt.p[static_cast<size_t>(k)]) * cos_xy * Gq;
        }
        acc31a /= M;
        acc31b /= M;
        acc32 /= M;
        acc33 /= M;
        acc34 /= M;
        const double J = dma * (epsa_bt * acc31a + acc31b);
        const double f31 = coef_t * Rtx / (bt * Rx) * J;
        const double f32 = coef_t * amp2 * dptx / Rx * dma * acc32;
        const double f33 = coef_t * amp3 * Rtx / Rx * dma * acc33;
        const double f34 = coef_t * amp2 * dptx / Rx * dma * acc34;
        out[static_cast<size_t>(m)] = f31 + f32 + f33 + f34;
    }
    return out;
}

} // namespace

AssemblyParts assemble_parts(const PairGeometry& geom, const SolveState& state,
                             const Workspace& ws) {
    if (state.p1.modes() != ws.N || state.p2.modes() != ws.N)
        throw validation_error("state mode count does not match workspace N");
    const ModeAmplitudes g = amplitudes(geom, state);
    const double s1 = signed_size_param(geom.eps, geom.alpha, geom.b1);
    const double s2 = signed_size_param(geom.eps, geom.alpha, geom.b2);
    const PatchSamples P1 = sample_patch(state.p1, ws.grid, s1);
    const PatchSamples P2 = sample_patch(state.p2, ws.grid, s2);
    AssemblyParts parts;
    parts.point1 = point_block(1, geom, state, ws);
    parts.point2 = point_block(2, geom, state, ws);
    parts.self1 = self_block(P1, s1, ws.calpha * g.g1, ws);
    parts.self2 = self_block(P2, s2, ws.calpha * g.g2, ws);
    parts.cross1 = cross_block(P1, P2, geom.b1, geom.b2, ws.calpha * g.g2, geom, ws);
    parts.cross2 = cross_block(P2, P1, geom.b2, geom.b1, ws.calpha * g.g1, geom, ws);
    return parts;
}

std::vector<double> eval_F_i1(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws) {
    if (i != 1 && i != 2) throw validation_error("patch index must be 1 or 2");
    if (state.mode != PairMode::corotating)
        throw validation_error("eval_F_i1 expects a corotating state");
    return point_block(i, geom, state, ws);
}

std::vector<double> eval_G_i1(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws) {
    if (i != 1 && i != 2) throw validation_error("patch index must be 1 or 2");
    if (state.mode != PairMode::traveling)
        throw validation_error("eval_G_i1 expects a traveling state");
    return point_block(i, geom, state, ws);
}

std::vector<double> eval_F_i2(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws) {
    if (i != 1 && i != 2) throw validation_error("patch index must be 1 or 2");
    const ModeAmplitudes g = amplitudes(geom, state);
    const double b = (i == 1) ? geom.b1 : geom.b2;
    const double gi = (i == 1) ? g.g1 : g.g2;
    const double s = signed_size_param(geom.eps, geom.alpha, b);
    const PatchSamples P = sample_patch(i == 1 ? state.p1 : state.p2, ws.grid, s);
    return self_block(P, s, ws.calpha * gi, ws);
}

std::vector<double> eval_F_i3(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws) {
    if (i != 1 && i != 2) throw validation_error("patch index must be 1 or 2");
    const ModeAmplitudes g = amplitudes(geom, state);
    const double s1 = signed_size_param(geom.eps, geom.alpha, geom.b1);
    const double s2 = signed_size_param(geom.eps, geom.alpha, geom.b2);
    const PatchSamples P1 = sample_patch(state.p1, ws.grid, s1);
    const PatchSamples P2 = sample_patch(state.p2, ws.grid, s2);
    if (i == 1) return cross_block(P1, P2, geom.b1, geom.b2, ws.calpha * g.g2, geom, ws);
    return cross_block(P2, P1, geom.b2, geom.b1, ws.calpha * g.g1, geom, ws);
}

double ResidualPair::norm2() const {
    double acc = 0.0;
    for (double c : r1.a) acc += c * c;
    for (double c : r2.a) acc += c * c;
    return std::sqrt(acc);
}

std::vector<double> ResidualPair::stacked() const {
    std::vector<double> v;
    v.reserve(r1.a.size() + r2.a.size());
    v.insert(v.end(), r1.a.begin(), r1.a.end());
    v.insert(v.end(), r2.a.begin(), r2.a.end());
    return v;
}

namespace {

ResidualPair assemble_impl(const PairGeometry& geom, const SolveState& state,
                           const Workspace& ws) {
    validate_geometry(geom, state.mode);
    const AssemblyParts parts = assemble_parts(geom, state, ws);
    std::vector<double> v1(static_cast<size_t>(ws.M)), v2(static_cast<size_t>(ws.M));
    for (int m = 0; m < ws.M; ++m) {
        v1[static_cast<size_t>(m)] = parts.point1[static_cast<size_t>(m)] +
                                     parts.self1[static_cast<size_t>(m)] +
                                     parts.cross1[static_cast<size_t>(m)];
        v2[static_cast<size_t>(m)] = parts.point2[static_cast<size_t>(m)] +
                                     parts.self2[static_cast<size_t>(m)] +
                                     parts.cross2[static_cast<size_t>(m)];
    }
    const SineProjection s1 = ws.project(v1);
    const SineProjection s2 = ws.project(v2);
    ResidualPair out;
    out.r1 = s1.coeffs;
    out.r2 = s2.coeffs;
    out.parity_leak1 = s1.parity_leak;
    out.parity_leak2 = s2.parity_leak;
    return out;
}

} // namespace

ResidualPair assemble_F(const PairGeometry& geom, const SolveState& state, const Workspace& ws) {
    if (state.mode != PairMode::corotating)
        throw validation_error("assemble_F expects a corotating state");
    return assemble_impl(geom, state, ws);
}

ResidualPair assemble_G(const PairGeometry& geom, const SolveState& state, const Workspace& ws) {
    if (state.mode != PairMode::traveling)
        throw validation_error("assemble_G expects a traveling state");
    return assemble_impl(geom, state, ws);
}

ResidualPair assemble(const PairGeometry& geom, const SolveState& state, const Workspace& ws) {
    return assemble_impl(geom, state, ws);
}

double omega_star(const PairGeometry& geom) {
    if (geom.gamma1 + geom.gamma2 == 0.0)
        throw validation_error("omega_star undefined at zero total circulation");
    return geom.alpha * c_alpha(geom.alpha) * (geom.gamma1 + geom.gamma2) /
           (2.0 * std::pow(geom.d, 2.0 + geom.alpha));
}

double xbar_star(const PairGeometry& geom) {
    if (geom.gamma1 + geom.gamma2 == 0.0)
        throw validation_error("xbar_star undefined at zero total circulation");
    return geom.d * geom.gamma2 / (geom.gamma1 + geom.gamma2);
}

double u_star(const PairGeometry& geom) {
    return geom.alpha * c_alpha(geom.alpha) * geom.gamma1 /
           (2.0 * std::pow(geom.d, 1.0 + geom.alpha));
}

SolveState trivial_state(PairMode mode, const PairGeometry& geom, int N) {
    SolveState st;
    st.mode = mode;
    st.p1 = CosineSeries(N);
    st.p2 = CosineSeries(N);
    if (mode == PairMode::corotating) {
        st.scalar1 = omega_star(geom);
        st.scalar2 = xbar_star(geom);
    } else {
        st.scalar1 = u_star(geom);
        st.scalar2 = geom.gamma1;
    }
    return st;
}

} // namespace gsqg
