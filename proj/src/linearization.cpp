#include "gsqg/linearization.hpp"

#include "gsqg/special.hpp"

#include <cmath>
#include <string>

namespace gsqg {

namespace {

double gamma2_effective(PairMode mode, const PairGeometry& geom) {
    // At the point limit the traveling second amplitude equals gamma1.
    return mode == PairMode::traveling ? geom.gamma1 : geom.gamma2;
}

std::vector<double> point_of(int i, const PairGeometry& geom, const SolveState& st,
                             const Workspace& ws) {
    return st.mode == PairMode::corotating ? eval_F_i1(i, geom, st, ws)
                                           : eval_G_i1(i, geom, st, ws);
}

} // namespace

ResidualPair trivial_apply(PairMode mode, const PairGeometry& geom, const TrivialTangent& t,
                           int N) {
    if (t.h1.modes() != N || t.h2.modes() != N)
        throw validation_error("trivial_apply: tangent mode count != N");
    const std::vector<double> sig = sigma_table(N, geom.alpha, SigmaNorm::calibrated);
    const double g1 = geom.gamma1;
    const double g2 = gamma2_effective(mode, geom);
    ResidualPair out;
    out.r1 = SineSeries(N);
    out.r2 = SineSeries(N);
    for (int j = 1; j <= N; ++j) {
        const size_t idx = static_cast<size_t>(j - 1);
        out.r1.a[idx] = j * sig[idx] * g1 * t.h1.a[idx];
        out.r2.a[idx] = j * sig[idx] * g2 * t.h2.a[idx];
    }
    if (mode == PairMode::corotating) {
        const double Om = omega_star(geom);
        const double xb = xbar_star(geom);
        out.r1.a[0] += -xb * t.beta1 - Om * t.beta2;
        out.r2.a[0] += (xb - geom.d) * t.beta1 + Om * t.beta2;
    } else {
        const double kap = geom.alpha * c_alpha(geom.alpha) /
                           (2.0 * std::pow(geom.d, 1.0 + geom.alpha));
        out.r1.a[0] += -t.beta1 + kap * t.beta2;
        out.r2.a[0] += -t.beta1;
    }
    return out;
}

TrivialTangent trivial_inverse(PairMode mode, const PairGeometry& geom, const SineSeries& y1,
                               const SineSeries& y2) {
    const int N = y1.modes();
    if (y2.modes() != N || N < 1)
        throw validation_error("trivial_inverse: sine series sizes must match, N >= 1");
    const std::vector<double> sig = sigma_table(N, geom.alpha, SigmaNorm::calibrated);
    const double g1 = geom.gamma1;
    const double g2 = gamma2_effective(mode, geom);
    TrivialTangent t;
    t.h1 = CosineSeries(N);
    t.h2 = CosineSeries(N);
    for (int j = 2; j <= N; ++j) {
        const size_t idx = static_cast<size_t>(j - 1);
        const double den1 = j * sig[idx] * g1;
        const double den2 = j * sig[idx] * g2;
        if (std::abs(den1) < 1e-300 || std::abs(den2) < 1e-300)
            throw validation_error("trivial_inverse: vanishing multiplier at j = " +
                                   std::to_string(j));
        t.h1.a[idx] = y1.a[idx] / den1;
        t.h2.a[idx] = y2.a[idx] / den2;
    }
    if (mode == PairMode::corotating) {
        const double Om = omega_star(geom);
        const double xb = xbar_star(geom);
        t.beta1 = -(y1.a[0] + y2.a[0]) / geom.d;
        t.beta2 = (xb * y2.a[0] + (xb - geom.d) * y1.a[0]) / (Om * geom.d);
    } else {
        const double kap = geom.alpha * c_alpha(geom.alpha) /
                           (2.0 * std::pow(geom.d, 1.0 + geom.alpha));
        t.beta1 = -y2.a[0];
        t.beta2 = (y1.a[0] - y2.a[0]) / kap;
    }
    return t;
}

int unknown_count(int N) {
    return 2 * N;
}

std::vector<double> pack_unknowns(const SolveState& state) {
    const int N = state.p1.modes();
    std::vector<double> u;
    u.reserve(static_cast<size_t>(unknown_count(N)));
    u.push_back(state.scalar1);
    u.push_back(state.scalar2);
    for (int j = 2; j <= N; ++j) u.push_back(state.p1.a[static_cast<size_t>(j - 1)]);
    for (int j = 2; j <= N; ++j) u.push_back(state.p2.a[static_cast<size_t>(j - 1)]);
    return u;
}

void unpack_unknowns(const std::vector<double>& u, SolveState& state) {
    const int N = state.p1.modes();
    if (static_cast<int>(u.size()) != unknown_count(N))
        throw validation_error("unpack_unknowns: vector length mismatch");
    state.scalar1 = u[0];
    state.scalar2 = u[1];
    state.p1.a[0] = 0.0;
    state.p2.a[0] = 0.0;
    size_t k = 2;
    for (int j = 2; j <= N; ++j) state.p1.a[static_cast<size_t>(j - 1)] = u[k++];
    for (int j = 2; j <= N; ++j) state.p2.a[static_cast<size_t>(j - 1)] = u[k++];
}

namespace {

std::vector<double> stack_projection(const Workspace& ws, const std::vector<double>& v1,
                                     const std::vector<double>& v2) {
    const SineProjection s1 = ws.project(v1);
    const SineProjection s2 = ws.project(v2);
    std::vector<double> r;
    r.reserve(s1.coeffs.a.size() + s2.coeffs.a.size());
    r.insert(r.end(), s1.coeffs.a.begin(), s1.coeffs.a.end());
    r.insert(r.end(), s2.coeffs.a.begin(), s2.coeffs.a.end());
    return r;
}

std::vector<double> sum3(const std::vector<double>& a, const std::vector<double>& b,
                         const std::vector<double>& c) {
    std::vector<double> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i] + c[i];
    return out;
}

// Residual stacked vector after perturbing one coefficient of one patch,
// reusing the unperturbed other-patch frame and self blocks.
std::vector<double> perturbed_residual(const PairGeometry& geom, const SolveState& st, int patch,
                                       const Workspace& ws, const AssemblyParts& base) {
    const std::vector<double> pt = point_of(patch, geom, st, ws);
    const std::vector<double> self = eval_F_i2(patch, geom, st, ws);
    const std::vector<double> cr1 = eval_F_i3(1, geom, st, ws);
    const std::vector<double> cr2 = eval_F_i3(2, geom, st, ws);
    std::vector<double> v1, v2;
    if (patch == 1) {
        v1 = sum3(pt, self, cr1);
        v2 = sum3(base.point2, base.self2, cr2);
    } else {
        v1 = sum3(base.point1, base.self1, cr1);
        v2 = sum3(pt, self, cr2);
    }
    return stack_projection(ws, v1, v2);
}

} // namespace

Eigen::MatrixXd fd_jacobian(const PairGeometry& geom, const SolveState& state,
                            const Workspace& ws, const FdOptions& opt) {
    const int N = ws.N;
    if (state.p1.modes() != N || state.p2.modes() != N)
        throw validation_error("fd_jacobian: state mode count != workspace N");
    const int dim = unknown_count(N);
    Eigen::MatrixXd J(dim, dim);
    const AssemblyParts base = assemble_parts(geom, state, ws);
    const std::vector<double> v1_0 = sum3(base.point1, base.self1, base.cross1);
    const std::vector<double> v2_0 = sum3(base.point2, base.self2, base.cross2);
    const std::vector<double> r0 = stack_projection(ws, v1_0, v2_0);

    auto set_col = [&](int c, const std::vector<double>& col) {
        for (int r = 0; r < dim; ++r) J(r, c) = col[static_cast<size_t>(r)];
    };

    bool scalars_done = false;
    if (opt.analytic_scalar_columns) {
        if (state.mode == PairMode::corotating) {
            SolveState s1 = state;
            s1.scalar1 = 1.0;
            set_col(0, stack_projection(ws, point_of(1, geom, s1, ws), point_of(2, geom, s1, ws)));
            SolveState sx1 = state, sx0 = state;
            sx1.scalar2 = 1.0;
            sx0.scalar2 = 0.0;
            const std::vector<double> p11 = point_of(1, geom, sx1, ws);
            const std::vector<double> p10 = point_of(1, geom, sx0, ws);
            const std::vector<double> p21 = point_of(2, geom, sx1, ws);
            const std::vector<double> p20 = point_of(2, geom, sx0, ws);
            std::vector<double> d1(p11.size()), d2(p21.size());
            for (size_t i = 0; i < d1.size(); ++i) {
                d1[i] = p11[i] - p10[i];
                d2[i] = p21[i] - p20[i];
            }
            set_col(1, stack_projection(ws, d1, d2));
            scalars_done = true;
        } else if (std::abs(state.scalar2) > 1e-12) {
            SolveState s1 = state;
            s1.scalar1 = 1.0;
            set_col(0, stack_projection(ws, point_of(1, geom, s1, ws), point_of(2, geom, s1, ws)));
            // residual is linear in gamma2: patch-1 cross and patch-2 self scale with it
            std::vector<double> d1(base.cross1.size()), d2(base.self2.size());
            for (size_t i = 0; i < d1.size(); ++i) {
                d1[i] = base.cross1[i] / state.scalar2;
                d2[i] = base.self2[i] / state.scalar2;
            }
            set_col(1, stack_projection(ws, d1, d2));
            scalars_done = true;
        }
    }

    const std::vector<double> u0 = pack_unknowns(state);
    for (int c = 0; c < dim; ++c) {
        if (c < 2 && scalars_done) continue;
        const double h = opt.h * (1.0 + std::abs(u0[static_cast<size_t>(c)]));
        const int patch = (c < 2) ? 0 : (c < 2 + (N - 1) ? 1 : 2);
        auto eval_at = [&](double step) {
            std::vector<double> u = u0;
            u[static_cast<size_t>(c)] += step;
            SolveState st = state;
            unpack_unknowns(u, st);
            if (patch == 0) {
                const AssemblyParts p = assemble_parts(geom, st, ws);
                return stack_projection(ws, sum3(p.point1, p.self1, p.cross1),
                                        sum3(p.point2, p.self2, p.cross2));
            }
            return perturbed_residual(geom, st, patch, ws, base);
        };
        std::vector<double> col(static_cast<size_t>(dim));
        if (opt.scheme == FdScheme::forward) {
            const std::vector<double> rp = eval_at(h);
            for (int r = 0; r < dim; ++r)
                col[static_cast<size_t>(r)] = (rp[static_cast<size_t>(r)] - r0[static_cast<size_t>(r)]) / h;
        } else {
            const std::vector<double> rp = eval_at(h);
            const std::vector<double> rm = eval_at(-h);
            for (int r = 0; r < dim; ++r)
                col[static_cast<size_t>(r)] =
                    (rp[static_cast<size_t>(r)] - rm[static_cast<size_t>(r)]) / (2.0 * h);
        }
        set_col(c, col);
    }
    return J;
}

Eigen::MatrixXd trivial_matrix(PairMode mode, const PairGeometry& geom, int N) {
    const int dim = unknown_count(N);
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim, dim);
    auto stack = [&](const ResidualPair& r) {
        Eigen::VectorXd v(dim);
        for (int j = 0; j < N; ++j) {
            v[j] = r.r1.a[static_cast<size_t>(j)];
            v[N + j] = r.r2.a[static_cast<size_t>(j)];
        }
        return v;
    };
    for (int c = 0; c < dim; ++c) {
        TrivialTangent t;
        t.h1 = CosineSeries(N);
        t.h2 = CosineSeries(N);
        if (c == 0)
            t.beta1 = 1.0;
        else if (c == 1)
            t.beta2 = 1.0;
        else if (c < 2 + (N - 1))
            t.h1.a[static_cast<size_t>(c - 2 + 1)] = 1.0;
        else
            t.h2.a[static_cast<size_t>(c - 2 - (N - 1) + 1)] = 1.0;
        L.col(c) = stack(trivial_apply(mode, geom, t, N));
    }
    return L;
}

} // namespace gsqg
