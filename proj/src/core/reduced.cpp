// reduced.cpp
#include "core/reduced.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qramp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

struct SpinOps {
    cxmat Sx, Sy2, Sz2;
};

// Spin-j representation, m descending from j to -j (j = two_j / 2).
SpinOps spin_ops(int two_j) {
    int n = two_j + 1;
    double j = two_j / 2.0;
    cxmat Sp = cxmat::Zero(n, n), Sz = cxmat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double m = j - i;
        Sz(i, i) = m;
        if (i > 0) Sp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    cxmat Sm = Sp.adjoint();
    SpinOps ops;
    ops.Sx = 0.5 * (Sp + Sm);
    cxmat Sy = cxd(0, -0.5) * (Sp - Sm);
    ops.Sy2 = Sy * Sy;
    ops.Sz2 = Sz * Sz;
    return ops;
}

}  // namespace

long sector_multiplicity(int N, int two_j) {
    if (two_j < 0 || two_j > N || (N - two_j) % 2 != 0) return 0;
    int k = (N - two_j) / 2;
    return static_cast<long>(std::llround(binom(N, k) - binom(N, k - 1)));
}

long reduced_dim(int N) {
    long total = 0;
    for (int two_j = N; two_j >= 0; two_j -= 2) total += (two_j + 1L) * (two_j + 1L);
    return total;
}

ReducedResult evolve_reduced(const ModelSpec& spec, const Schedule& sched, const cxvec& psi0,
                             const IntegratorConfig& cfg) {
    if (spec.variant != Variant::Lipkin)
        throw std::invalid_argument("evolve_reduced: collective fast path covers Lipkin only");
    if (spec.dephasing_axis() != DephasingAxis::Z)
        throw std::invalid_argument("evolve_reduced: requires z-axis dephasing");
    const int N = spec.N;
    if (psi0.size() != N + 1)
        throw std::invalid_argument("evolve_reduced: psi0 must live in the symmetric sector");
    if (std::abs(psi0.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("evolve_reduced: initial state is not normalized");

    const int S = N / 2 + 1;  // sector count; j = N/2 - s, two_j = N - 2s
    std::vector<SpinOps> ops(S);
    std::vector<double> mult(S);
    for (int s = 0; s < S; ++s) {
        ops[s] = spin_ops(N - 2 * s);
        mult[s] = static_cast<double>(sector_multiplicity(N, N - 2 * s));
    }

    // Dephasing transfer weights per sector, all at fixed (m, m'):
    //   stay(m,m')        multiplies p_j(m,m')
    //   from_below(m,m')  multiplies p_{j-1}(m,m')   (shared parent j1 = j - 1/2)
    //   from_above(m,m')  multiplies p_{j+1}(m,m')   (shared parent j1 = j + 1/2)
    // Weights follow from the single-site Clebsch-Gordan elements of sigma^z
    // aggregated over the sector multiplicities.
    std::vector<dmat> stay(S), from_below(S), from_above(S);
    auto d1 = [&](int two_j1) { return static_cast<double>(sector_multiplicity(N - 1, two_j1)); };
    for (int s = 0; s < S; ++s) {
        int two_j = N - 2 * s;
        double j = two_j / 2.0;
        int n = two_j + 1;
        double dj = mult[s];
        stay[s].setZero(n, n);
        from_below[s].setZero(n, n);
        from_above[s].setZero(n, n);
        for (int r = 0; r < n; ++r) {
            double m = j - r;
            for (int c = 0; c < n; ++c) {
                double mp = j - c;
                double acc = 0;
                if (two_j > 0) acc += d1(two_j - 1) * m * mp / (j * j);
                acc += d1(two_j + 1) * m * mp / ((j + 1) * (j + 1));
                stay[s](r, c) = N * acc / dj;
                if (two_j > 0)
                    from_below[s](r, c) = N * d1(two_j - 1) *
                                          std::sqrt((j * j - m * m) * (j * j - mp * mp)) /
                                          (j * j * dj);
                from_above[s](r, c) = N * d1(two_j + 1) *
                                      std::sqrt(((j + 1) * (j + 1) - m * m) *
                                                ((j + 1) * (j + 1) - mp * mp)) /
                                      ((j + 1) * (j + 1) * dj);
            }
        }
    }

    const double j_total = spec.signed_J();
    const double g_ms = spec.gamma_per_ms();
    const double t_f = sched.t_f;
    const bool dd = spec.dd_omega != 0.0;

    double dt = cfg.dt;
    if (dt <= 0) {
        cxmat H0 = (j_total / N) * ops[0].Sz2 + spec.B0 * ops[0].Sx;
        Eigen::SelfAdjointEigenSolver<cxmat> es(H0, Eigen::EigenvaluesOnly);
        dt = std::min(1e-3, 0.05 / es.eigenvalues().cwiseAbs().maxCoeff());
    }
    const std::vector<double> times = step_times(sched, dt);
    const long nsteps = static_cast<long>(times.size()) - 1;

    using Blocks = std::vector<cxmat>;
    Blocks p(S);
    p[0] = psi0 * psi0.adjoint();
    for (int s = 1; s < S; ++s) p[s].setZero(N - 2 * s + 1, N - 2 * s + 1);

    auto rhs = [&](double t, const Blocks& q) -> Blocks {
        double B = sched.value(t);
        double env = dd ? spec.dd_omega * std::sin(kPi * t / t_f) : 0.0;
        Blocks out(S);
        for (int s = 0; s < S; ++s) {
            cxmat H = (j_total / N) * ops[s].Sz2 + B * ops[s].Sx;
            if (env != 0.0) H += env * ops[s].Sy2;
            cxmat G = H * q[s];
            out[s] = cxd(0, -1) * (G - G.adjoint());
            if (g_ms == 0.0) continue;
            int n = N - 2 * s + 1;
            cxmat diss = stay[s].cwiseProduct(q[s]);
            if (s + 1 < S)  // p_{j-1} entries sit one step inside the j block
                diss.block(1, 1, n - 2, n - 2) +=
                    from_below[s].block(1, 1, n - 2, n - 2).cwiseProduct(q[s + 1]);
            if (s > 0) diss += from_above[s].cwiseProduct(q[s - 1].block(1, 1, n, n));
            diss -= static_cast<double>(N) * q[s];
            out[s] += (g_ms / 2) * diss;
        }
        return out;
    };
    auto axpy = [&](const Blocks& a, double w, const Blocks& b) -> Blocks {
        Blocks out(S);
        for (int s = 0; s < S; ++s) out[s] = a[s] + w * b[s];
        return out;
    };

    for (long step = 0; step < nsteps; ++step) {
        double t = times[step];
        double h = times[step + 1] - t;
        Blocks k1 = rhs(t, p);
        Blocks k2 = rhs(t + h / 2, axpy(p, h / 2, k1));
        Blocks k3 = rhs(t + h / 2, axpy(p, h / 2, k2));
        Blocks k4 = rhs(t + h, axpy(p, h, k3));
        for (int s = 0; s < S; ++s)
            p[s] += (h / 6) * (k1[s] + 2 * k2[s] + 2 * k3[s] + k4[s]);
    }

    ReducedResult out;
    double trace = 0, mineig = 0;
    for (int s = 0; s < S; ++s) {
        p[s] = 0.5 * (p[s] + p[s].adjoint().eval());
        trace += mult[s] * p[s].trace().real();
        Eigen::SelfAdjointEigenSolver<cxmat> es(p[s], Eigen::EigenvaluesOnly);
        mineig = std::min(mineig, es.eigenvalues().minCoeff());
    }
    out.blocks = std::move(p);
    out.trace_drift = std::abs(trace - 1.0);
    out.min_eigenvalue = mineig;
    out.dt = dt;
    if (out.trace_drift > 1e-6)
        throw std::runtime_error("evolve_reduced: trace drift " + std::to_string(out.trace_drift) +
                                 " exceeds 1e-6; reduce dt");
    if (out.min_eigenvalue < -1e-5)
        throw std::runtime_error("evolve_reduced: negative eigenvalue " +
                                 std::to_string(out.min_eigenvalue) + " below -1e-5; reduce dt");
    return out;
}

double reduced_fidelity(const ReducedResult& r, const cxvec& target) {
    if (r.blocks.empty() || r.blocks[0].rows() != target.size())
        throw std::invalid_argument("reduced_fidelity: target dimension mismatch");
    cxd val = target.adjoint() * r.blocks[0] * target;
    return val.real();
}

}  // namespace qramp
