// evolve.cpp
#include "core/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qramp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Number of spins that flip between basis states a and b.
int hamming(long a, long b) {
    unsigned long long x = static_cast<unsigned long long>(a ^ b);
    int c = 0;
    while (x) {
        x &= x - 1;
        ++c;
    }
    return c;
}

}  // namespace

double default_dt(const Model& model) {
    double b0 = model.spec().B0;
    cxmat H = model.hamiltonian(b0, 0.0);
    Eigen::SelfAdjointEigenSolver<cxmat> es(H, Eigen::EigenvaluesOnly);
    double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    if (!(norm > 0)) return 1e-3;
    return std::min(1e-3, 0.05 / norm);
}

std::vector<double> step_times(const Schedule& sched, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("step_times: dt must be positive");
    std::vector<double> out{0.0};
    for (long i = 1; i < sched.t.size(); ++i) {
        double a = sched.t(i - 1), b = sched.t(i);
        if (!(b > a)) continue;  // stalled-ramp knots collapse to one point
        long m = std::max<long>(1, static_cast<long>(std::ceil((b - a) / dt - 1e-12)));
        for (long k = 1; k <= m; ++k) out.push_back(a + (b - a) * k / m);
    }
    if (out.size() < 2) throw std::invalid_argument("step_times: schedule spans no time");
    out.back() = sched.t_f;
    return out;
}

ClosedResult evolve_closed(const Model& model, const Schedule& sched, const cxvec& psi0,
                           const IntegratorConfig& cfg, TrajectorySink* sink) {
    if (psi0.size() != model.dim())
        throw std::invalid_argument("evolve_closed: state dimension does not match model basis");
    if (std::abs(psi0.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("evolve_closed: initial state is not normalized");

    // RK4 contracts the norm by ~(E dt)^6 per step with E the absolute state
    // energy; unlike the trace-exact Lindblad paths this accumulates, so the
    // closed default runs a finer step.
    const double dt = cfg.dt > 0 ? cfg.dt : 0.25 * default_dt(model);
    const double t_f = sched.t_f;
    const std::vector<double> times = step_times(sched, dt);
    const long n = static_cast<long>(times.size()) - 1;
    const bool dd = model.spec().dd_omega != 0.0;

    auto rhs = [&](double t, const cxvec& v) -> cxvec {
        double env = dd ? std::sin(kPi * t / t_f) : 0.0;
        return cxd(0, -1) * (model.hamiltonian(sched.value(t), env) * v);
    };
    auto sample = [&](double t, const cxvec& v) {
        if (!sink) return;
        double fid = sink->target ? fidelity(v, *sink->target) : 0.0;
        double nrm2 = v.squaredNorm();
        sink->rows.push_back({t, fid, nrm2, nrm2 * nrm2});
    };

    cxvec psi = psi0;
    sample(0.0, psi);
    for (long s = 0; s < n; ++s) {
        double t = times[s];
        double h = times[s + 1] - t;
        cxvec k1 = rhs(t, psi);
        cxvec k2 = rhs(t + h / 2, psi + (h / 2) * k1);
        cxvec k3 = rhs(t + h / 2, psi + (h / 2) * k2);
        cxvec k4 = rhs(t + h, psi + h * k3);
        psi += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        if (sink && sink->stride > 0 && ((s + 1) % sink->stride == 0 || s + 1 == n))
            sample(times[s + 1], psi);
    }

    ClosedResult out;
    out.psi = std::move(psi);
    out.norm_drift = std::abs(out.psi.norm() - 1.0);
    out.dt = dt;
    if (out.norm_drift > 1e-6)
        throw std::runtime_error("evolve_closed: norm drift " + std::to_string(out.norm_drift) +
                                 " exceeds 1e-6; reduce dt");
    return out;
}

OpenResult evolve_lindblad(const Model& model, const Schedule& sched, const cxmat& rho0,
                           const IntegratorConfig& cfg, TrajectorySink* sink) {
    if (model.basis().kind != Basis::FullSpin)
        throw std::invalid_argument(
            "evolve_lindblad: local dephasing requires the FullSpin basis");
    const long d = model.dim();
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("evolve_lindblad: rho dimension does not match model basis");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("evolve_lindblad: rho0 is not Hermitian");
    if (std::abs(rho0.trace().real() - 1.0) > 1e-6)
        throw std::invalid_argument("evolve_lindblad: rho0 trace is not 1");

    const ModelSpec& spec = model.spec();
    const int N = spec.N;
    const double g_ms = spec.gamma_per_ms();
    const double dt = cfg.dt > 0 ? cfg.dt : default_dt(model);
    const double t_f = sched.t_f;
    const std::vector<double> times = step_times(sched, dt);
    const long n = static_cast<long>(times.size()) - 1;
    const bool dd = spec.dd_omega != 0.0;
    const DephasingAxis axis = spec.dephasing_axis();

    // sigma^z dephasing damps coherences elementwise: (Gamma/2)(sum_i z_a,i z_b,i - N)
    // = -Gamma * hamming(a, b).
    dmat mask;
    if (axis == DephasingAxis::Z && g_ms != 0.0) {
        mask.resize(d, d);
        for (long a = 0; a < d; ++a)
            for (long b = 0; b < d; ++b) mask(a, b) = -g_ms * hamming(a, b);
    }
    // sigma^x_i rho sigma^x_i permutes both indices by the bit flip at site i.
    std::vector<Eigen::PermutationMatrix<Eigen::Dynamic>> flips;
    if (axis == DephasingAxis::X && g_ms != 0.0) {
        for (int i = 0; i < N; ++i) {
            long bit = 1L << (N - 1 - i);
            Eigen::VectorXi idx(d);
            for (long a = 0; a < d; ++a) idx(a) = static_cast<int>(a ^ bit);
            flips.emplace_back(idx);
        }
    }

    auto rhs = [&](double t, const cxmat& rho) -> cxmat {
        double env = dd ? std::sin(kPi * t / t_f) : 0.0;
        cxmat H = model.hamiltonian(sched.value(t), env);
        cxmat G = H * rho;
        cxmat out = cxd(0, -1) * (G - G.adjoint());
        if (g_ms != 0.0) {
            if (axis == DephasingAxis::Z) {
                out += mask.cwiseProduct(rho);
            } else {
                for (const auto& p : flips) out += (g_ms / 2) * (p * rho * p);
                out -= (g_ms * N / 2) * rho;
            }
        }
        return out;
    };
    auto sample = [&](double t, const cxmat& rho) {
        if (!sink) return;
        double fid = sink->target ? fidelity(rho, *sink->target) : 0.0;
        double tr = rho.trace().real();
        double pur = (rho * rho).trace().real();
        sink->rows.push_back({t, fid, tr, pur});
    };

    cxmat rho = rho0;
    sample(0.0, rho);
    for (long s = 0; s < n; ++s) {
        double t = times[s];
        double h = times[s + 1] - t;
        cxmat k1 = rhs(t, rho);
        cxmat k2 = rhs(t + h / 2, rho + (h / 2) * k1);
        cxmat k3 = rhs(t + h / 2, rho + (h / 2) * k2);
        cxmat k4 = rhs(t + h, rho + h * k3);
        rho += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        if (sink && sink->stride > 0 && ((s + 1) % sink->stride == 0 || s + 1 == n))
            sample(times[s + 1], rho);
    }

    OpenResult out;
    out.herm_deviation = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    rho = 0.5 * (rho + rho.adjoint().eval());
    out.trace_drift = std::abs(rho.trace().real() - 1.0);
    Eigen::SelfAdjointEigenSolver<cxmat> es(rho, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    out.rho = std::move(rho);
    out.dt = dt;
    if (out.trace_drift > 1e-6)
        throw std::runtime_error("evolve_lindblad: trace drift " +
                                 std::to_string(out.trace_drift) + " exceeds 1e-6; reduce dt");
    if (out.min_eigenvalue < -1e-5)
        throw std::runtime_error("evolve_lindblad: negative eigenvalue " +
                                 std::to_string(out.min_eigenvalue) + " below -1e-5; reduce dt");
    return out;
}

double fidelity(const cxmat& rho, const cxvec& target, double* imag_residue) {
    if (rho.rows() != target.size())
        throw std::invalid_argument("fidelity: basis dimensions do not match");
    cxd val = target.adjoint() * rho * target;
    if (imag_residue) *imag_residue = std::abs(val.imag());
    return val.real();
}

double fidelity(const cxvec& psi, const cxvec& target) {
    if (psi.size() != target.size())
        throw std::invalid_argument("fidelity: basis dimensions do not match");
    return std::norm(target.dot(psi));
}

ConvergenceReport convergence_probe_closed(const Model& model, const Schedule& sched,
                                           const cxvec& psi0, const cxvec& target,
                                           const IntegratorConfig& cfg) {
    IntegratorConfig c = cfg;
    if (c.dt <= 0) c.dt = 0.25 * default_dt(model);
    ConvergenceReport r;
    r.value_dt = fidelity(evolve_closed(model, sched, psi0, c).psi, target);
    c.dt /= 2;
    r.value_half_dt = fidelity(evolve_closed(model, sched, psi0, c).psi, target);
    r.error_estimate = std::abs(r.value_dt - r.value_half_dt) * 16.0 / 15.0;
    return r;
}

ConvergenceReport convergence_probe_lindblad(const Model& model, const Schedule& sched,
                                             const cxmat& rho0, const cxvec& target,
                                             const IntegratorConfig& cfg) {
    IntegratorConfig c = cfg;
    if (c.dt <= 0) c.dt = default_dt(model);
    ConvergenceReport r;
    r.value_dt = fidelity(evolve_lindblad(model, sched, rho0, c).rho, target);
    c.dt /= 2;
    r.value_half_dt = fidelity(evolve_lindblad(model, sched, rho0, c).rho, target);
    r.error_estimate = std::abs(r.value_dt - r.value_half_dt) * 16.0 / 15.0;
    return r;
}

}  // namespace qramp
