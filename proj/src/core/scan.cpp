// scan.cpp
#include "core/scan.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace qramp {

std::pair<dvec, cxmat> eigendecompose(const cxmat& H) {
    double scale = H.cwiseAbs().maxCoeff();
    if (scale > 0 && (H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::invalid_argument("eigendecompose: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<cxmat> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecompose failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

dvec SpectralScan::gap(int k) const {
    if (k < 1 || k > K) throw std::invalid_argument("gap: level out of range");
    return energies.col(k) - energies.col(0);
}

dvec SpectralScan::coupling_abs(int k) const {
    if (k < 1 || k > K) throw std::invalid_argument("coupling_abs: level out of range");
    return couplings.col(k - 1).cwiseAbs();
}

std::vector<int> SpectralScan::coupled_levels(double rel_tol) const {
    dvec peak(K);
    for (int k = 1; k <= K; ++k) peak(k - 1) = coupling_abs(k).maxCoeff();
    double top = peak.maxCoeff();
    std::vector<int> out;
    for (int k = 1; k <= K; ++k)
        if (peak(k - 1) > rel_tol * top) out.push_back(k);
    return out;
}

SpectralScan spectral_scan(const Model& model, const ScanConfig& cfg) {
    const long dim = model.dim();
    const int K = std::min<long>(cfg.K, dim - 1);
    const int n = cfg.n_grid;
    if (n < 2) throw std::invalid_argument("spectral_scan: need at least two grid points");

    SpectralScan out;
    out.K = K;
    out.bgrid = dvec::LinSpaced(n, model.spec().B0, cfg.eps * model.spec().B0);
    out.energies.resize(n, K + 1);
    out.couplings.resize(n, K);

    const cxmat& drv = model.drive();
    cxmat prev;  // gauge-fixed lowest K+1 eigenvectors at previous grid point
    for (int i = 0; i < n; ++i) {
        auto [w, V] = eigendecompose(model.hamiltonian(out.bgrid(i), 0.0));
        cxmat Vk = V.leftCols(K + 1);
        if (i > 0) {
            // Split levels into groups degenerate within tolerance, then
            // align each group with the previous point: a phase for
            // isolated levels, a Procrustes rotation for degenerate ones.
            double tol = 1e-9 * std::max(1.0, std::abs(w(K)));
            int start = 0;
            std::vector<std::pair<int, int>> groups;
            for (int k = 1; k <= K; ++k)
                if (w(k) - w(k - 1) > tol) {
                    groups.push_back({start, k});
                    start = k;
                }
            groups.push_back({start, K + 1});
            for (auto [a, b] : groups) {
                if (b - a == 1) {
                    cxd ov = (prev.col(a).adjoint() * Vk.col(a))(0);
                    if (std::abs(ov) > 0) Vk.col(a) *= std::conj(ov) / std::abs(ov);
                } else {
                    cxmat O = prev.middleCols(a, b - a).adjoint() * Vk.middleCols(a, b - a);
                    Eigen::JacobiSVD<cxmat> svd(O, Eigen::ComputeFullU | Eigen::ComputeFullV);
                    cxmat R = svd.matrixU() * svd.matrixV().adjoint();
                    Vk.middleCols(a, b - a) = Vk.middleCols(a, b - a) * R.adjoint();
                }
            }
            // Levels are reported in energy order, so two sectors crossing
            // between grid points swap column identities. That is benign:
            // phase-fix such a column against its actual previous-step
            // partner. Only a column with no partner at all signals a grid
            // too coarse to follow the spectrum.
            for (int k = 0; k <= K; ++k) {
                double ov = std::abs((prev.col(k).adjoint() * Vk.col(k))(0));
                if (ov >= 0.5) continue;
                int best = -1;
                double best_ov = 0.5;
                for (int j = 0; j <= K; ++j) {
                    double o = std::abs((prev.col(j).adjoint() * Vk.col(k))(0));
                    if (o > best_ov) {
                        best_ov = o;
                        best = j;
                    }
                }
                if (best >= 0) {
                    cxd p = (prev.col(best).adjoint() * Vk.col(k))(0);
                    Vk.col(k) *= std::conj(p) / std::abs(p);
                } else if (k > 0) {
                    // A level entering the tracked window has no predecessor;
                    // give it a deterministic phase instead.
                    long imax = 0;
                    Vk.col(k).cwiseAbs().maxCoeff(&imax);
                    cxd p = Vk(imax, k);
                    Vk.col(k) *= std::conj(p) / std::abs(p);
                } else {
                    // A ground state with no overlap anywhere means the grid
                    // cannot resolve its rotation; the quadrature would miss
                    // the corresponding coupling spike.
                    throw std::runtime_error(
                        "spectral_scan: eigenvector tracking ambiguity near B = " +
                        std::to_string(out.bgrid(i)));
                }
            }
        }
        out.energies.row(i) = w.head(K + 1);
        for (int k = 1; k <= K; ++k)
            out.couplings(i, k - 1) = (Vk.col(0).adjoint() * (drv * Vk.col(k)))(0);
        prev = Vk;
    }
    return out;
}

cxvec target_state(const Model& model, double eps) {
    auto [w0, V0] = eigendecompose(model.hamiltonian(model.spec().B0, 0.0));
    cxvec g0 = V0.col(0);
    cxd par0 = (g0.adjoint() * (model.parity() * g0))(0);
    double sector = std::real(par0) >= 0 ? 1.0 : -1.0;

    auto [w, V] = eigendecompose(model.hamiltonian(eps * model.spec().B0, 0.0));
    if (model.dim() < 2) return V.col(0);
    double split = w(1) - w(0);
    double scale = model.dim() > 2 ? std::max(1e-12, w(2) - w(0)) : 1.0;
    if (split > 1e-6 * scale) return V.col(0);

    // Project the near-degenerate lowest pair onto the initial parity
    // sector; adiabatic evolution cannot leave it.
    cxmat span(model.dim(), 2);
    span.col(0) = V.col(0);
    span.col(1) = V.col(1);
    cxmat proj = 0.5 * (span + sector * (model.parity() * span));
    cxvec cand = proj.col(0).norm() >= proj.col(1).norm() ? proj.col(0) : proj.col(1);
    if (cand.norm() < 1e-6)
        throw std::runtime_error("target_state: no component in the initial parity sector");
    cand /= cand.norm();
    // Fix the global phase: largest-magnitude amplitude made real positive.
    long imax = 0;
    cand.cwiseAbs().maxCoeff(&imax);
    cxd ph = cand(imax) / std::abs(cand(imax));
    return cand * std::conj(ph);
}

}  // namespace qramp
