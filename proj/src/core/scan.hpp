// scan.hpp — eigensystem sweep over the B grid with gauge-fixed vectors.
#pragma once

#include "core/model.hpp"

namespace qramp {

// Spectrum and ground-to-excited drive matrix elements sampled on a
// descending B grid from B0 to eps*B0. Row i of `energies` holds the
// K+1 lowest eigenvalues at bgrid[i]; couplings(i, k-1) = <g|dH/dB|k>.
struct SpectralScan {
    dvec bgrid;
    dmat energies;   // n_grid x (K+1)
    cxmat couplings; // n_grid x K, gauge-fixed
    int K = 0;

    dvec gap(int k) const;          // E_k - E_0 over the grid
    dvec coupling_abs(int k) const; // |<g|dH/dB|k>| over the grid
    // Indices 1..K of levels with max_B |M_k| above `rel_tol` times the
    // overall maximum; these are the levels FAQUAD-K may sum over.
    std::vector<int> coupled_levels(double rel_tol = 1e-8) const;
};

struct ScanConfig {
    int n_grid = 2001;
    int K = 6;
    double eps = 1e-6;  // grid endpoint at eps*B0
};

// Diagonalizes H(B) on the grid, fixing eigenvector gauge for continuity:
// positive-overlap phase per isolated level, orthogonal Procrustes
// alignment inside degenerate groups, best-partner phase across level
// crossings. Throws std::runtime_error when the ground state loses
// overlap with every tracked level (tracking ambiguity).
SpectralScan spectral_scan(const Model& model, const ScanConfig& cfg = {});

// Lowest-eigenpair helpers.
std::pair<dvec, cxmat> eigendecompose(const cxmat& H);

// Ground state of H(B_eps, env=0) projected onto the parity sector of
// the B0 ground state; resolves the near-degenerate cat pair.
cxvec target_state(const Model& model, double eps = 1e-6);

}  // namespace qramp
