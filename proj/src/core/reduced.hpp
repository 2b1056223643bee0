// reduced.hpp — permutation-invariant Lindblad evolution for collective models.
//
// Local sigma^z dephasing commutes with spin permutations, so a permutation-
// symmetric initial state stays in the space of invariant operators
//   rho = sum_{j,m,m'} p_j(m,m') P_{j,m,m'},  P_{j,m,m'} = sum_a |j,m,a><j,m',a|,
// one (2j+1)x(2j+1) block per total-spin sector j = N/2, N/2-1, ...
// The Hamiltonian acts blockwise through the spin-j representation; the local
// dephasing couples neighboring j sectors with Clebsch-Gordan transfer weights.
// Exact for the models handled here; cross-validated against the dense
// FullSpin integrator in the test suite.
#pragma once

#include <vector>

#include "core/evolve.hpp"

namespace qramp {

// sum over sectors of (2j+1)^2: 84 (N=6), 165 (N=8), 286 (N=10).
long reduced_dim(int N);

// Multiplicity of the spin-j sector for N spins.
long sector_multiplicity(int N, int two_j);

struct ReducedResult {
    std::vector<cxmat> blocks;  // index s: j = N/2 - s
    double trace_drift = 0;
    double min_eigenvalue = 0;
    double dt = 0;
};

// psi0 lives in the symmetric sector (DickeSymmetric basis, m descending);
// requires a Lipkin-family spec with z-axis dephasing.
ReducedResult evolve_reduced(const ModelSpec& spec, const Schedule& sched, const cxvec& psi0,
                             const IntegratorConfig& cfg = {});

// tr(rho |target><target|) for a symmetric-sector target.
double reduced_fidelity(const ReducedResult& r, const cxvec& target);

}  // namespace qramp
