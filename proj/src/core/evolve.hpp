// evolve.hpp — fixed-step RK4 integrators for Schrodinger and Lindblad dynamics.
#pragma once

#include <array>
#include <vector>

#include "core/model.hpp"
#include "core/schedule.hpp"

namespace qramp {

struct IntegratorConfig {
    double dt = 0.0;  // step in ms; 0 selects default_dt(model)
    bool convergence_check = false;
};

// min(1e-3 ms, 0.05 / ||H(B0)||_2); keeps dt * generator norm <= 0.1 with margin.
double default_dt(const Model& model);

// Step boundaries for the integrators: the target dt subdivides each linear
// schedule segment evenly, so RK4 stages never straddle a slope kink of the
// interpolated ramp (stepping across kinks degrades the order to ~dt^2).
std::vector<double> step_times(const Schedule& sched, double dt);

// Optional per-run sampling: one row every `stride` steps plus the endpoints.
// Columns: t_ms, fidelity (vs *target, 0 when unset), trace, purity.
struct TrajectorySink {
    const cxvec* target = nullptr;
    long stride = 0;
    std::vector<std::array<double, 4>> rows;
};

struct ClosedResult {
    cxvec psi;
    double norm_drift = 0;  // | ||psi|| - 1 | at t_f; no renormalization applied
    double dt = 0;
};

struct OpenResult {
    cxmat rho;
    double trace_drift = 0;
    double min_eigenvalue = 0;
    double herm_deviation = 0;  // max |rho - rho^dag| before the final symmetrization
    double dt = 0;
};

ClosedResult evolve_closed(const Model& model, const Schedule& sched, const cxvec& psi0,
                           const IntegratorConfig& cfg = {}, TrajectorySink* sink = nullptr);

// Local dephasing along spec().dephasing_axis() at rate gamma (1/s) per site.
// Requires a FullSpin-basis model; use evolve_reduced for the symmetric fast path.
OpenResult evolve_lindblad(const Model& model, const Schedule& sched, const cxmat& rho0,
                           const IntegratorConfig& cfg = {}, TrajectorySink* sink = nullptr);

// tr(rho |target><target|); the imaginary residue is written to *imag_residue when given.
double fidelity(const cxmat& rho, const cxvec& target, double* imag_residue = nullptr);
double fidelity(const cxvec& psi, const cxvec& target);

struct ConvergenceReport {
    double value_dt = 0;
    double value_half_dt = 0;
    double error_estimate = 0;  // Richardson: |F(dt) - F(dt/2)| * 16/15
};

ConvergenceReport convergence_probe_closed(const Model& model, const Schedule& sched,
                                           const cxvec& psi0, const cxvec& target,
                                           const IntegratorConfig& cfg = {});
ConvergenceReport convergence_probe_lindblad(const Model& model, const Schedule& sched,
                                             const cxmat& rho0, const cxvec& target,
                                             const IntegratorConfig& cfg = {});

}  // namespace qramp
