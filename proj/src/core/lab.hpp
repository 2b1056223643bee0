// lab.hpp — experiment orchestration: fidelity curves, peak extraction, sweeps.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/evolve.hpp"
#include "core/reduced.hpp"
#include "core/scan.hpp"
#include "core/schedule.hpp"

namespace qramp {

struct LabConfig {
    ModelSpec model;
    std::string protocol = "faquad";  // la | faquad | faquad-k
    int K = 1;
    int level = 0;  // 0 = auto-select
    ScanConfig scan;
    IntegratorConfig integrator;
    std::vector<double> tf_grid;
    std::vector<double> omega_grid;
    std::vector<double> gamma_grid;
    std::vector<int> size_grid;
    std::string peak_mode = "auto";  // auto | first_peak | global_max
    bool refine = false;
    bool prefer_reduced = true;  // symmetric fast path for Lipkin z noise
};

// Per-model state reused across t_f values: the scan and the boundary states
// are final-time independent.
struct RunContext {
    Model design_model;
    SpectralScan scan;
    cxvec psi0;    // ground state of H(B0) in the design basis
    cxvec target;  // parity-resolved cat state at B = 0 in the design basis
};

RunContext make_context(const ModelSpec& spec, const ScanConfig& scan_cfg);
Schedule make_schedule(const LabConfig& cfg, const SpectralScan& scan, double t_f);

// One fidelity evaluation at final time t_f: closed when gamma = 0, Lindblad
// otherwise (reduced collective engine when applicable, dense FullSpin else).
double evaluate_fidelity(const LabConfig& cfg, const RunContext& ctx, double t_f);

struct CurvePoint {
    double t_f = 0;
    double F = 0;
};

std::vector<CurvePoint> fidelity_curve(const LabConfig& cfg, const RunContext& ctx);

struct Peak {
    double t_f_star = 0;
    double F_max = 0;
    bool endpoint_warning = false;  // no interior maximum found
};

// first_peak: first interior three-point local maximum, parabolic refinement;
// global_max: grid argmax with the same refinement.
Peak extract_peak(const std::vector<CurvePoint>& curve, const std::string& mode);

struct PeakRecord {
    std::string swept_param;
    double value = 0;
    Peak peak;
    std::string peak_mode;
    std::string protocol;
    int N = 0;
    double J = 0;  // active coupling scale: Lipkin J, Ising Jmax
    double alpha = 0;
    double alpha_tilde = 0;
    double omega = 0;  // rad/ms
    double gamma = 0;  // 1/s
    double dt = 0;     // ms, resolved step
};

struct SweepResult {
    std::string swept_param;
    std::vector<PeakRecord> records;  // two rows per swept value: both peak modes
    int n_grid = 0;
    std::string version;
};

SweepResult tf_sweep(const LabConfig& cfg);     // single record pair over the tf curve
SweepResult dd_sweep(const LabConfig& cfg);     // over omega_grid
SweepResult gamma_sweep(const LabConfig& cfg);  // over gamma_grid
SweepResult size_sweep(const LabConfig& cfg);   // over size_grid; J rescales to 0.55 N

// CSV: swept_param,value,F_max,t_f_star_ms,peak_mode,protocol,N,J,alpha,
//      alpha_tilde,omega_kHz,Gamma_per_s,dt_ms
void write_sweep_csv(const std::string& path, const SweepResult& r, std::uint64_t manifest_hash);
// JSON sidecar with the full config snapshot and records.
void write_sweep_json(const std::string& path, const SweepResult& r, const std::string& config,
                      std::uint64_t manifest_hash);

// Bounded worker pool size: QRAMP_WORKERS, else hardware concurrency.
int worker_count();

}  // namespace qramp
