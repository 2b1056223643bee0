// schedule.hpp — LA / FAQUAD / FAQUAD-K ramp synthesis from a spectral scan.
#pragma once

#include "core/scan.hpp"

#include <string>

namespace qramp {

enum class Protocol { LA, FAQUAD, FAQUAD_K };

std::string protocol_tag(Protocol p, int K = 1);

// Monotone ramp B(t) sampled at schedule points, linearly interpolated.
// Endpoints are pinned: B(0) = B0, B(t_f) = 0.
struct Schedule {
    dvec t;        // ms, ascending, t(0) = 0, t(end) = t_f
    dvec B;        // rad/ms, descending to exactly 0
    double t_f = 0;
    double c_value = 0;  // realized adiabaticity constant (hbar = 1)
    std::string tag;
    std::uint64_t model_hash = 0;

    double value(double time) const;  // piecewise-linear B(time), clamped
    void write_csv(const std::string& path) const;
};
Schedule read_schedule_csv(const std::string& path);

// Designs by quadrature inversion: u(B) = integral of the protocol
// integrand from B to B0 (trapezoid on the scan grid), then
// t(B) = t_f * u(B)/u_total and c = u_total/t_f.
Schedule design_la(const SpectralScan& scan, double t_f, int level = 0);
Schedule design_faquad(const SpectralScan& scan, double t_f, int level = 0);
Schedule design_faquad_k(const SpectralScan& scan, double t_f, int K);

// level = 0 picks the first coupled excited level from the scan; a
// positive value forces that energy-ordered level.

// max/min of the realized adiabaticity c(t) = |M * dB/dt| / gap^2 over
// interior samples; FAQUAD should be flat (ratio ~ 1).
double flatness_ratio(const Schedule& s, const SpectralScan& scan, int level = 0);

}  // namespace qramp
