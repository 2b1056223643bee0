// manifest.hpp — run configuration: flat key-value file, defaults, overrides.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/evolve.hpp"
#include "core/scan.hpp"
#include "core/types.hpp"

namespace qramp {

enum class Command { Design, Evolve, SweepTf, SweepDd, SweepGamma, SweepSize, Validate };

std::string command_name(Command c);
Command parse_command(const std::string& s);

// Fully resolved run configuration. Boundary keys carry explicit unit
// suffixes (_kHz_over_2pi, _per_s, _ms); quoted values such as
// B0/(2pi) = 7 kHz enter the Hamiltonian as bare angular values in rad/ms,
// the convention under which the reference fidelity curves reproduce.
struct RunManifest {
    Command command = Command::Validate;
    ModelSpec model;
    IntegratorConfig integrator;
    ScanConfig scan;

    std::string protocol = "faquad";  // la | faquad | faquad-k
    int K = 1;                        // levels summed by faquad-k
    int level = 0;                    // 0 = auto-select the first coupled level
    double t_f_ms = 4.8;

    double tf_min_ms = 0.2, tf_max_ms = 14.0, tf_step_ms = 0.2;
    double omega_min = 0.0, omega_max = 0.55;  // rad/ms
    int omega_points = 23;
    std::vector<double> gamma_values{0, 40, 80, 120, 160, 200};  // 1/s
    std::vector<int> sizes{4, 6, 8, 10};
    std::string peak_mode = "auto";  // auto | first_peak | global_max
    bool refine = false;

    std::string out_dir = ".";
    std::string prefix = "run";
    long stride = 0;  // trajectory dump stride; 0 = off

    // Canonical echo of every resolved key; parse(serialize()) is a fixed point.
    std::string serialize() const;
    std::uint64_t hash() const;

    std::vector<double> tf_grid() const;
    std::vector<double> omega_grid() const;
};

// `overrides` entries are "key=value" strings applied after the file.
// Unknown keys, malformed values, and invariant violations throw
// std::invalid_argument naming the offending key.
RunManifest parse_manifest(const std::string& path, const std::vector<std::string>& overrides = {});
RunManifest parse_manifest_text(const std::string& text,
                                const std::vector<std::string>& overrides = {});

}  // namespace qramp
