// driver.hpp — glue between manifests and the lab: dispatch and validation.
#pragma once

#include <string>

#include "core/lab.hpp"
#include "core/manifest.hpp"

namespace qramp {

LabConfig lab_config_from(const RunManifest& m);

// Runs the sweep selected by m.command (sweep-tf/-dd/-gamma/-size).
SweepResult run_sweep(const RunManifest& m);

// Built-in invariant suite: schedule endpoints, closed norm drift, FAQUAD
// flatness, symmetric-sector equivalence, trace/positivity, gamma->0 limit.
// Returns a PASS/FAIL line per property.
std::string run_validation(const RunManifest& m, bool* all_pass);

}  // namespace qramp
