#pragma once

// JSON (de)serialization for states. The wire format is
//   {"re": [16 doubles], "im": [16 doubles], "params": {"p": .., "theta": ..}}
// with entries row-major over the |00>,|01>,|10>,|11> basis; "params" is an
// optional provenance block.

#include <optional>
#include <string>

#include "correlations.hpp"
#include "expsim.hpp"
#include "phasemap.hpp"
#include "states.hpp"

namespace qcorr {

std::string state_to_json(const TwoQubitState& state,
                          const std::optional<StateParams>& params = std::nullopt);

// {"concurrence": .., "bell_S": .., "steering_T": .., "unsteer_TU": ..|null,
//  "labels": ["Entangled", ...]}
std::string report_to_json(const CorrelationReport& report);

// Array of row objects mirroring the CSV columns; filter columns that were
// not computed appear as null.
std::string scan_to_json(const std::vector<PointRecord>& rows);

// One scan row as an object (same fields as the scan rows).
std::string point_to_json(const PointRecord& row);

// Means/standard errors plus run metadata ("rng", "fidelity_model", the
// filter name and the per-set value arrays).
std::string experiment_report_to_json(const ExperimentReport& report);

// Machine-readable note on the known closed-form/operational mismatch of
// the g-track steering expression.
std::string discrepancy_to_json(const DiscrepancyReport& report);

struct LoadedState {
  TwoQubitState state;
  std::optional<StateParams> params;
};

LoadedState state_from_json(const std::string& text);

}  // namespace qcorr
