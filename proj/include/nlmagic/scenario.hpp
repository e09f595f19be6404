// Copyright 2026 The nlmagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLMAGIC_SCENARIO_HPP
#define NLMAGIC_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlmagic/circuits.hpp"
#include "nlmagic/noise.hpp"
#include "nlmagic/report.hpp"

namespace nlmagic {

inline constexpr int kScenarioSchemaVersion = 1;

enum class EstimatorKind { Purity, StabilizerPurity, Sre, RdmPurity };

struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::Sre;
    /// Kept qubits for RdmPurity.
    std::vector<int> keep;
};

struct ReadoutSpec {
    /// (e01, e10) per qubit; ignored when `lambda` is set.
    std::vector<std::pair<double, double>> per_qubit_eps;
    double correlation = 0.0;
    std::optional<CalibrationMatrix> lambda;

    CalibrationMatrix build(int num_qubits) const;
};

struct MitigationSpec {
    bool enabled = false;
    /// When set, Lambda is re-estimated from simulated initialization counts with this many shots.
    std::optional<std::uint64_t> calibration_shots;
};

struct Scenario {
    int schema_version = kScenarioSchemaVersion;
    std::string name;
    std::optional<StateId> state;
    /// Radians internally; degrees in files.
    AngleMap params;
    std::optional<Circuit> circuit;
    double p_dep_cz = 1.0;
    std::optional<ReadoutSpec> readout;
    std::optional<std::uint64_t> n_shot;
    std::vector<EstimatorSpec> estimators;
    MitigationSpec mitigation;
    std::size_t n_rand = 400;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    unsigned workers = 1;

    Circuit resolved_circuit() const;
    void validate() const;
};

Scenario scenario_from_json(const Json &j);
Json scenario_to_json(const Scenario &s);
Scenario load_scenario(const std::string &path);

/// prepare -> depolarize -> Clifford dataset (readout noise, shots) -> optional
/// mitigation -> estimators, each compared with its exact oracle.
Report run_scenario(const Scenario &s);

}  // namespace nlmagic

#endif
