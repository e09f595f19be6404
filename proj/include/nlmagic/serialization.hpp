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

#ifndef NLMAGIC_SERIALIZATION_HPP
#define NLMAGIC_SERIALIZATION_HPP

#include "json.hpp"

#include "nlmagic/magic.hpp"
#include "nlmagic/mitigation.hpp"
#include "nlmagic/noise.hpp"
#include "nlmagic/rcm.hpp"

namespace nlmagic {

using Json = nlohmann::ordered_json;

/// Lambda as an array of rows.
Json calibration_to_json(const CalibrationMatrix &lambda);
CalibrationMatrix calibration_from_json(const Json &j);

Json probabilities_to_json(const ProbabilityVector &p);
/// Accepts a bare array or an object with a "probabilities" array.
ProbabilityVector probabilities_from_json(const Json &j);

Json counts_to_json(const InitializationCounts &ic);
InitializationCounts counts_from_json(const Json &j);

Json dataset_to_json(const RcmDataset &ds);
RcmDataset dataset_from_json(const Json &j);

Json estimate_to_json(const EstimateWithError &e);
Json magic_report_to_json(const MagicReport &r);

}  // namespace nlmagic

#endif
