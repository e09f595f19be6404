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

#include "nlmagic/serialization.hpp"

#include "nlmagic/errors.hpp"

namespace nlmagic {

Json calibration_to_json(const CalibrationMatrix &lambda) {
    Json rows = Json::array();
    const auto &m = lambda.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CalibrationMatrix calibration_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw DimensionMismatchError("calibration matrix must be a non-empty array of rows");
    }
    const auto d = static_cast<Eigen::Index>(j.size());
    RealMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            throw DimensionMismatchError("calibration matrix must be square");
        }
        for (Eigen::Index k = 0; k < d; ++k) {
            m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
        }
    }
    return CalibrationMatrix(m);
}

Json probabilities_to_json(const ProbabilityVector &p) {
    return Json(p.values());
}

ProbabilityVector probabilities_from_json(const Json &j) {
    const Json &arr = j.is_object() ? j.at("probabilities") : j;
    return ProbabilityVector(arr.get<std::vector<double>>());
}

Json counts_to_json(const InitializationCounts &ic) {
    return Json{{"n_shot", ic.n_shot}, {"counts", ic.counts}};
}

InitializationCounts counts_from_json(const Json &j) {
    InitializationCounts ic;
    ic.n_shot = j.at("n_shot").get<std::uint64_t>();
    ic.counts = j.at("counts").get<std::vector<std::vector<std::uint64_t>>>();
    ic.validate();
    return ic;
}

Json dataset_to_json(const RcmDataset &ds) {
    Json samples = Json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        samples.push_back(Json{{"clifford_ids", ds.clifford_ids[i]}, {"probabilities", ds.prob_vectors[i].values()}});
    }
    Json j{{"num_qubits", ds.num_qubits}, {"seed", ds.seed}};
    j["n_shot"] = ds.n_shot ? Json(*ds.n_shot) : Json(nullptr);
    j["samples"] = std::move(samples);
    return j;
}

RcmDataset dataset_from_json(const Json &j) {
    RcmDataset ds;
    ds.num_qubits = j.at("num_qubits").get<int>();
    ds.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("n_shot") && !j.at("n_shot").is_null()) {
        ds.n_shot = j.at("n_shot").get<std::uint64_t>();
    }
    for (const auto &s : j.at("samples")) {
        ds.clifford_ids.push_back(s.at("clifford_ids").get<CliffordTuple>());
        ds.prob_vectors.emplace_back(s.at("probabilities").get<std::vector<double>>());
    }
    ds.validate();
    return ds;
}

Json estimate_to_json(const EstimateWithError &e) {
    return Json{{"mean", e.mean},
                {"sample_std", e.sample_std},
                {"sampling_error", e.sampling_error},
                {"n_samples", e.n_samples}};
}

Json magic_report_to_json(const MagicReport &r) {
    Json j{{"purity", r.purity}, {"stabilizer_purity", r.stabilizer_purity}, {"m2", r.m2}};
    j["m2_nonlocal"] = r.m2_nonlocal ? Json(*r.m2_nonlocal) : Json(nullptr);
    j["m2_local"] = r.m2_local ? Json(*r.m2_local) : Json(nullptr);
    return j;
}

}  // namespace nlmagic
