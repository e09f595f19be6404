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

#include "nlmagic/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "nlmagic/errors.hpp"
#include "nlmagic/magic.hpp"
#include "nlmagic/mitigation.hpp"
#include "nlmagic/rcm.hpp"

namespace nlmagic {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string_view estimator_name(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::Purity:
            return "purity";
        case EstimatorKind::StabilizerPurity:
            return "stab_purity";
        case EstimatorKind::Sre:
            return "sre";
        case EstimatorKind::RdmPurity:
            return "rdm_purity";
    }
    return "?";
}

EstimatorSpec estimator_from_json(const Json &j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "purity") return {EstimatorKind::Purity, {}};
        if (s == "stab_purity") return {EstimatorKind::StabilizerPurity, {}};
        if (s == "sre") return {EstimatorKind::Sre, {}};
        throw DomainError("unknown estimator '" + s + "'");
    }
    if (j.is_object() && j.contains("rdm_purity")) {
        return {EstimatorKind::RdmPurity, j.at("rdm_purity").get<std::vector<int>>()};
    }
    throw DomainError("estimator must be a name or {\"rdm_purity\": [qubits]}");
}

Json estimator_to_json(const EstimatorSpec &e) {
    if (e.kind == EstimatorKind::RdmPurity) {
        return Json{{"rdm_purity", e.keep}};
    }
    return Json(std::string(estimator_name(e.kind)));
}

std::string keep_label(const std::vector<int> &keep) {
    std::string s;
    for (int q : keep) {
        s += std::to_string(q);
    }
    return s;
}

// Simulated initialization counts: prepare each basis state and read it through Lambda.
CalibrationMatrix estimate_calibration(const CalibrationMatrix &truth, std::uint64_t shots, std::uint64_t seed) {
    const auto d = truth.dim();
    InitializationCounts ic;
    ic.n_shot = shots;
    for (Eigen::Index j = 0; j < d; ++j) {
        std::vector<double> col(truth.matrix().col(j).data(), truth.matrix().col(j).data() + d);
        const auto freq = sample_shots(ProbabilityVector(col), shots, derive_seed(seed, static_cast<std::uint64_t>(j)));
        std::vector<std::uint64_t> row;
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < freq.size(); ++i) {
            row.push_back(static_cast<std::uint64_t>(std::llround(freq[i] * static_cast<double>(shots))));
            total += row.back();
        }
        // Rounding of the frequencies can leave the row a count off; put it on the largest entry.
        auto big = std::max_element(row.begin(), row.end());
        *big = *big + shots - total;
        ic.counts.push_back(std::move(row));
    }
    return calibration_from_counts(ic);
}

}  // namespace

CalibrationMatrix ReadoutSpec::build(int num_qubits) const {
    if (lambda) {
        if (lambda->num_qubits() != num_qubits) {
            throw DimensionMismatchError("readout matrix width does not match the circuit");
        }
        return *lambda;
    }
    if (static_cast<int>(per_qubit_eps.size()) != num_qubits) {
        throw DimensionMismatchError("per_qubit_eps needs one entry per qubit");
    }
    return synth_calibration_matrix(per_qubit_eps, correlation);
}

Circuit Scenario::resolved_circuit() const {
    if (circuit) {
        return *circuit;
    }
    return preparation_circuit(*state, params);
}

void Scenario::validate() const {
    if (schema_version != kScenarioSchemaVersion) {
        throw DomainError("unsupported scenario schema_version " + std::to_string(schema_version));
    }
    if (state.has_value() == circuit.has_value()) {
        throw DomainError("scenario needs exactly one of 'state' or 'circuit'");
    }
    if (estimators.empty()) {
        throw DomainError("scenario estimator list is empty");
    }
    if (!(p_dep_cz > 0.0 && p_dep_cz <= 1.0)) {
        throw DomainError("p_dep_cz must lie in (0, 1]");
    }
    const Circuit c = resolved_circuit();
    c.validate();
    for (const auto &e : estimators) {
        if (e.kind != EstimatorKind::RdmPurity) {
            continue;
        }
        for (int q : e.keep) {
            if (q < 0 || q >= c.num_qubits) {
                throw InvalidSubsystemError("rdm_purity references qubit " + std::to_string(q));
            }
        }
    }
    if (readout) {
        readout->build(c.num_qubits);
    }
    if (mitigation.enabled && !readout) {
        throw DomainError("mitigation requires a readout model");
    }
    if (!exhaustive && n_rand < 2) {
        throw DomainError("n_rand must be at least 2");
    }
}

Scenario scenario_from_json(const Json &j) {
    Scenario s;
    s.schema_version = j.at("schema_version").get<int>();
    s.name = j.value("name", std::string("scenario"));
    if (j.contains("state")) {
        const auto &st = j.at("state");
        s.state = parse_state_id(st.at("id").get<std::string>());
        if (st.contains("params_deg")) {
            for (const auto &[k, v] : st.at("params_deg").items()) {
                s.params[k] = v.get<double>() * kDeg;
            }
        }
    }
    if (j.contains("circuit")) {
        const auto &cj = j.at("circuit");
        Circuit c;
        c.num_qubits = cj.at("num_qubits").get<int>();
        for (const auto &g : cj.at("gates")) {
            std::vector<double> angles;
            for (double a : g.value("angles_deg", std::vector<double>{})) {
                angles.push_back(a * kDeg);
            }
            c.add(parse_gate_kind(g.at("gate").get<std::string>()), g.at("qubits").get<std::vector<int>>(),
                  std::move(angles));
        }
        s.circuit = std::move(c);
    }
    if (j.contains("noise")) {
        const auto &nj = j.at("noise");
        s.p_dep_cz = nj.value("p_dep_cz", 1.0);
        if (nj.contains("n_shot") && !nj.at("n_shot").is_null()) {
            s.n_shot = nj.at("n_shot").get<std::uint64_t>();
        }
        if (nj.contains("readout") && !nj.at("readout").is_null()) {
            const auto &rj = nj.at("readout");
            ReadoutSpec r;
            if (rj.contains("lambda")) {
                r.lambda = calibration_from_json(rj.at("lambda"));
            } else {
                for (const auto &e : rj.at("per_qubit_eps")) {
                    if (e.is_number()) {
                        r.per_qubit_eps.emplace_back(e.get<double>(), e.get<double>());
                    } else {
                        r.per_qubit_eps.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
                    }
                }
                r.correlation = rj.value("correlation", 0.0);
            }
            s.readout = std::move(r);
        }
    }
    for (const auto &e : j.at("estimators")) {
        s.estimators.push_back(estimator_from_json(e));
    }
    if (j.contains("mitigation")) {
        const auto &mj = j.at("mitigation");
        if (mj.is_boolean()) {
            s.mitigation.enabled = mj.get<bool>();
        } else {
            s.mitigation.enabled = mj.value("enabled", false);
            if (mj.contains("calibration_shots")) {
                s.mitigation.calibration_shots = mj.at("calibration_shots").get<std::uint64_t>();
            }
        }
    }
    s.n_rand = j.value("n_rand", std::size_t{400});
    s.exhaustive = j.value("exhaustive", false);
    s.seed = j.value("seed", std::uint64_t{0});
    s.workers = j.value("workers", 1u);
    s.validate();
    return s;
}

Json scenario_to_json(const Scenario &s) {
    Json j{{"schema_version", s.schema_version}, {"name", s.name}};
    if (s.state) {
        Json params = Json::object();
        for (const auto &[k, v] : s.params) {
            params[k] = v / kDeg;
        }
        j["state"] = Json{{"id", std::string(state_name(*s.state))}, {"params_deg", params}};
    }
    if (s.circuit) {
        Json gates = Json::array();
        for (const auto &g : s.circuit->gates) {
            std::vector<double> deg;
            for (double a : g.angles) {
                deg.push_back(a / kDeg);
            }
            gates.push_back(Json{{"gate", std::string(gate_name(g.kind))}, {"qubits", g.qubits}, {"angles_deg", deg}});
        }
        j["circuit"] = Json{{"num_qubits", s.circuit->num_qubits}, {"gates", gates}};
    }
    Json noise{{"p_dep_cz", s.p_dep_cz}};
    noise["n_shot"] = s.n_shot ? Json(*s.n_shot) : Json(nullptr);
    if (s.readout) {
        if (s.readout->lambda) {
            noise["readout"] = Json{{"lambda", calibration_to_json(*s.readout->lambda)}};
        } else {
            Json eps = Json::array();
            for (const auto &[a, b] : s.readout->per_qubit_eps) {
                eps.push_back(Json::array({a, b}));
            }
            noise["readout"] = Json{{"per_qubit_eps", eps}, {"correlation", s.readout->correlation}};
        }
    } else {
        noise["readout"] = nullptr;
    }
    j["noise"] = noise;
    Json est = Json::array();
    for (const auto &e : s.estimators) {
        est.push_back(estimator_to_json(e));
    }
    j["estimators"] = est;
    Json mit{{"enabled", s.mitigation.enabled}};
    if (s.mitigation.calibration_shots) {
        mit["calibration_shots"] = *s.mitigation.calibration_shots;
    }
    j["mitigation"] = mit;
    j["n_rand"] = s.n_rand;
    j["exhaustive"] = s.exhaustive;
    j["seed"] = s.seed;
    return j;
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open scenario file " + path);
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error("scenario " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

Report run_scenario(const Scenario &s) {
    s.validate();
    const Circuit circ = s.resolved_circuit();
    const int n = circ.num_qubits;

    NoiseConfig gate_noise;
    gate_noise.p_dep_cz = s.p_dep_cz;
    const DensityMatrix rho = run_circuit(circ, gate_noise);

    NoiseConfig meas;
    meas.n_shot = s.n_shot;
    meas.seed = derive_seed(s.seed, 1);
    std::optional<CalibrationMatrix> lambda;
    if (s.readout) {
        lambda = s.readout->build(n);
        meas.readout_lambda = lambda;
    }

    const auto tuples = s.exhaustive ? exhaustive_local_cliffords(n) : sample_local_cliffords(n, s.n_rand, derive_seed(s.seed, 0));
    RcmDataset ds = collect_dataset(rho, tuples, meas, s.workers);
    if (s.mitigation.enabled) {
        const CalibrationMatrix used = s.mitigation.calibration_shots
                                           ? estimate_calibration(*lambda, *s.mitigation.calibration_shots, derive_seed(s.seed, 2))
                                           : *lambda;
        ds = mitigate_dataset(ds, used);
    }

    const bool exact_readout = !s.readout || (s.mitigation.enabled && !s.mitigation.calibration_shots);
    const bool exact_data = s.exhaustive && !s.n_shot && exact_readout;
    Report rep;
    rep.title = "scenario " + s.name;
    rep.parameters = scenario_to_json(s);
    if (exact_data) {
        rep.notes.push_back("exact probabilities over every local Clifford tuple; estimates compared at 1e-9");
    } else {
        rep.notes.push_back("estimates compared with oracles at 3 reported sampling errors (floor 1e-9)");
    }

    auto add_checked = [&](ReportSection &sec, const std::string &qname, const EstimateWithError &e, double oracle) {
        sec.add(qname, e.mean, Provenance::Estimate, e.sampling_error);
        sec.add(qname + "_oracle", oracle, Provenance::Oracle);
        if (exact_data) {
            sec.check(qname + "_matches_oracle", qname, qname + "_oracle", ToleranceKind::Absolute, 1e-9);
        } else {
            sec.check(qname + "_matches_oracle", qname, qname + "_oracle", ToleranceKind::Sigma, 3.0);
        }
    };

    ReportSection sec;
    sec.name = s.name;
    for (const auto &e : s.estimators) {
        switch (e.kind) {
            case EstimatorKind::Purity:
                add_checked(sec, "purity", estimate_purity(ds), purity(rho));
                break;
            case EstimatorKind::StabilizerPurity:
                add_checked(sec, "stab_purity", estimate_stabilizer_purity(ds), stabilizer_purity_exact(rho));
                break;
            case EstimatorKind::Sre: {
                add_checked(sec, "m2", estimate_sre(ds), sre_exact(rho));
                if (s.state == StateId::NLM) {
                    const double theta = s.params.count("theta") ? s.params.at("theta") : std::numbers::pi / 4;
                    sec.add("m2_theory", sre_nlm_depolarized(error_probability(s.p_dep_cz), theta), Provenance::Theory);
                }
                break;
            }
            case EstimatorKind::RdmPurity: {
                const std::string label = "rdm_purity_" + keep_label(e.keep);
                add_checked(sec, label, estimate_rdm_purity(ds, e.keep), purity(partial_trace(rho, e.keep)));
                break;
            }
        }
    }
    rep.sections.push_back(std::move(sec));
    return rep;
}

}  // namespace nlmagic
