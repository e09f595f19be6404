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

#include "doctest.h"

#include "nlmagic/errors.hpp"
#include "nlmagic/magic.hpp"
#include "nlmagic/report.hpp"
#include "nlmagic/scenario.hpp"
#include "test_util.hpp"

using namespace nlmagic;
using namespace nlmagic::testing;

namespace {

const std::string kScenarioDir = NLMAGIC_SCENARIO_DIR;

Json lm_exact_json() {
    return Json::parse(R"({
        "schema_version": 1, "name": "lm", "state": {"id": "LM"},
        "estimators": ["purity", "stab_purity", "sre", {"rdm_purity": [0]}],
        "exhaustive": true, "seed": 1})");
}

bool every_quantity_has_provenance(const Json &report) {
    for (const auto &s : report.at("sections")) {
        for (const auto &q : s.at("quantities")) {
            const auto p = q.at("provenance").get<std::string>();
            if (p != "estimate" && p != "oracle" && p != "theory" && p != "anchor") {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("scenario parsing") {
    const auto s = scenario_from_json(lm_exact_json());
    CHECK(s.state == StateId::LM);
    CHECK(s.estimators.size() == 4);
    CHECK(s.estimators[3].keep == std::vector<int>{0});
    CHECK(s.exhaustive);

    const auto n = load_scenario(kScenarioDir + "/nlm_noisy.json");
    CHECK(std::abs(n.params.at("theta") - std::numbers::pi / 6) < 1e-15);
    CHECK(n.n_shot == 5000u);
    CHECK(n.p_dep_cz == 0.96);

    const auto c = load_scenario(kScenarioDir + "/custom_circuit.json");
    REQUIRE(c.circuit.has_value());
    CHECK(c.circuit->gates.size() == 4);
    CHECK(std::abs(c.circuit->gates[2].angles[0] - std::numbers::pi / 4) < 1e-15);

    // Round trip through the file format.
    const auto again = scenario_from_json(scenario_to_json(n));
    CHECK(scenario_to_json(again).dump() == scenario_to_json(n).dump());
}

TEST_CASE("invalid scenarios") {
    CHECK_THROWS(load_scenario(kScenarioDir + "/invalid_empty_estimators.json"));
    auto j = lm_exact_json();
    j["schema_version"] = 2;
    CHECK_THROWS_AS(scenario_from_json(j), DomainError);
    j = lm_exact_json();
    j["estimators"] = Json::array({Json{{"rdm_purity", {3}}}});
    CHECK_THROWS_AS(scenario_from_json(j), InvalidSubsystemError);
    j = lm_exact_json();
    j["mitigation"] = true;
    CHECK_THROWS_AS(scenario_from_json(j), DomainError);
    j = lm_exact_json();
    j["circuit"] = Json{{"num_qubits", 1}, {"gates", Json::array()}};
    CHECK_THROWS_AS(scenario_from_json(j), DomainError);
    j = lm_exact_json();
    j["estimators"] = Json::array({"entropy"});
    CHECK_THROWS_AS(scenario_from_json(j), DomainError);
}

TEST_CASE("exact LM scenario reproduces the oracle") {
    const auto rep = run_scenario(scenario_from_json(lm_exact_json()));
    CHECK(rep.all_pass());
    const auto &sec = rep.sections.at(0);
    CHECK(std::abs(sec.get("m2").value - kLog43) < 1e-9);
    CHECK(std::abs(sec.get("rdm_purity_0").value - 0.5) < 1e-10);
    for (const auto &c : sec.checks) {
        CHECK(c.kind == ToleranceKind::Absolute);
        CHECK(c.tolerance == 1e-9);
    }
    CHECK(every_quantity_has_provenance(rep.to_json()));
}

TEST_CASE("noisy scenarios pass their statistical checks") {
    const auto n = run_scenario(load_scenario(kScenarioDir + "/nlm_noisy.json"));
    CHECK(n.all_pass());
    const auto &sec = n.sections.at(0);
    CHECK(std::abs(sec.get("m2_theory").value - sre_nlm_depolarized(0.04, std::numbers::pi / 6)) < 1e-15);
    CHECK(std::abs(sec.get("m2").value - sec.get("m2_theory").value) < 3 * *sec.get("m2").error);

    CHECK(run_scenario(load_scenario(kScenarioDir + "/lm_readout_mitigated.json")).all_pass());
    CHECK(run_scenario(load_scenario(kScenarioDir + "/custom_circuit.json")).all_pass());
}

TEST_CASE("readout noise without mitigation biases the estimate") {
    auto s = load_scenario(kScenarioDir + "/lm_readout_mitigated.json");
    s.exhaustive = true;
    s.n_shot.reset();
    const auto mitigated = run_scenario(s);
    CHECK(mitigated.all_pass());
    s.mitigation.enabled = false;
    const auto raw = run_scenario(s);
    CHECK_FALSE(raw.all_pass());
    const double truth = raw.sections[0].get("m2_oracle").value;
    CHECK(std::abs(raw.sections[0].get("m2").value - truth) > 0.1);
    CHECK(std::abs(mitigated.sections[0].get("m2").value - truth) < 1e-9);
}

TEST_CASE("simulated calibration counts") {
    auto s = load_scenario(kScenarioDir + "/lm_readout_mitigated.json");
    s.mitigation.calibration_shots = 20000;
    const auto rep = run_scenario(s);
    CHECK(std::abs(rep.sections[0].get("m2").value - rep.sections[0].get("m2_oracle").value) < 0.1);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
    auto s = load_scenario(kScenarioDir + "/nlm_noisy.json");
    const std::string one = run_scenario(s).to_json().dump(2);
    s.workers = 4;
    CHECK(run_scenario(s).to_json().dump(2) == one);
    s.seed = 12;
    CHECK(run_scenario(s).to_json().dump(2) != one);

    Table1Options a;
    Table1Options b;
    b.workers = 3;
    CHECK(report_table1(a).to_json().dump() == report_table1(b).to_json().dump());
}

TEST_CASE("purity calibration") {
    const double p = calibrate_p_dep_for_purity(0.94);
    CHECK(std::abs(p - std::sqrt(0.92)) < 1e-12);
    CHECK(std::abs(purity(noisy(StateId::M, p)) - 0.94) < 1e-12);
    CHECK_THROWS(calibrate_p_dep_for_purity(0.2));
}

TEST_CASE("table 1 report") {
    const auto rep = report_table1();
    CHECK(rep.all_pass());
    REQUIRE(rep.sections.size() == 4);
    const double anchors[] = {0.48, 0.08, 0.46, 0.27};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto &s = rep.sections[i];
        CHECK(s.get("m2_anchor").value == anchors[i]);
        CHECK(std::abs(s.get("purity_oracle").value - 0.94) < 1e-12);
        CHECK(s.checks.size() == 5);
    }
    CHECK(std::abs(rep.section("LM").get("m2_oracle").value - 0.481625580122) < 1e-10);
    CHECK(std::abs(rep.section("M_erased").get("m2_nonlocal_oracle").value - std::log2(8.0 / 7.0)) < 1e-10);
    CHECK(every_quantity_has_provenance(rep.to_json()));
    CHECK(rep.to_text().find("PASS m2_near_anchor") != std::string::npos);
}

TEST_CASE("fig 3 report") {
    Fig3Options exact;
    exact.p_dep = 1.0;
    exact.exhaustive = true;
    const auto ex = report_fig3(exact);
    CHECK(ex.all_pass());
    CHECK(std::abs(ex.section("theta_45").get("m2_nonlocal").value - 0.415037499279) < 1e-6);
    CHECK(std::abs(ex.section("theta_0").get("m2").value) < 1e-9);

    const auto rep = report_fig3();
    REQUIRE(rep.table.has_value());
    CHECK(rep.table->rows.size() == 10);
    double prev = -1;
    for (const auto &row : rep.table->rows) {
        CHECK(row[3] > prev);
        prev = row[3];
    }
    const auto &t0 = rep.section("theta_0");
    CHECK(std::abs(t0.get("m2").value) < 3 * *t0.get("m2").error + 0.05);
    CHECK(rep.to_csv().rfind("theta_deg,m2_est,m2_err,m2_theory,nl_est,nl_err,nl_theory\n", 0) == 0);

    Fig3Options bad;
    bad.theta_deg = {50};
    CHECK_THROWS_AS(report_fig3(bad), DomainError);
}

TEST_CASE("fig 4 report") {
    const auto rep = report_fig4();
    CHECK(rep.all_pass());
    const auto &s = rep.section("Fig4");
    CHECK(std::abs(s.get("min_m2").value - 0.290003283578) < 1e-10);
    CHECK(std::abs(s.get("min_m2_noise_free").value - 0.192645077942) < 1e-10);
    CHECK(rep.notes.back().find("(67.5,90)") != std::string::npos);
    CHECK(rep.table->rows.size() == 17 * 17);

    Fig4Options clean;
    clean.p_dep = 1.0;
    CHECK_FALSE(report_fig4(clean).all_pass());
}

TEST_CASE("text and CSV rendering") {
    const auto rep = run_scenario(scenario_from_json(lm_exact_json()));
    const auto text = rep.to_text();
    CHECK(text.find("[lm]") != std::string::npos);
    CHECK(text.find("all checks passed") != std::string::npos);
    const auto csv = rep.to_csv();
    CHECK(csv.rfind("section,name,value,error,provenance\n", 0) == 0);
    CHECK(csv.find("lm,m2_oracle,") != std::string::npos);
}
