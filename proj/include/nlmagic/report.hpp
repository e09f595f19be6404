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

#ifndef NLMAGIC_REPORT_HPP
#define NLMAGIC_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlmagic/serialization.hpp"

namespace nlmagic {

enum class Provenance { Estimate, Oracle, Theory, Anchor };

std::string_view provenance_name(Provenance p);

struct Quantity {
    std::string name;
    double value = 0.0;
    std::optional<double> error;
    Provenance provenance = Provenance::Estimate;
};

enum class ToleranceKind {
    /// |value - reference| <= tolerance.
    Absolute,
    /// |value - reference| <= tolerance * (reported sampling error of value).
    Sigma,
};

struct Check {
    std::string name;
    std::string quantity;
    std::string reference;
    ToleranceKind kind = ToleranceKind::Absolute;
    double tolerance = 0.0;
    double deviation = 0.0;
    double allowed = 0.0;
    bool pass = false;
};

struct ReportSection {
    std::string name;
    std::vector<Quantity> quantities;
    std::vector<Check> checks;

    Quantity &add(std::string qname, double value, Provenance prov, std::optional<double> error = std::nullopt);
    const Quantity &get(const std::string &qname) const;
    /// Compares quantity `qname` against quantity `ref` of this section.
    const Check &check(std::string cname, const std::string &qname, const std::string &ref, ToleranceKind kind,
                       double tolerance);
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
};

struct Report {
    std::string title;
    Json parameters = Json::object();
    std::vector<ReportSection> sections;
    std::optional<Table> table;
    std::vector<std::string> notes;

    bool all_pass() const;
    ReportSection &section(const std::string &name);
    const ReportSection &section(const std::string &name) const;

    Json to_json() const;
    std::string to_text() const;
    /// The curve or landscape table when present, otherwise one row per quantity.
    std::string to_csv() const;
};

/// Survival probability after which the single-CZ state LM has purity `target`.
double calibrate_p_dep_for_purity(double target = 0.94);

struct Table1Options {
    std::optional<double> p_dep;
    std::uint64_t seed = 2024;
    std::size_t n_rand = 400;
    std::uint64_t n_shot = 5000;
    unsigned workers = 1;
};

/// LM, LM_erased, M, M_erased through the noisy RCM pipeline, compared to the
/// purity and magic anchors 0.94, 0.48, 0.08, 0.46, 0.27.
Report report_table1(const Table1Options &opt = {});

struct Fig3Options {
    std::vector<double> theta_deg{0, 5, 10, 15, 20, 25, 30, 35, 40, 45};
    std::optional<double> p_dep;
    std::uint64_t seed = 2024;
    std::size_t n_rand = 400;
    std::uint64_t n_shot = 5000;
    /// Exact probabilities over all 576 Clifford tuples instead of sampling.
    bool exhaustive = false;
    unsigned workers = 1;
};

/// M2 and RDM-purity non-local magic of NLM(theta) against the depolarized closed forms.
Report report_fig3(const Fig3Options &opt = {});

/// Survival probability for which the Fig4 landscape minimum is 0.29; fitted once and frozen.
inline constexpr double kFig4PDep = 0.949;

struct Fig4Options {
    double p_dep = kFig4PDep;
    double step_deg = 22.5;
};

/// Rz(gamma) x Rz(phi) landscape of the Fig4 state, noisy and noise-free.
Report report_fig4(const Fig4Options &opt = {});

}  // namespace nlmagic

#endif
