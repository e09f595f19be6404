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

#include "nlmagic/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "nlmagic/circuits.hpp"
#include "nlmagic/errors.hpp"
#include "nlmagic/erasure.hpp"
#include "nlmagic/magic.hpp"
#include "nlmagic/rcm.hpp"

namespace nlmagic {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string fmt(double v) {
    std::ostringstream o;
    o << std::setprecision(6) << std::fixed << (std::abs(v) < 5e-7 ? 0.0 : v);
    return o.str();
}

std::string fmt_full(double v) {
    std::ostringstream o;
    o << std::setprecision(17) << v;
    return o.str();
}

// Reduced purity range reachable by the depolarized model for lambda in [0.5, 1].
std::pair<double, double> rdm_purity_range(double p_dep) {
    const double q = 1.0 - p_dep;
    const double base = p_dep * q + 0.5 * q * q;
    return {base + 0.5 * p_dep * p_dep, base + p_dep * p_dep};
}

struct NonlocalEstimate {
    double value = 0.0;
    double error = 0.0;
    bool clamped = false;
};

// Non-local magic from an estimated reduced purity, with first-order error propagation.
NonlocalEstimate nonlocal_from_rdm(const EstimateWithError &pa, double p_dep) {
    const auto [lo, hi] = rdm_purity_range(p_dep);
    NonlocalEstimate r;
    const double x = std::clamp(pa.mean, lo, hi);
    r.clamped = x != pa.mean;
    r.value = nonlocal_magic_noisy(x, p_dep);
    const double h = std::max(1e-7, 1e-3 * pa.sampling_error);
    const double a = std::clamp(x - h, lo, hi);
    const double b = std::clamp(x + h, lo, hi);
    if (b > a) {
        r.error = std::abs(nonlocal_magic_noisy(b, p_dep) - nonlocal_magic_noisy(a, p_dep)) / (b - a) * pa.sampling_error;
    }
    return r;
}

RcmDataset noisy_dataset(const DensityMatrix &rho, std::size_t n_rand, std::optional<std::uint64_t> n_shot,
                         bool exhaustive, std::uint64_t seed, unsigned workers) {
    NoiseConfig meas;
    meas.n_shot = n_shot;
    meas.seed = derive_seed(seed, 1);
    const auto tuples = exhaustive ? exhaustive_local_cliffords(rho.num_qubits())
                                   : sample_local_cliffords(rho.num_qubits(), n_rand, derive_seed(seed, 0));
    return collect_dataset(rho, tuples, meas, workers);
}

DensityMatrix prepare(StateId id, double p_dep, const AngleMap &params = {}) {
    NoiseConfig noise;
    noise.p_dep_cz = p_dep;
    return run_circuit(preparation_circuit(id, params), noise);
}

}  // namespace

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Estimate:
            return "estimate";
        case Provenance::Oracle:
            return "oracle";
        case Provenance::Theory:
            return "theory";
        case Provenance::Anchor:
            return "anchor";
    }
    return "?";
}

Quantity &ReportSection::add(std::string qname, double value, Provenance prov, std::optional<double> error) {
    quantities.push_back(Quantity{std::move(qname), value, error, prov});
    return quantities.back();
}

const Quantity &ReportSection::get(const std::string &qname) const {
    for (const auto &q : quantities) {
        if (q.name == qname) {
            return q;
        }
    }
    throw std::out_of_range("no quantity '" + qname + "' in section " + name);
}

const Check &ReportSection::check(std::string cname, const std::string &qname, const std::string &ref,
                                  ToleranceKind kind, double tolerance) {
    const Quantity &q = get(qname);
    const Quantity &r = get(ref);
    Check c;
    c.name = std::move(cname);
    c.quantity = qname;
    c.reference = ref;
    c.kind = kind;
    c.tolerance = tolerance;
    c.deviation = std::abs(q.value - r.value);
    if (kind == ToleranceKind::Absolute) {
        c.allowed = tolerance;
    } else {
        // Floor keeps exactly reproduced values from failing on a zero spread.
        c.allowed = std::max(tolerance * q.error.value_or(0.0), 1e-9);
    }
    c.pass = std::isfinite(c.deviation) && c.deviation <= c.allowed;
    checks.push_back(std::move(c));
    return checks.back();
}

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << fmt_full(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

bool Report::all_pass() const {
    for (const auto &s : sections) {
        for (const auto &c : s.checks) {
            if (!c.pass) {
                return false;
            }
        }
    }
    return true;
}

ReportSection &Report::section(const std::string &name) {
    for (auto &s : sections) {
        if (s.name == name) {
            return s;
        }
    }
    throw std::out_of_range("no report section '" + name + "'");
}

const ReportSection &Report::section(const std::string &name) const {
    return const_cast<Report *>(this)->section(name);
}

Json Report::to_json() const {
    Json secs = Json::array();
    for (const auto &s : sections) {
        Json qs = Json::array();
        for (const auto &q : s.quantities) {
            Json jq{{"name", q.name}, {"value", q.value}};
            jq["error"] = q.error ? Json(*q.error) : Json(nullptr);
            jq["provenance"] = std::string(provenance_name(q.provenance));
            qs.push_back(std::move(jq));
        }
        Json cs = Json::array();
        for (const auto &c : s.checks) {
            cs.push_back(Json{{"name", c.name},
                              {"quantity", c.quantity},
                              {"reference", c.reference},
                              {"tolerance_kind", c.kind == ToleranceKind::Absolute ? "absolute" : "sigma"},
                              {"tolerance", c.tolerance},
                              {"allowed", c.allowed},
                              {"deviation", c.deviation},
                              {"pass", c.pass}});
        }
        secs.push_back(Json{{"name", s.name}, {"quantities", qs}, {"checks", cs}});
    }
    Json j{{"title", title}, {"parameters", parameters}, {"sections", secs}};
    if (table) {
        j["table"] = Json{{"columns", table->columns}, {"rows", table->rows}};
    }
    j["notes"] = notes;
    j["all_pass"] = all_pass();
    return j;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << title << '\n';
    for (const auto &s : sections) {
        out << "\n[" << s.name << "]\n";
        std::size_t w = 8;
        for (const auto &q : s.quantities) {
            w = std::max(w, q.name.size());
        }
        for (const auto &q : s.quantities) {
            out << "  " << std::left << std::setw(static_cast<int>(w)) << q.name << "  " << std::right << std::setw(12)
                << fmt(q.value);
            if (q.error) {
                out << " +/- " << std::left << std::setw(10) << fmt(*q.error);
            } else {
                out << std::string(15, ' ');
            }
            out << "  " << provenance_name(q.provenance) << '\n';
        }
        for (const auto &c : s.checks) {
            out << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << ": |" << c.quantity << " - " << c.reference
                << "| = " << fmt(c.deviation) << " <= " << fmt(c.allowed)
                << (c.kind == ToleranceKind::Sigma ? " (" + fmt(c.tolerance) + " sigma)" : std::string(" (absolute)"))
                << '\n';
        }
    }
    for (const auto &n : notes) {
        out << "note: " << n << '\n';
    }
    out << (all_pass() ? "all checks passed" : "some checks FAILED") << '\n';
    return out.str();
}

std::string Report::to_csv() const {
    if (table) {
        return table->to_csv();
    }
    std::ostringstream out;
    out << "section,name,value,error,provenance\n";
    for (const auto &s : sections) {
        for (const auto &q : s.quantities) {
            out << s.name << ',' << q.name << ',' << fmt_full(q.value) << ','
                << (q.error ? fmt_full(*q.error) : std::string()) << ',' << provenance_name(q.provenance) << '\n';
        }
    }
    return out.str();
}

double calibrate_p_dep_for_purity(double target) {
    if (!(target > 0.25 && target <= 1.0)) {
        throw DomainError("target purity must lie in (1/4, 1]");
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (purity(prepare(StateId::LM, mid)) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Report report_table1(const Table1Options &opt) {
    const double p_dep = opt.p_dep ? *opt.p_dep : calibrate_p_dep_for_purity(0.94);
    if (!(p_dep > 0.0 && p_dep <= 1.0)) {
        throw DomainError("p_dep must lie in (0, 1]");
    }
    Report rep;
    rep.title = "purity and magic of the four two-qubit benchmark states";
    rep.parameters = Json{{"p_dep_cz", p_dep},
                          {"p_dep_calibrated", !opt.p_dep.has_value()},
                          {"seed", opt.seed},
                          {"n_rand", opt.n_rand},
                          {"n_shot", opt.n_shot}};

    const std::array<std::pair<StateId, double>, 4> rows{{
        {StateId::LM, 0.48},
        {StateId::LMErased, 0.08},
        {StateId::M, 0.46},
        {StateId::MErased, 0.27},
    }};
    const int keep_a[] = {0};
    std::uint64_t k = 0;
    for (const auto &[id, anchor] : rows) {
        const DensityMatrix rho = prepare(id, p_dep);
        const RcmDataset ds = noisy_dataset(rho, opt.n_rand, opt.n_shot, false, derive_seed(opt.seed, k++), opt.workers);
        ReportSection sec;
        sec.name = std::string(state_name(id));

        const auto pur = estimate_purity(ds);
        sec.add("purity", pur.mean, Provenance::Estimate, pur.sampling_error);
        sec.add("purity_oracle", purity(rho), Provenance::Oracle);
        sec.add("purity_anchor", 0.94, Provenance::Anchor);

        const auto m2 = estimate_sre(ds);
        sec.add("m2", m2.mean, Provenance::Estimate, m2.sampling_error);
        sec.add("m2_oracle", sre_exact(rho), Provenance::Oracle);
        sec.add("m2_anchor", anchor, Provenance::Anchor);

        const auto pa = estimate_rdm_purity(ds, keep_a);
        sec.add("rdm_purity", pa.mean, Provenance::Estimate, pa.sampling_error);
        sec.add("rdm_purity_oracle", purity(partial_trace(rho, keep_a)), Provenance::Oracle);
        const auto nl = nonlocal_from_rdm(pa, p_dep);
        sec.add("m2_nonlocal", nl.value, Provenance::Estimate, nl.error);
        if (nl.clamped) {
            rep.notes.push_back(sec.name + ": reduced purity estimate outside the depolarized model range, clamped");
        }
        const DensityMatrix ideal = prepare(id, 1.0);
        sec.add("m2_nonlocal_oracle", nonlocal_magic_schmidt(schmidt_spectrum(ideal).lambda), Provenance::Oracle);

        sec.check("purity_oracle_near_anchor", "purity_oracle", "purity_anchor", ToleranceKind::Absolute, 0.02);
        sec.check("purity_within_3_sigma", "purity", "purity_oracle", ToleranceKind::Sigma, 3.0);
        sec.check("m2_oracle_near_anchor", "m2_oracle", "m2_anchor", ToleranceKind::Absolute, 0.01);
        sec.check("m2_near_anchor", "m2", "m2_anchor", ToleranceKind::Absolute, 0.05);
        sec.check("m2_within_3_sigma", "m2", "m2_anchor", ToleranceKind::Sigma, 3.0);
        rep.sections.push_back(std::move(sec));
    }
    return rep;
}

Report report_fig3(const Fig3Options &opt) {
    const double p_dep = opt.p_dep ? *opt.p_dep : calibrate_p_dep_for_purity(0.94);
    if (!(p_dep > 0.0 && p_dep <= 1.0)) {
        throw DomainError("p_dep must lie in (0, 1]");
    }
    Report rep;
    rep.title = "stabilizer entropy and non-local magic of the NLM family";
    rep.parameters = Json{{"p_dep_cz", p_dep},
                          {"seed", opt.seed},
                          {"n_rand", opt.n_rand},
                          {"n_shot", opt.exhaustive ? Json(nullptr) : Json(opt.n_shot)},
                          {"exhaustive", opt.exhaustive},
                          {"theta_deg", opt.theta_deg}};
    Table tab{{"theta_deg", "m2_est", "m2_err", "m2_theory", "nl_est", "nl_err", "nl_theory"}, {}};
    const int keep_a[] = {0};
    std::uint64_t k = 0;
    for (double deg : opt.theta_deg) {
        if (!(deg >= 0.0 && deg <= 45.0 + 1e-12)) {
            throw DomainError("theta grid must lie within [0, 45] degrees");
        }
        const double theta = deg * kDeg;
        const DensityMatrix rho = prepare(StateId::NLM, p_dep, {{"theta", theta}});
        const std::optional<std::uint64_t> shots = opt.exhaustive ? std::nullopt : std::optional(opt.n_shot);
        const RcmDataset ds = noisy_dataset(rho, opt.n_rand, shots, opt.exhaustive, derive_seed(opt.seed, k++), opt.workers);

        ReportSection sec;
        std::ostringstream nm;
        nm << "theta_" << deg;
        sec.name = nm.str();
        const auto m2 = estimate_sre(ds);
        sec.add("m2", m2.mean, Provenance::Estimate, m2.sampling_error);
        sec.add("m2_theory", sre_nlm_depolarized(error_probability(p_dep), theta), Provenance::Theory);
        const auto pa = estimate_rdm_purity(ds, keep_a);
        sec.add("rdm_purity", pa.mean, Provenance::Estimate, pa.sampling_error);
        const auto nl = nonlocal_from_rdm(pa, p_dep);
        sec.add("m2_nonlocal", nl.value, Provenance::Estimate, nl.error);
        sec.add("m2_nonlocal_theory", nonlocal_magic_theta(theta), Provenance::Theory);
        if (nl.clamped) {
            rep.notes.push_back(sec.name + ": reduced purity estimate outside the depolarized model range, clamped");
        }
        if (opt.exhaustive) {
            sec.check("m2_matches_theory", "m2", "m2_theory", ToleranceKind::Absolute, 1e-9);
            sec.check("nonlocal_matches_theory", "m2_nonlocal", "m2_nonlocal_theory", ToleranceKind::Absolute, 1e-6);
        } else {
            sec.check("m2_within_3_sigma", "m2", "m2_theory", ToleranceKind::Sigma, 3.0);
        }
        tab.rows.push_back({deg, m2.mean, m2.sampling_error, sec.get("m2_theory").value, nl.value, nl.error,
                            sec.get("m2_nonlocal_theory").value});
        rep.sections.push_back(std::move(sec));
    }
    rep.table = std::move(tab);
    return rep;
}

Report report_fig4(const Fig4Options &opt) {
    if (!(opt.p_dep > 0.0 && opt.p_dep <= 1.0)) {
        throw DomainError("p_dep must lie in (0, 1]");
    }
    if (!(opt.step_deg > 0.0 && opt.step_deg <= 180.0)) {
        throw DomainError("grid step must lie in (0, 180] degrees");
    }
    std::vector<double> grid_deg;
    std::vector<double> grid;
    const int steps = static_cast<int>(std::lround(360.0 / opt.step_deg));
    for (int i = 0; i <= steps; ++i) {
        grid_deg.push_back(std::min(360.0, i * opt.step_deg));
        grid.push_back(grid_deg.back() * kDeg);
    }
    const DensityMatrix noisy = prepare(StateId::Fig4, opt.p_dep);
    const DensityMatrix ideal = prepare(StateId::Fig4, 1.0);
    const ErasureResult rn = sweep_landscape(noisy, grid, grid);
    const ErasureResult ri = sweep_landscape(ideal, grid, grid);

    Report rep;
    rep.title = "local-magic erasure landscape over Rz(gamma) x Rz(phi)";
    rep.parameters = Json{{"p_dep_cz", opt.p_dep}, {"step_deg", opt.step_deg}};
    ReportSection sec;
    sec.name = "Fig4";
    sec.add("min_m2", rn.residual_m2, Provenance::Oracle);
    sec.add("min_gamma_deg", rn.angles.gamma / kDeg, Provenance::Oracle);
    sec.add("min_phi_deg", rn.angles.phi / kDeg, Provenance::Oracle);
    sec.add("min_m2_anchor", 0.29, Provenance::Anchor);
    sec.add("min_m2_noise_free", ri.residual_m2, Provenance::Oracle);
    sec.add("m2_nonlocal_oracle", nonlocal_magic_schmidt(schmidt_spectrum(ideal).lambda), Provenance::Oracle);
    sec.check("min_near_anchor", "min_m2", "min_m2_anchor", ToleranceKind::Absolute, 0.01);
    sec.check("noise_free_min_is_nonlocal", "min_m2_noise_free", "m2_nonlocal_oracle", ToleranceKind::Absolute, 1e-6);
    rep.sections.push_back(std::move(sec));

    Table tab{{"gamma_deg", "phi_deg", "m2", "m2_noise_free"}, {}};
    const auto &ln = rn.landscape->values;
    const auto &li = ri.landscape->values;
    std::string ties;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            tab.rows.push_back({grid_deg[i], grid_deg[j], ln[i][j], li[i][j]});
            if (ln[i][j] <= rn.residual_m2 + 1e-12) {
                ties += (ties.empty() ? "" : " ") + ("(" + fmt_full(grid_deg[i]) + "," + fmt_full(grid_deg[j]) + ")");
            }
        }
    }
    rep.notes.push_back("grid minimum attained at (gamma_deg,phi_deg): " + ties);
    rep.table = std::move(tab);
    return rep;
}

}  // namespace nlmagic
