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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"

#include "nlmagic/benchfit.hpp"
#include "nlmagic/circuits.hpp"
#include "nlmagic/erasure.hpp"
#include "nlmagic/magic.hpp"
#include "nlmagic/mitigation.hpp"
#include "nlmagic/report.hpp"
#include "nlmagic/scenario.hpp"
#include "nlmagic/serialization.hpp"

namespace {

using namespace nlmagic;

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFlagFailure = 2;
constexpr double kDeg = std::numbers::pi / 180.0;

struct Output {
    std::string format = "text";
    std::string out_dir;
};

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return Json::parse(in);
}

void emit(const Output &o, const std::string &stem, const std::string &text, const std::string &ext) {
    if (o.out_dir.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::filesystem::create_directories(o.out_dir);
    const auto path = std::filesystem::path(o.out_dir) / (stem + "." + ext);
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!text.empty() && text.back() != '\n') {
        f << '\n';
    }
    std::cerr << "wrote " << path.string() << '\n';
}

int emit_report(const Output &o, const std::string &stem, const Report &r) {
    if (o.format == "json") {
        emit(o, stem, r.to_json().dump(2), "json");
    } else if (o.format == "csv") {
        emit(o, stem, r.to_csv(), "csv");
    } else {
        emit(o, stem, r.to_text(), "txt");
    }
    return r.all_pass() ? kExitPass : kExitFlagFailure;
}

void emit_json(const Output &o, const std::string &stem, const Json &j) {
    emit(o, stem, j.dump(2), "json");
}

AngleMap parse_params_deg(const std::vector<std::string> &kv) {
    AngleMap m;
    for (const auto &s : kv) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("parameter '" + s + "' is not of the form name=degrees");
        }
        m[s.substr(0, eq)] = std::stod(s.substr(eq + 1)) * kDeg;
    }
    return m;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Stabilizer-entropy magic estimation, mitigation and erasure"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    std::uint64_t seed = 2024;
    bool seed_given = false;
    unsigned workers = 1;
    app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", out.out_dir, "Write output into this directory instead of stdout");
    auto *seed_opt = app.add_option("--seed", seed, "Random seed");
    app.add_option("--workers", workers, "Worker threads for dataset collection")->check(CLI::PositiveNumber);

    // magic exact
    auto *magic = app.add_subcommand("magic", "Exact magic quantities");
    magic->require_subcommand(1);
    auto *magic_exact = magic->add_subcommand("exact", "Exact purity, stabilizer purity and M2 of a catalogued state");
    std::string state_id = "LM";
    std::vector<std::string> params;
    double p_dep = 1.0;
    magic_exact->add_option("--state", state_id, "State id (Psi0..Psi4, LM, LM_erased, M, M_erased, NLM, Fig4)");
    magic_exact->add_option("--param", params, "Angle parameter name=degrees (theta, phi, gamma, t)");
    magic_exact->add_option("--p-dep", p_dep, "CZ depolarizing survival probability")->check(CLI::Range(0.0, 1.0));

    // rcm estimate
    auto *rcm = app.add_subcommand("rcm", "Randomized Clifford measurement estimators");
    rcm->require_subcommand(1);
    auto *rcm_est = rcm->add_subcommand("estimate", "Run a scenario through the estimation pipeline");
    std::string scenario_path;
    bool exhaustive = false;
    rcm_est->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    rcm_est->add_flag("--exhaustive", exhaustive, "Use all 24^N local Clifford tuples");

    // mitigate
    auto *mit = app.add_subcommand("mitigate", "Least-squares readout mitigation of a probability vector");
    std::string counts_path, lambda_path, probs_path;
    auto *counts_opt = mit->add_option("--counts", counts_path, "Initialization counts JSON")->check(CLI::ExistingFile);
    auto *lambda_opt = mit->add_option("--lambda", lambda_path, "Calibration matrix JSON")->check(CLI::ExistingFile);
    counts_opt->excludes(lambda_opt);
    mit->add_option("--probs", probs_path, "Measured probability vector JSON")->required()->check(CLI::ExistingFile);

    // erase sweep
    auto *erase = app.add_subcommand("erase", "Local-magic erasure");
    erase->require_subcommand(1);
    auto *sweep = erase->add_subcommand("sweep", "Rz(gamma) x Rz(phi) landscape and optional full optimization");
    std::string sweep_state = "Fig4";
    double sweep_p = kFig4PDep;
    double step = 22.5;
    bool optimize = false;
    sweep->add_option("--state", sweep_state, "Two-qubit state id");
    sweep->add_option("--param", params, "Angle parameter name=degrees");
    sweep->add_option("--p-dep", sweep_p, "CZ depolarizing survival probability")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--step", step, "Grid step in degrees")->check(CLI::Range(0.1, 180.0));
    sweep->add_flag("--optimize", optimize, "Also run the six-angle optimizer");

    // fit rb
    auto *fit = app.add_subcommand("fit", "Benchmarking fits");
    fit->require_subcommand(1);
    auto *fit_rb = fit->add_subcommand("rb", "Fit A p^N + B to a decay curve");
    std::string csv_path;
    int dim = 2;
    std::optional<double> reference_p;
    fit_rb->add_option("--csv", csv_path, "CSV with columns N, survival")->required()->check(CLI::ExistingFile);
    fit_rb->add_option("--d", dim, "Hilbert-space dimension")->check(CLI::Range(2, 1 << 20));
    fit_rb->add_option("--reference-p", reference_p, "Reference decay p0; reports the interleaved fidelity");

    // report
    auto *report = app.add_subcommand("report", "Reproduction reports");
    report->require_subcommand(1);
    std::optional<double> report_p;
    std::size_t n_rand = 400;
    std::uint64_t n_shot = 5000;
    auto *t1 = report->add_subcommand("table1", "Purity and magic of the four benchmark states");
    auto *f3 = report->add_subcommand("fig3", "NLM family curve");
    auto *f4 = report->add_subcommand("fig4", "Erasure landscape");
    for (auto *sc : {t1, f3}) {
        sc->add_option("--p-dep", report_p, "CZ depolarizing survival probability (default: calibrated to purity 0.94)");
        sc->add_option("--n-rand", n_rand, "Clifford samples")->check(CLI::Range(2, 100000000));
        sc->add_option("--n-shot", n_shot, "Shots per Clifford sample")->check(CLI::PositiveNumber);
    }
    f3->add_flag("--exhaustive", exhaustive, "Exact probabilities over all 576 Clifford tuples");
    f4->add_option("--p-dep", report_p, "CZ depolarizing survival probability (default: frozen fit)");
    f4->add_option("--step", step, "Grid step in degrees")->check(CLI::Range(0.1, 180.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }
    seed_given = seed_opt->count() > 0;

    try {
        if (magic_exact->parsed()) {
            NoiseConfig noise;
            noise.p_dep_cz = p_dep;
            const auto rho = run_circuit(preparation_circuit(parse_state_id(state_id), parse_params_deg(params)), noise);
            const auto rep = magic_report(rho);
            if (out.format == "json") {
                emit_json(out, "magic_" + state_id, magic_report_to_json(rep));
            } else {
                Report r;
                r.title = "exact magic of " + state_id;
                ReportSection sec;
                sec.name = state_id;
                sec.add("purity", rep.purity, Provenance::Oracle);
                sec.add("stab_purity", rep.stabilizer_purity, Provenance::Oracle);
                sec.add("m2", rep.m2, Provenance::Oracle);
                if (rep.m2_nonlocal) {
                    sec.add("m2_nonlocal", *rep.m2_nonlocal, Provenance::Oracle);
                    sec.add("m2_local", *rep.m2_local, Provenance::Oracle);
                }
                r.sections.push_back(std::move(sec));
                emit_report(out, "magic_" + state_id, r);
            }
            return kExitPass;
        }
        if (rcm_est->parsed()) {
            Scenario s = load_scenario(scenario_path);
            if (seed_given) {
                s.seed = seed;
            }
            if (exhaustive) {
                s.exhaustive = true;
            }
            s.workers = workers;
            return emit_report(out, s.name, run_scenario(s));
        }
        if (mit->parsed()) {
            if (!counts_opt->count() && !lambda_opt->count()) {
                throw std::runtime_error("mitigate needs --counts or --lambda");
            }
            const CalibrationMatrix lambda = counts_opt->count() ? calibration_from_counts(counts_from_json(read_json(counts_path)))
                                                                 : calibration_from_json(read_json(lambda_path));
            const auto res = mitigate_least_squares_detailed(probabilities_from_json(read_json(probs_path)), lambda);
            Json j{{"probabilities", res.p.values()},
                   {"iterations", res.iterations},
                   {"objective", res.objective_history.back()},
                   {"readout_fidelity", readout_fidelity(lambda)}};
            emit_json(out, "mitigated", j);
            return kExitPass;
        }
        if (sweep->parsed()) {
            NoiseConfig noise;
            noise.p_dep_cz = sweep_p;
            const auto rho = run_circuit(preparation_circuit(parse_state_id(sweep_state), parse_params_deg(params)), noise);
            std::vector<double> grid;
            const int steps = static_cast<int>(std::lround(360.0 / step));
            for (int i = 0; i <= steps; ++i) {
                grid.push_back(std::min(360.0, i * step) * kDeg);
            }
            const auto res = sweep_landscape(rho, grid, grid);
            if (out.format == "csv") {
                emit(out, "landscape_" + sweep_state, res.landscape->to_csv(), "csv");
                return kExitPass;
            }
            Json j{{"state", sweep_state},
                   {"p_dep_cz", sweep_p},
                   {"grid_min_m2", res.residual_m2},
                   {"grid_min_gamma_deg", res.angles.gamma / kDeg},
                   {"grid_min_phi_deg", res.angles.phi / kDeg}};
            if (optimize) {
                OptConfig cfg;
                cfg.seed = seed;
                const auto opt = optimize_erasure(rho, cfg);
                Json angles = Json::array();
                for (double a : opt.angles.to_array()) {
                    angles.push_back(a / kDeg);
                }
                j["optimized"] = Json{{"residual_m2", opt.residual_m2},
                                      {"angles_deg", angles},
                                      {"evaluations", opt.evaluations},
                                      {"converged", opt.converged}};
            }
            emit_json(out, "erase_" + sweep_state, j);
            return kExitPass;
        }
        if (fit_rb->parsed()) {
            std::ifstream in(csv_path);
            const auto curve = read_decay_csv(in);
            const auto f = fit_exp_decay(curve);
            const auto g = avg_gate_fidelity(f.p, dim);
            Json j{{"a", f.a}, {"p", f.p}, {"b", f.b}, {"residual_rms", f.residual_rms}, {"iterations", f.iterations},
                   {"f_cl", g.f_cl}, {"f_avg", g.f_avg}};
            if (reference_p) {
                const auto irb = irb_fidelity(*reference_p, f.p, dim);
                j["irb_fidelity"] = irb.value;
                j["irb_exceeds_one"] = irb.exceeds_one;
            }
            emit_json(out, "fit_rb", j);
            return kExitPass;
        }
        if (t1->parsed()) {
            Table1Options o;
            o.p_dep = report_p;
            o.seed = seed;
            o.n_rand = n_rand;
            o.n_shot = n_shot;
            o.workers = workers;
            return emit_report(out, "table1", report_table1(o));
        }
        if (f3->parsed()) {
            Fig3Options o;
            o.p_dep = report_p;
            o.seed = seed;
            o.n_rand = n_rand;
            o.n_shot = n_shot;
            o.exhaustive = exhaustive;
            o.workers = workers;
            return emit_report(out, "fig3", report_fig3(o));
        }
        if (f4->parsed()) {
            Fig4Options o;
            if (report_p) {
                o.p_dep = *report_p;
            }
            o.step_deg = step;
            return emit_report(out, "fig4", report_fig4(o));
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
