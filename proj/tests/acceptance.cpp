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

// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nlmagic/benchfit.hpp"
#include "nlmagic/circuits.hpp"
#include "nlmagic/erasure.hpp"
#include "nlmagic/magic.hpp"
#include "nlmagic/mitigation.hpp"
#include "nlmagic/rcm.hpp"
#include "nlmagic/report.hpp"
#include "nlmagic/scenario.hpp"

using namespace nlmagic;

namespace {

const double kPi = std::numbers::pi;
const double kLog43 = std::log2(4.0 / 3.0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char *title, double budget_s, const std::function<Outcome()> &body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = budget_s <= 0 || secs < budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %2d: %s  %s  [%s; %.3f s%s]\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs,
                in_time ? "" : ", over time budget");
    std::fflush(stdout);
}

std::string fmt(const char *f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

DensityMatrix prepare(StateId id, double p_dep, AngleMap params = {}) {
    NoiseConfig n;
    n.p_dep_cz = p_dep;
    return run_circuit(preparation_circuit(id, params), n);
}

// C_A x C_BC on qubits (A, B, ancilla): random single-qubit Clifford on A and a
// random word over {H, S, CZ, SWAP} on (B, ancilla).
ComplexMatrix random_factorized_clifford(std::mt19937_64 &rng) {
    const auto &g = single_qubit_clifford_group();
    const ComplexMatrix h = gate_matrix({GateKind::H, {0}, {}});
    const ComplexMatrix s = gate_matrix({GateKind::S, {0}, {}});
    const ComplexMatrix cz = gate_matrix({GateKind::CZ, {0, 1}, {}});
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);

    ComplexMatrix bc = ComplexMatrix::Identity(4, 4);
    const int len = static_cast<int>(rng() % 12);
    for (int k = 0; k < len; ++k) {
        switch (rng() % 6) {
            case 0: bc = tensor(h, i2) * bc; break;
            case 1: bc = tensor(i2, h) * bc; break;
            case 2: bc = tensor(s, i2) * bc; break;
            case 3: bc = tensor(i2, s) * bc; break;
            case 4: bc = cz * bc; break;
            default: bc = swap * bc; break;
        }
    }
    return tensor(g[rng() % 24].matrix, bc);
}

}  // namespace

int main() {
    run(1, "single-qubit magic anchor", 1e-3, [] {
        Circuit c;
        c.num_qubits = 1;
        c.add(GateKind::H, {0}).add(GateKind::T, {0});
        const auto rho = run_circuit(c);
        const double m2 = sre_exact(rho);
        const double err = std::abs(m2 - kLog43);
        return Outcome{err < 1e-10, fmt("|M2(T|+>) - log2(4/3)| = %.2e, tol 1e-10", err)};
    });

    run(2, "exhaustive RCM reproduces exact purity, stabilizer purity and RDM purity", 30.0, [] {
        std::mt19937_64 rng(20240601);
        double worst = 0.0;
        int states = 0;
        for (int n = 1; n <= 2; ++n) {
            const auto tuples = exhaustive_local_cliffords(n);
            for (int i = 0; i < 40; ++i) {
                const auto rho = i < 20 ? DensityMatrix::from_pure(random_pure_state(n, rng)) : random_mixed_state(n, rng);
                const auto ds = collect_dataset(rho, tuples, NoiseConfig{});
                worst = std::max(worst, std::abs(estimate_purity(ds).mean - purity(rho)));
                worst = std::max(worst, std::abs(estimate_stabilizer_purity(ds).mean - stabilizer_purity_exact(rho)));
                if (n == 2) {
                    for (int q = 0; q < 2; ++q) {
                        const int keep[] = {q};
                        worst = std::max(worst, std::abs(estimate_rdm_purity(ds, keep).mean - purity(partial_trace(rho, keep))));
                    }
                }
                ++states;
            }
        }
        return Outcome{worst < 1e-10 && states == 80, fmt("80 states, max deviation %.2e, tol 1e-10", worst)};
    });

    run(3, "Table 1 reproduction", 300.0, [] {
        const auto rep = report_table1();
        bool ok = true;
        std::string d;
        for (const auto &s : rep.sections) {
            const auto &m2 = s.get("m2");
            const double anchor = s.get("m2_anchor").value;
            const double dev = std::abs(m2.value - anchor);
            const double pur_dev = std::abs(s.get("purity_oracle").value - 0.94);
            const double pur_est_dev = std::abs(s.get("purity").value - s.get("purity_oracle").value);
            ok = ok && dev <= 0.05 && dev <= 3 * *m2.error && pur_dev <= 0.02 && pur_est_dev <= 3 * *s.get("purity").error;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s M2 %.3f+/-%.3f vs %.2f, P %.3f; ", s.name.c_str(), m2.value, *m2.error,
                          anchor, s.get("purity_oracle").value);
            d += buf;
        }
        d += "tol 0.05 and 3 sigma on M2, 0.02 on purity, 3 sigma on estimated purity";
        return Outcome{ok, d};
    });

    run(4, "NLM curve within 3 sampling errors; RDM non-local magic anchor", 0, [] {
        int good_seeds = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Fig3Options o;
            o.theta_deg = {5, 10, 15, 20, 25, 30, 35, 40, 45};
            o.seed = 1000 + seed;
            good_seeds += report_fig3(o).all_pass();
        }
        Fig3Options exact;
        exact.theta_deg = {45};
        exact.p_dep = 1.0;
        exact.exhaustive = true;
        const double nl = report_fig3(exact).section("theta_45").get("m2_nonlocal").value;
        const double nl_err = std::abs(nl - 0.41504);
        const bool ok = good_seeds >= 19 && std::abs(nl - kLog43) < 1e-6 && nl_err < 1e-5;
        return Outcome{ok, std::to_string(good_seeds) + "/20 seeds fully within 3 sigma (need 19); " +
                               fmt("exact NL at 45 deg = %.6f", nl)};
    });

    run(5, "erasure landscape minimum", 60.0, [] {
        const auto rep = report_fig4();
        const auto &s = rep.section("Fig4");
        const double mn = s.get("min_m2").value;
        const double free_dev = std::abs(s.get("min_m2_noise_free").value - s.get("m2_nonlocal_oracle").value);
        const bool ok = std::abs(mn - 0.29) <= 0.01 && free_dev < 1e-6;
        return Outcome{ok, fmt("noisy min %.5f (target 0.29 +/- 0.01)", mn) +
                               fmt(", noise-free min vs oracle %.1e (tol 1e-6)", free_dev)};
    });

    run(6, "erasure optimality on random pure states", 120.0, [] {
        std::mt19937_64 rng(606);
        double worst_over = 0.0;
        double worst_under = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto psi = DensityMatrix::from_pure(random_pure_state(2, rng));
            const double nl = nonlocal_magic_schmidt(schmidt_spectrum(psi).lambda);
            OptConfig cfg;
            cfg.seed = static_cast<std::uint64_t>(i);
            const double r = optimize_erasure(psi, cfg).residual_m2;
            worst_over = std::max(worst_over, r - nl);
            worst_under = std::max(worst_under, nl - r);
        }
        const bool ok = worst_under <= 1e-9 && worst_over < 1e-6;
        return Outcome{ok, fmt("max(residual - NL) %.2e (tol 1e-6), ", worst_over) +
                               fmt("max(NL - residual) %.2e (tol 1e-9)", worst_under)};
    });

    run(7, "readout mitigation", 0, [] {
        std::mt19937_64 rng(707);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const int n = 1 + i % 3;
            std::vector<std::pair<double, double>> eps;
            for (int q = 0; q < n; ++q) {
                eps.emplace_back(0.12 * u(rng), 0.12 * u(rng));
            }
            const auto lambda = synth_calibration_matrix(eps, 0.03 * u(rng));
            std::vector<double> p(std::size_t{1} << n);
            double s = 0;
            for (auto &x : p) {
                x = u(rng) < 0.3 ? 0.0 : u(rng);
                s += x;
            }
            if (s == 0) {
                p[0] = s = 1;
            }
            for (auto &x : p) {
                x /= s;
            }
            const ProbabilityVector truth(p);
            const auto out = mitigate_least_squares(apply_readout_noise(truth, lambda), lambda);
            for (std::size_t k = 0; k < p.size(); ++k) {
                worst = std::max(worst, std::abs(out[k] - truth[k]));
            }
        }

        const double p_dep = std::sqrt(0.92);
        const auto rho = prepare(StateId::LM, p_dep);
        const double truth = sre_exact(rho);
        const std::pair<double, double> eps[] = {{0.04, 0.04}, {0.04, 0.04}};
        const auto lambda = synth_calibration_matrix(eps);
        int wins = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            NoiseConfig n;
            n.readout_lambda = lambda;
            n.n_shot = 5000;
            n.seed = derive_seed(seed, 1);
            const auto ds = collect_dataset(rho, sample_local_cliffords(2, 400, derive_seed(seed, 0)), n);
            const double raw = std::abs(estimate_sre(ds).mean - truth);
            const double mit = std::abs(estimate_sre(mitigate_dataset(ds, lambda)).mean - truth);
            wins += mit < raw;
        }
        const bool ok = worst < 1e-8 && wins >= 95;
        return Outcome{ok, fmt("exact recovery max error %.1e (tol 1e-8), ", worst) + "mitigated bias smaller in " +
                               std::to_string(wins) + "/100 paired seeds (need 95)"};
    });

    run(8, "distillation lemma over factorized Cliffords", 0, [] {
        std::mt19937_64 rng(808);
        int samples = 0;
        int applicable = 0;
        int violations = 0;
        double worst_margin = -1.0;
        for (auto [id, params] : {std::pair{StateId::LM, AngleMap{}}, std::pair{StateId::NLM, AngleMap{{"theta", kPi / 4}}}}) {
            const auto psi = prepare(id, 1.0, params);
            for (int i = 0; i < 600; ++i) {
                const auto chk = check_distillation_lemma(psi, random_factorized_clifford(rng));
                ++samples;
                if (chk.outcome == LemmaOutcome::NotApplicable) {
                    continue;
                }
                ++applicable;
                violations += chk.outcome == LemmaOutcome::Violated;
                worst_margin = std::max(worst_margin, chk.ancilla_magic - chk.local_magic);
            }
        }
        const bool ok = samples >= 1000 && applicable > 0 && violations == 0 && worst_margin <= 1e-9;
        return Outcome{ok, std::to_string(samples) + " Cliffords, " + std::to_string(applicable) + " factorizing, " +
                               std::to_string(violations) + " violations, " +
                               fmt("max(M2(anc) - M_L) %.2e (tol 1e-9)", worst_margin)};
    });

    run(9, "decay fit roundtrip and interleaved fidelity", 0, [] {
        std::vector<int> pts;
        for (int n = 1; n <= 200; n += 10) {
            pts.push_back(n);
        }
        int within = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto f = fit_exp_decay(synth_rb_curve(0.5, 0.99, 0.5, pts, 0.01, seed));
            within += std::abs(f.p - 0.99) < 1e-3;
        }
        const double irb = irb_fidelity(0.986, 0.96, 4).value;
        const bool ok = within >= 95 && std::abs(irb - 0.98022) < 1e-5;
        return Outcome{ok, std::to_string(within) + "/100 seeds with |p - 0.99| < 1e-3 (need 95), " +
                               fmt("irb_fidelity %.6f (0.98022 +/- 1e-5)", irb)};
    });

    run(10, "determinism across reruns and worker counts", 0, [] {
        bool ok = true;
        int compared = 0;
        for (const char *file : {"nlm_noisy.json", "lm_readout_mitigated.json", "custom_circuit.json"}) {
            auto s = load_scenario(std::string(NLMAGIC_SCENARIO_DIR) + "/" + file);
            s.workers = 1;
            const std::string ref = run_scenario(s).to_json().dump(2);
            for (unsigned w : {1u, 2u, 3u, 8u}) {
                s.workers = w;
                ok = ok && run_scenario(s).to_json().dump(2) == ref;
                ++compared;
            }
        }
        Table1Options t;
        const std::string t1 = report_table1(t).to_json().dump(2);
        t.workers = 4;
        ok = ok && report_table1(t).to_json().dump(2) == t1;
        Fig3Options f;
        const std::string f3 = report_fig3(f).to_json().dump(2);
        f.workers = 5;
        ok = ok && report_fig3(f).to_json().dump(2) == f3;
        compared += 2;
        return Outcome{ok, std::to_string(compared) + " report pairs byte-compared"};
    });

    std::printf("acceptance: %d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
