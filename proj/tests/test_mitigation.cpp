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
#include "nlmagic/mitigation.hpp"
#include "nlmagic/serialization.hpp"
#include "test_util.hpp"

using namespace nlmagic;
using namespace nlmagic::testing;

namespace {

ProbabilityVector random_simplex_point(std::size_t d, std::mt19937_64 &rng, bool sparse) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(d);
    double s = 0;
    for (auto &x : v) {
        x = (sparse && u(rng) < 0.3) ? 0.0 : u(rng);
        s += x;
    }
    if (s == 0) {
        v[0] = s = 1;
    }
    for (auto &x : v) {
        x /= s;
    }
    return ProbabilityVector(v);
}

CalibrationMatrix random_dominant_lambda(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 0.12);
    std::vector<std::pair<double, double>> eps;
    for (int q = 0; q < n; ++q) {
        eps.emplace_back(u(rng), u(rng));
    }
    return synth_calibration_matrix(eps, u(rng) / 4);
}

double objective(const CalibrationMatrix &l, const ProbabilityVector &p, const ProbabilityVector &b) {
    const auto d = l.dim();
    const Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(p.values().data(), d);
    const Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.values().data(), d);
    return (l.matrix() * pv - bv).squaredNorm();
}

}  // namespace

TEST_CASE("calibration from initialization counts") {
    InitializationCounts diag{{{5000, 0}, {0, 5000}}, 5000};
    CHECK(calibration_from_counts(diag).matrix().isApprox(RealMatrix::Identity(2, 2)));

    InitializationCounts sym{{{4750, 250}, {250, 4750}}, 5000};
    const auto l = calibration_from_counts(sym);
    CHECK(std::abs(l.matrix()(0, 0) - 0.95) < 1e-15);
    CHECK(std::abs(l.matrix()(1, 0) - 0.05) < 1e-15);
    CHECK(std::abs(readout_fidelity(l) - 0.95) < 1e-15);

    // Row i of the counts becomes column i of Lambda.
    InitializationCounts asym{{{90, 10}, {30, 70}}, 100};
    const auto la = calibration_from_counts(asym);
    CHECK(std::abs(la.matrix()(1, 0) - 0.10) < 1e-15);
    CHECK(std::abs(la.matrix()(0, 1) - 0.30) < 1e-15);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        InitializationCounts ic;
        ic.n_shot = 1000;
        for (int r = 0; r < 4; ++r) {
            std::vector<std::uint64_t> row(4, 0);
            for (int s = 0; s < 1000; ++s) {
                ++row[rng() % 4];
            }
            ic.counts.push_back(row);
        }
        const auto m = calibration_from_counts(ic).matrix();
        for (Eigen::Index j = 0; j < 4; ++j) {
            CHECK(std::abs(m.col(j).sum() - 1.0) < 1e-12);
        }
    }

    InitializationCounts zero{{{0, 0}, {0, 5000}}, 5000};
    CHECK_THROWS(calibration_from_counts(zero));
    InitializationCounts mismatch{{{10, 0}, {0, 9}}, 10};
    CHECK_THROWS(calibration_from_counts(mismatch));
}

TEST_CASE("readout fidelity") {
    CHECK(readout_fidelity(CalibrationMatrix::identity(2)) == 1.0);
    const std::pair<double, double> eps[] = {{0.04, 0.04}, {0.04, 0.04}};
    CHECK(std::abs(readout_fidelity(synth_calibration_matrix(eps)) - 0.9216) < 1e-12);
}

TEST_CASE("simplex projection") {
    const auto p = project_to_simplex({0.2, 0.3, 0.5});
    CHECK(std::abs(p[0] - 0.2) < 1e-15);
    const auto q = project_to_simplex({2.0, 0.0});
    CHECK(q == std::vector<double>{1.0, 0.0});
    const auto r = project_to_simplex({0.6, 0.6, -1.0});
    CHECK(std::abs(r[0] - 0.5) < 1e-15);
    CHECK(r[2] == 0.0);
}

TEST_CASE("mitigation with the identity is a no-op") {
    const ProbabilityVector p({0.1, 0.2, 0.3, 0.4});
    const auto out = mitigate_least_squares(p, CalibrationMatrix::identity(2));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(out[i] - p[i]) < 1e-12);
    }
}

TEST_CASE("exact recovery of a Bell-like distribution") {
    const std::pair<double, double> eps[] = {{0.05, 0.05}, {0.05, 0.05}};
    const auto l = synth_calibration_matrix(eps);
    const ProbabilityVector truth({0.5, 0.0, 0.0, 0.5});
    const auto out = mitigate_least_squares(apply_readout_noise(truth, l), l);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(out[i] - truth[i]) < 1e-9);
    }
}

TEST_CASE("exact recovery on random instances") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + i % 3;
        const auto l = random_dominant_lambda(n, rng);
        const auto truth = random_simplex_point(std::size_t{1} << n, rng, i % 2 == 0);
        const auto out = mitigate_least_squares(apply_readout_noise(truth, l), l);
        double err = 0;
        for (std::size_t k = 0; k < truth.size(); ++k) {
            err = std::max(err, std::abs(out[k] - truth[k]));
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("output is feasible for adversarial inputs") {
    const std::pair<double, double> eps[] = {{0.1, 0.1}, {0.1, 0.1}};
    const auto l = synth_calibration_matrix(eps);
    // Outside Lambda(simplex): the naive inverse has negative entries.
    const ProbabilityVector p({1.0, 0.0, 0.0, 0.0});
    const Eigen::VectorXd naive = l.matrix().inverse() * Eigen::Vector4d(1, 0, 0, 0);
    CHECK(naive.minCoeff() < 0.0);
    const auto out = mitigate_least_squares(p, l);
    double s = 0;
    for (double x : out.values()) {
        CHECK(x >= 0.0);
        s += x;
    }
    CHECK(std::abs(s - 1.0) < 1e-9);
    CHECK(std::abs(out[0] - 1.0) < 1e-9);
}

TEST_CASE("solver properties") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 30; ++i) {
        const auto l = random_dominant_lambda(2, rng);
        const auto b = random_simplex_point(4, rng, true);
        const auto res = mitigate_least_squares_detailed(b, l);
        for (std::size_t k = 1; k < res.objective_history.size(); ++k) {
            CHECK(res.objective_history[k] <= res.objective_history[k - 1] + 1e-15);
        }
        // Not worse than any vertex.
        for (std::size_t v = 0; v < 4; ++v) {
            std::vector<double> e(4, 0.0);
            e[v] = 1.0;
            CHECK(objective(l, res.p, b) <= objective(l, ProbabilityVector(e), b) + 1e-10);
        }
        // Projection: the output is a fixed point once pushed back through Lambda.
        const auto again = mitigate_least_squares(apply_readout_noise(res.p, l), l);
        const auto repeat = mitigate_least_squares(b, l);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(again[k] - res.p[k]) < 1e-10);
            CHECK(repeat[k] == res.p[k]);
        }
    }
}

TEST_CASE("non-convergence is reported") {
    const std::pair<double, double> eps[] = {{0.45, 0.45}};
    const auto l = synth_calibration_matrix(eps);
    CHECK_THROWS_AS(mitigate_least_squares_detailed(ProbabilityVector({0.3, 0.7}), l, 1e-30, 3), ConvergenceError);
    CHECK_THROWS_AS(mitigate_least_squares(ProbabilityVector({0.25, 0.25, 0.25, 0.25}), l), DimensionMismatchError);
}

TEST_CASE("mitigating a dataset restores the unmitigated oracle") {
    const std::pair<double, double> eps[] = {{0.04, 0.04}, {0.04, 0.04}};
    const auto l = synth_calibration_matrix(eps);
    const auto rho = ideal(StateId::LM);
    NoiseConfig n;
    n.readout_lambda = l;
    const auto ds = collect_dataset(rho, exhaustive_local_cliffords(2), n);
    const auto fixed = mitigate_dataset(ds, l);
    CHECK(std::abs(estimate_sre(fixed).mean - sre_exact(rho)) < 1e-9);
    CHECK(std::abs(estimate_sre(ds).mean - sre_exact(rho)) > 0.05);
}

TEST_CASE("calibration and counts JSON") {
    const std::pair<double, double> eps[] = {{0.03, 0.06}};
    const auto l = synth_calibration_matrix(eps);
    const auto back = calibration_from_json(Json::parse(calibration_to_json(l).dump()));
    CHECK(back.matrix() == l.matrix());
    InitializationCounts ic{{{4750, 250}, {250, 4750}}, 5000};
    const auto ic2 = counts_from_json(counts_to_json(ic));
    CHECK(ic2.counts == ic.counts);
    CHECK(probabilities_from_json(Json::parse(R"({"probabilities": [0.25, 0.75]})"))[1] == 0.75);
}
