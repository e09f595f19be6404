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

#include "nlmagic/erasure.hpp"
#include "nlmagic/errors.hpp"
#include "nlmagic/magic.hpp"
#include "test_util.hpp"

using namespace nlmagic;
using namespace nlmagic::testing;

namespace {

const double kPi = std::numbers::pi;
const double kDeg = kPi / 180.0;

double nonlocal_oracle(const DensityMatrix &rho) {
    return nonlocal_magic_schmidt(schmidt_spectrum(rho).lambda);
}

std::vector<double> grid(double step_deg) {
    std::vector<double> g;
    for (double a = 0; a <= 360.0 + 1e-9; a += step_deg) {
        g.push_back(a * kDeg);
    }
    return g;
}

}  // namespace

TEST_CASE("angles wrap into [0, 2pi)") {
    const auto w = ErasureAngles{-0.5, 7.0, 2 * kPi, 0.0, -2 * kPi, 13.0}.wrapped();
    for (double a : w.to_array()) {
        CHECK(a >= 0.0);
        CHECK(a < 2 * kPi);
    }
    CHECK(std::abs(w.alpha - (2 * kPi - 0.5)) < 1e-12);
    CHECK(w.gamma == 0.0);
}

TEST_CASE("objective") {
    const auto lm = ideal(StateId::LM);
    CHECK(std::abs(erasure_objective(lm, {}) - sre_exact(lm)) < 1e-12);
    ErasureAngles undo;
    undo.gamma = 7 * kPi / 4;
    CHECK(std::abs(erasure_objective(lm, undo)) < 1e-10);

    ErasureAngles phi;
    phi.phi = 67.61 * kDeg;
    CHECK(std::abs(erasure_objective(ideal(StateId::M), phi) - 0.192650395514) < 1e-10);
    CHECK_THROWS_AS(erasure_objective(t_plus(), {}), DimensionMismatchError);
}

TEST_CASE("fast objective matches the direct route") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    for (int i = 0; i < 50; ++i) {
        const auto rho = i % 2 ? random_mixed_state(2, rng) : DensityMatrix::from_pure(random_pure_state(2, rng));
        const ErasureAngles a{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        CHECK(std::abs(erasure_objective(rho, a) - erasure_objective_direct(rho, a)) < 1e-10);
    }
}

TEST_CASE("optimizer on catalogued states") {
    const auto r1 = optimize_erasure(ideal(StateId::LM));
    CHECK(r1.residual_m2 < 1e-6);
    const auto r2 = optimize_erasure(ideal(StateId::NLM));
    CHECK(std::abs(r2.residual_m2 - 0.41503749927884) < 1e-6);
    const auto m = ideal(StateId::M);
    const auto r3 = optimize_erasure(m);
    CHECK(std::abs(r3.residual_m2 - nonlocal_oracle(m)) < 1e-6);
    CHECK(std::abs(erasure_objective(m, r3.angles) - r3.residual_m2) < 1e-12);

    OptConfig pair;
    pair.search = ErasureSearch::RzPair;
    const auto r4 = optimize_erasure(m, pair);
    CHECK(std::abs(r4.residual_m2 - nonlocal_oracle(m)) < 1e-6);
    CHECK(std::abs(std::fmod(r4.angles.phi / kDeg, 90.0) - 67.5) < 1e-2);
}

TEST_CASE("optimizer reaches the non-local floor on random pure states") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 10; ++i) {
        const auto psi = DensityMatrix::from_pure(random_pure_state(2, rng));
        OptConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(i);
        const auto r = optimize_erasure(psi, cfg);
        const double nl = nonlocal_oracle(psi);
        CHECK(r.residual_m2 >= nl - 1e-9);
        CHECK(r.residual_m2 - nl < 1e-6);
    }
}

TEST_CASE("optimizer is deterministic and never worse than the grid") {
    const auto rho = noisy(StateId::M, 0.95);
    OptConfig cfg;
    cfg.seed = 5;
    const auto a = optimize_erasure(rho, cfg);
    const auto b = optimize_erasure(rho, cfg);
    CHECK(a.residual_m2 == b.residual_m2);
    CHECK(a.angles.to_array() == b.angles.to_array());
    CHECK(a.evaluations == b.evaluations);

    const auto sweep = sweep_landscape(rho, grid(15), grid(15));
    CHECK(a.residual_m2 <= sweep.residual_m2 + 1e-12);

    OptConfig tiny;
    tiny.max_evals = 10;
    CHECK_FALSE(optimize_erasure(rho, tiny).converged);
    OptConfig bad;
    bad.tol = 0;
    CHECK_THROWS_AS(optimize_erasure(rho, bad), DomainError);
}

TEST_CASE("landscape sweep") {
    const auto g = grid(22.5);
    // Rz rotations only phase computational-basis states, so the landscape of |00> is flat at zero.
    const auto stab = sweep_landscape(DensityMatrix::basis_state(2, 0), g, g);
    REQUIRE(stab.landscape.has_value());
    for (const auto &row : stab.landscape->values) {
        for (double v : row) {
            CHECK(std::abs(v) < 1e-10);
        }
    }

    const auto f4 = sweep_landscape(noisy(StateId::Fig4, 0.949), g, g);
    const auto &v = f4.landscape->values;
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(v[i].front() - v[i].back()) < 1e-10);
        CHECK(std::abs(v.front()[i] - v.back()[i]) < 1e-10);
    }
    CHECK(std::abs(f4.residual_m2 - 0.290003283578) < 1e-10);
    // A Bell pair is a stabilizer state but picks up magic at non-Clifford angles.
    CHECK(sweep_landscape(bell(), g, g).landscape->values[1][0] > 0.1);
    // (67.5, 90) is one of the tied grid minima.
    CHECK(std::abs(v[3][4] - f4.residual_m2) < 1e-12);
    CHECK(std::abs(f4.angles.gamma / kDeg - 67.5) < 1e-9);

    const auto f4i = sweep_landscape(ideal(StateId::Fig4), g, g);
    CHECK(std::abs(f4i.residual_m2 - nonlocal_oracle(ideal(StateId::Fig4))) < 1e-6);

    const std::string csv = f4.landscape->to_csv();
    CHECK(csv.rfind("gamma_deg,phi_deg,m2\n", 0) == 0);
    CHECK(csv.find("\n67.5,90,") != std::string::npos);
    CHECK_THROWS_AS(sweep_landscape(bell(), {}, g), DomainError);
}
