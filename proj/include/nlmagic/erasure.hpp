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

#ifndef NLMAGIC_ERASURE_HPP
#define NLMAGIC_ERASURE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlmagic/qcore.hpp"

namespace nlmagic {

/// U_A = Rz(alpha) Ry(beta) Rz(gamma) on qubit 0, U_B = Rz(delta) Ry(eta) Rz(phi) on qubit 1.
struct ErasureAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    double phi = 0.0;

    static ErasureAngles from_array(const std::array<double, 6> &a);
    std::array<double, 6> to_array() const;
    /// Every angle mapped into [0, 2*pi).
    ErasureAngles wrapped() const;
    ComplexMatrix unitary() const;
};

struct Landscape {
    std::vector<double> gamma_grid;
    std::vector<double> phi_grid;
    /// values[i][j] = M2 at (gamma_grid[i], phi_grid[j]).
    std::vector<std::vector<double>> values;

    std::string to_csv() const;
};

struct ErasureResult {
    ErasureAngles angles;
    double residual_m2 = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
    std::optional<Landscape> landscape;
};

enum class ErasureSearch {
    /// All six Euler angles, coarse grid step 45 degrees.
    Full,
    /// Only gamma and phi (Rz on each qubit), coarse grid step 15 degrees.
    RzPair,
};

struct OptConfig {
    ErasureSearch search = ErasureSearch::Full;
    double tol = 1e-8;
    std::size_t max_evals = 5000;
    std::uint64_t seed = 0;
    /// Number of best grid points refined, plus the same number of seeded random starts.
    int restarts = 6;
};

/// sre_exact((U_A x U_B) rho (U_A x U_B)^dagger) for a two-qubit rho.
double erasure_objective(const DensityMatrix &rho, const ErasureAngles &a);

/// Same value via the unitary conjugation and the Pauli-sum oracle; slower, used as a cross-check.
double erasure_objective_direct(const DensityMatrix &rho, const ErasureAngles &a);

/// Coarse grid followed by Nelder-Mead refinement from several starts. Returns the
/// best point found; `converged` is false if the evaluation budget ran out first.
ErasureResult optimize_erasure(const DensityMatrix &rho, const OptConfig &cfg = {});

/// M2 over Rz(gamma) x Rz(phi) with all other angles zero; reports the grid minimum.
ErasureResult sweep_landscape(const DensityMatrix &rho, const std::vector<double> &gamma_grid,
                              const std::vector<double> &phi_grid);

}  // namespace nlmagic

#endif
