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

#ifndef NLMAGIC_MITIGATION_HPP
#define NLMAGIC_MITIGATION_HPP

#include <cstdint>
#include <vector>

#include "nlmagic/noise.hpp"
#include "nlmagic/rcm.hpp"

namespace nlmagic {

/// counts[i][j]: number of times outcome j was read after preparing basis state i.
struct InitializationCounts {
    std::vector<std::vector<std::uint64_t>> counts;
    std::uint64_t n_shot = 0;

    void validate() const;
};

/// Lambda(i, j) = counts[j][i] / n_shot.
CalibrationMatrix calibration_from_counts(const InitializationCounts &ic);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(const std::vector<double> &v);

struct LeastSquaresResult {
    ProbabilityVector p;
    std::vector<double> objective_history;
    std::size_t iterations = 0;
};

/// Projected gradient descent for argmin_{p in simplex} |Lambda p - p_exp|^2 with
/// step 1/L. Stops once the step norm falls below `tol`; throws ConvergenceError
/// after `max_iterations`.
LeastSquaresResult mitigate_least_squares_detailed(const ProbabilityVector &p_exp, const CalibrationMatrix &lambda,
                                                   double tol = 1e-13, std::size_t max_iterations = 100000);

ProbabilityVector mitigate_least_squares(const ProbabilityVector &p_exp, const CalibrationMatrix &lambda,
                                         double tol = 1e-13);

/// Mitigates every probability vector of a dataset in place of the raw ones.
RcmDataset mitigate_dataset(const RcmDataset &ds, const CalibrationMatrix &lambda, double tol = 1e-13);

/// Mean of the diagonal of Lambda.
double readout_fidelity(const CalibrationMatrix &lambda);

}  // namespace nlmagic

#endif
