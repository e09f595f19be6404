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

#ifndef NLMAGIC_NOISE_HPP
#define NLMAGIC_NOISE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nlmagic/qcore.hpp"

namespace nlmagic {

/// Column-stochastic readout calibration matrix: entry (i, j) is the probability
/// of reading outcome i when basis state j was prepared.
class CalibrationMatrix {
public:
    explicit CalibrationMatrix(RealMatrix lambda);
    static CalibrationMatrix identity(int num_qubits);

    const RealMatrix &matrix() const { return lambda_; }
    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return lambda_.rows(); }

private:
    RealMatrix lambda_;
    int n_;
};

/// Outcome distribution over 2^N computational-basis strings (qubit 0 = MSB).
///
/// Entries down to -1e-12 are clamped to zero and the vector renormalized;
/// anything more negative, or a sum off by more than 1e-9, is rejected.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> probs);

    const std::vector<double> &values() const { return p_; }
    size_t size() const { return p_.size(); }
    double operator[](size_t i) const { return p_[i]; }
    int num_qubits() const;

private:
    std::vector<double> p_;
};

struct NoiseConfig {
    /// Survival probability of the global depolarizing channel applied after each CZ.
    double p_dep_cz = 1.0;
    std::optional<CalibrationMatrix> readout_lambda;
    std::optional<std::uint64_t> n_shot;
    std::uint64_t seed = 0;

    void validate() const;
};

/// The main-text closed forms use the error probability; everything else here
/// stores the survival probability.
inline double error_probability(double survival) { return 1.0 - survival; }
inline double survival_probability(double error) { return 1.0 - error; }

/// p_dep * rho + (1 - p_dep) * I/d on the whole register.
DensityMatrix depolarize(const DensityMatrix &rho, double p_dep);

/// Born-rule probabilities of the computational-basis measurement.
ProbabilityVector born_probabilities(const DensityMatrix &rho);

ProbabilityVector apply_readout_noise(const ProbabilityVector &p, const CalibrationMatrix &lambda);

/// Empirical frequencies of n_shot multinomial draws; a pure function of (p, n_shot, seed).
ProbabilityVector sample_shots(const ProbabilityVector &p, std::uint64_t n_shot, std::uint64_t seed);

/// Tensor product of per-qubit flip matrices [[1-e01, e10], [e01, 1-e10]], where
/// e01 = P(read 1 | prepared 0). A nonzero `correlation` mixes in a joint flip of
/// every qubit (j -> j xor 1...1) with that weight before column renormalization.
CalibrationMatrix synth_calibration_matrix(std::span<const std::pair<double, double>> per_qubit_eps,
                                           double correlation = 0.0);

/// Splitmix-style derivation of an independent stream seed for sample `index`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace nlmagic

#endif
