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

#ifndef NLMAGIC_RCM_HPP
#define NLMAGIC_RCM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlmagic/noise.hpp"
#include "nlmagic/qcore.hpp"

namespace nlmagic {

/// Per-qubit canonical ids (0..23) of a product of single-qubit Cliffords; entry k acts on qubit k.
using CliffordTuple = std::vector<int>;

struct EstimateWithError {
    double mean = 0.0;
    double sample_std = 0.0;      // 1/(n-1) normalization
    double sampling_error = 0.0;  // sample_std / sqrt(n)
    std::size_t n_samples = 0;

    static EstimateWithError from_samples(std::span<const double> xs);
};

struct RcmDataset {
    int num_qubits = 1;
    std::vector<CliffordTuple> clifford_ids;
    std::vector<ProbabilityVector> prob_vectors;
    std::optional<std::uint64_t> n_shot;
    std::uint64_t seed = 0;

    std::size_t size() const { return prob_vectors.size(); }
    void validate() const;
};

/// i.i.d. uniform tuples over {0..23}^N. When n_rand == 24^N every tuple is
/// returned exactly once, in lexicographic order, and the seed is unused.
std::vector<CliffordTuple> sample_local_cliffords(int num_qubits, std::size_t n_rand, std::uint64_t seed);

std::vector<CliffordTuple> exhaustive_local_cliffords(int num_qubits);

/// C = C_0 x C_1 x ... for a tuple of canonical ids.
ComplexMatrix local_clifford_unitary(const CliffordTuple &ids);

/// Applies each Clifford product to rho and records the outcome distribution,
/// then readout noise and finite shots when configured. Shot seeds are derived
/// from (noise.seed, sample index), so the result does not depend on `workers`.
RcmDataset collect_dataset(const DensityMatrix &rho, std::span<const CliffordTuple> tuples, const NoiseConfig &noise,
                           unsigned workers = 1);

/// Hamming weight of the XOR of all strings (2 or 4 of equal length, over '0'/'1').
int hamming_xor_weight(std::span<const std::string> strings);
int hamming_xor_weight(std::span<const std::uint64_t> strings);

/// d sum_{s,s'} (-2)^-|s xor s'| P(s) P(s') for one outcome distribution.
double purity_statistic(const ProbabilityVector &p);

/// sum_{s1..s4} (-2)^-|s1 xor s2 xor s3 xor s4| P(s1) P(s2) P(s3) P(s4).
/// Its Clifford average equals d^-2 sum_P Tr(P rho)^4 (no sign flip, no d prefactor).
double stabilizer_purity_statistic(const ProbabilityVector &p);

EstimateWithError estimate_purity(const RcmDataset &ds);
EstimateWithError estimate_stabilizer_purity(const RcmDataset &ds);

/// -log2 W + log2 P - log2 d from the two sample means, with the uncorrelated
/// first-order error propagation. Throws UndersampledDataError if either mean <= 0.
EstimateWithError estimate_sre(const RcmDataset &ds);

/// Marginal distribution over the kept qubits (increasing qubit order, first kept = MSB).
ProbabilityVector marginalize(const ProbabilityVector &p, std::span<const int> keep);

EstimateWithError estimate_rdm_purity(const RcmDataset &ds, std::span<const int> keep);

}  // namespace nlmagic

#endif
