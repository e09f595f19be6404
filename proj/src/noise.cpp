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

#include "nlmagic/noise.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "nlmagic/errors.hpp"

namespace nlmagic {

CalibrationMatrix::CalibrationMatrix(RealMatrix lambda) : lambda_(std::move(lambda)), n_(0) {
    if (lambda_.rows() != lambda_.cols()) {
        throw DimensionMismatchError("calibration matrix must be square");
    }
    n_ = qubits_for_dimension(lambda_.rows());
    for (Eigen::Index j = 0; j < lambda_.cols(); ++j) {
        for (Eigen::Index i = 0; i < lambda_.rows(); ++i) {
            double v = lambda_(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DomainError("calibration entry outside [0, 1]");
            }
        }
        if (std::abs(lambda_.col(j).sum() - 1.0) > 1e-9) {
            throw DomainError("calibration column " + std::to_string(j) + " does not sum to 1");
        }
    }
}

CalibrationMatrix CalibrationMatrix::identity(int num_qubits) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    return CalibrationMatrix(RealMatrix::Identity(d, d));
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty() || (p_.size() & (p_.size() - 1)) != 0) {
        throw DimensionMismatchError("probability vector length must be a power of two");
    }
    bool clamped = false;
    for (double &v : p_) {
        if (!std::isfinite(v) || v < -kStructuralTol) {
            throw DomainError("probability entry is negative or not finite");
        }
        if (v < 0.0) {
            v = 0.0;
            clamped = true;
        }
    }
    double sum = std::accumulate(p_.begin(), p_.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) {
        throw DomainError("probabilities do not sum to 1");
    }
    if (clamped) {
        for (double &v : p_) {
            v /= sum;
        }
    }
}

int ProbabilityVector::num_qubits() const {
    return qubits_for_dimension(static_cast<Eigen::Index>(p_.size()));
}

void NoiseConfig::validate() const {
    if (!(p_dep_cz >= 0.0 && p_dep_cz <= 1.0)) {
        throw DomainError("p_dep_cz must lie in [0, 1]");
    }
    if (n_shot && *n_shot < 1) {
        throw DomainError("n_shot must be positive");
    }
}

DensityMatrix depolarize(const DensityMatrix &rho, double p_dep) {
    if (!(p_dep >= 0.0 && p_dep <= 1.0)) {
        throw DomainError("depolarizing survival probability must lie in [0, 1]");
    }
    const Eigen::Index d = rho.dim();
    ComplexMatrix m = p_dep * rho.matrix();
    m.diagonal().array() += (1.0 - p_dep) / static_cast<double>(d);
    return DensityMatrix::assume_valid(std::move(m));
}

ProbabilityVector born_probabilities(const DensityMatrix &rho) {
    std::vector<double> p(static_cast<size_t>(rho.dim()));
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        p[static_cast<size_t>(i)] = rho.matrix()(i, i).real();
    }
    return ProbabilityVector(std::move(p));
}

ProbabilityVector apply_readout_noise(const ProbabilityVector &p, const CalibrationMatrix &lambda) {
    if (static_cast<Eigen::Index>(p.size()) != lambda.dim()) {
        throw DimensionMismatchError("calibration matrix and probability vector dimensions differ");
    }
    Eigen::Map<const Eigen::VectorXd> pv(p.values().data(), static_cast<Eigen::Index>(p.size()));
    Eigen::VectorXd out = lambda.matrix() * pv;
    return ProbabilityVector(std::vector<double>(out.data(), out.data() + out.size()));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    return mix(seed ^ mix(index + 0x632BE59BD9B4E019ULL));
}

ProbabilityVector sample_shots(const ProbabilityVector &p, std::uint64_t n_shot, std::uint64_t seed) {
    if (n_shot < 1) {
        throw DomainError("n_shot must be positive");
    }
    const auto &probs = p.values();
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    size_t last = probs.size() - 1;
    while (last > 0 && probs[last] == 0.0) {
        --last;
    }
    std::vector<std::uint64_t> counts(probs.size(), 0);
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < n_shot; ++s) {
        // 53-bit uniform in [0, 1); avoids implementation-defined distributions.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        size_t k = 0;
        while (k < last && u >= cdf[k]) {
            ++k;
        }
        ++counts[k];
    }
    std::vector<double> freq(probs.size());
    for (size_t k = 0; k < probs.size(); ++k) {
        freq[k] = static_cast<double>(counts[k]) / static_cast<double>(n_shot);
    }
    return ProbabilityVector(std::move(freq));
}

CalibrationMatrix synth_calibration_matrix(std::span<const std::pair<double, double>> per_qubit_eps,
                                           double correlation) {
    if (per_qubit_eps.empty()) {
        throw DomainError("need at least one qubit");
    }
    if (!(correlation >= 0.0 && correlation <= 0.1)) {
        throw DomainError("correlation must lie in [0, 0.1]");
    }
    RealMatrix lambda = RealMatrix::Identity(1, 1);
    for (const auto &[e01, e10] : per_qubit_eps) {
        if (!(e01 >= 0.0 && e01 <= 0.5 && e10 >= 0.0 && e10 <= 0.5)) {
            throw DomainError("flip probabilities must lie in [0, 0.5]");
        }
        RealMatrix q(2, 2);
        q << 1.0 - e01, e10, e01, 1.0 - e10;
        RealMatrix next(lambda.rows() * 2, lambda.cols() * 2);
        for (Eigen::Index i = 0; i < lambda.rows(); ++i) {
            for (Eigen::Index j = 0; j < lambda.cols(); ++j) {
                next.block(i * 2, j * 2, 2, 2) = lambda(i, j) * q;
            }
        }
        lambda = std::move(next);
    }
    if (correlation > 0.0) {
        const Eigen::Index d = lambda.rows();
        const Eigen::Index all_ones = d - 1;
        for (Eigen::Index j = 0; j < d; ++j) {
            lambda(j ^ all_ones, j) += correlation;
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            lambda.col(j) /= lambda.col(j).sum();
        }
    }
    return CalibrationMatrix(std::move(lambda));
}

}  // namespace nlmagic
