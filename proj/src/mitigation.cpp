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

#include "nlmagic/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlmagic/errors.hpp"

namespace nlmagic {

namespace {

double largest_squared_singular_value(const RealMatrix &a) {
    const RealMatrix ata = a.transpose() * a;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(ata.cols()) / std::sqrt(static_cast<double>(ata.cols()));
    double est = 0.0;
    for (int it = 0; it < 1000; ++it) {
        Eigen::VectorXd w = ata * v;
        const double norm = w.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        w /= norm;
        const double next = w.dot(ata * w);
        v = w;
        if (std::abs(next - est) <= 1e-15 * std::max(1.0, next)) {
            est = next;
            break;
        }
        est = next;
    }
    return est;
}

}  // namespace

void InitializationCounts::validate() const {
    if (n_shot == 0) {
        throw DomainError("n_shot must be positive");
    }
    const std::size_t d = counts.size();
    if (d < 2 || (d & (d - 1)) != 0) {
        throw DimensionMismatchError("counts table must be 2^N x 2^N");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (counts[i].size() != d) {
            throw DimensionMismatchError("counts table must be square");
        }
        std::uint64_t sum = 0;
        for (auto c : counts[i]) {
            sum += c;
        }
        if (sum == 0) {
            throw DomainError("counts row " + std::to_string(i) + " is empty");
        }
        if (sum != n_shot) {
            throw InconsistencyError("counts row " + std::to_string(i) + " does not sum to n_shot");
        }
    }
}

CalibrationMatrix calibration_from_counts(const InitializationCounts &ic) {
    ic.validate();
    const auto d = static_cast<Eigen::Index>(ic.counts.size());
    RealMatrix lambda(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            lambda(i, j) = static_cast<double>(ic.counts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) /
                           static_cast<double>(ic.n_shot);
        }
    }
    return CalibrationMatrix(lambda);
}

std::vector<double> project_to_simplex(const std::vector<double> &v) {
    if (v.empty()) {
        throw DomainError("cannot project an empty vector");
    }
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumsum += u[k];
        const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) {
            theta = t;
        }
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::max(0.0, v[i] - theta);
    }
    return out;
}

LeastSquaresResult mitigate_least_squares_detailed(const ProbabilityVector &p_exp, const CalibrationMatrix &lambda,
                                                   double tol, std::size_t max_iterations) {
    const auto d = lambda.dim();
    if (static_cast<Eigen::Index>(p_exp.size()) != d) {
        throw DimensionMismatchError("probability vector and calibration matrix differ in dimension");
    }
    const RealMatrix &a = lambda.matrix();
    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(p_exp.values().data(), d);
    const RealMatrix ata = a.transpose() * a;
    const Eigen::VectorXd atb = a.transpose() * b;
    const double step = 1.0 / largest_squared_singular_value(a);

    auto objective = [&](const Eigen::VectorXd &p) { return (a * p - b).squaredNorm(); };

    std::vector<double> start(p_exp.values());
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(project_to_simplex(start).data(), d);
    LeastSquaresResult res{ProbabilityVector(std::vector<double>(p.data(), p.data() + d)), {objective(p)}, 0};
    double last_change = 0.0;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        const Eigen::VectorXd grad = ata * p - atb;
        Eigen::VectorXd trial = p - step * grad;
        const auto projected = project_to_simplex(std::vector<double>(trial.data(), trial.data() + d));
        const Eigen::VectorXd next = Eigen::Map<const Eigen::VectorXd>(projected.data(), d);
        last_change = (next - p).norm();
        p = next;
        res.objective_history.push_back(objective(p));
        if (last_change < tol) {
            res.iterations = it;
            res.p = ProbabilityVector(std::vector<double>(p.data(), p.data() + d));
            return res;
        }
    }
    throw ConvergenceError("least-squares mitigation did not converge", max_iterations, last_change);
}

ProbabilityVector mitigate_least_squares(const ProbabilityVector &p_exp, const CalibrationMatrix &lambda,
                                         double tol) {
    return mitigate_least_squares_detailed(p_exp, lambda, tol).p;
}

RcmDataset mitigate_dataset(const RcmDataset &ds, const CalibrationMatrix &lambda, double tol) {
    if (lambda.num_qubits() != ds.num_qubits) {
        throw DimensionMismatchError("calibration matrix width does not match the dataset");
    }
    RcmDataset out = ds;
    for (auto &p : out.prob_vectors) {
        p = mitigate_least_squares(p, lambda, tol);
    }
    return out;
}

double readout_fidelity(const CalibrationMatrix &lambda) {
    return lambda.matrix().diagonal().mean();
}

}  // namespace nlmagic
