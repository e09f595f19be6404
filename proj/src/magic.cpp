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

#include "nlmagic/magic.hpp"

#include <algorithm>
#include <cmath>

#include "nlmagic/errors.hpp"

namespace nlmagic {

double stabilizer_purity_exact(const DensityMatrix &rho) {
    double sum = 0.0;
    for (double e : pauli_expectations(rho)) {
        double e2 = e * e;
        sum += e2 * e2;
    }
    const double d = static_cast<double>(rho.dim());
    return sum / (d * d);
}

double sre_exact(const DensityMatrix &rho) {
    const double w = stabilizer_purity_exact(rho);
    const double p = purity(rho);
    return -std::log2(w) + std::log2(p) - std::log2(static_cast<double>(rho.dim()));
}

SchmidtSpectrum SchmidtSpectrum::from_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("Schmidt weight must lie in [0, 1]");
    }
    SchmidtSpectrum s;
    s.lambda = std::max(lambda, 1.0 - lambda);
    s.theta = 2.0 * std::acos(std::sqrt(s.lambda));
    return s;
}

SchmidtSpectrum schmidt_spectrum(const DensityMatrix &rho) {
    if (rho.num_qubits() != 2 || !rho.is_pure()) {
        throw DomainError("Schmidt spectrum needs a pure two-qubit state");
    }
    const int keep[] = {0};
    DensityMatrix a = partial_trace(rho, keep);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
    double top = std::clamp(es.eigenvalues().maxCoeff(), 0.5, 1.0);
    return SchmidtSpectrum::from_lambda(top);
}

double nonlocal_magic_schmidt(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("Schmidt weight must lie in [0, 1]");
    }
    const double s = 1.0 - 2.0 * lambda;
    return -std::log2(4.0 * (lambda - 1.0) * lambda * s * s + 1.0);
}

double nonlocal_magic_theta(double theta) {
    return std::log2(8.0 / (7.0 + std::cos(4.0 * theta)));
}

double nonlocal_magic_from_rdm_purity(double p_a) {
    if (!(p_a >= 0.5 && p_a <= 1.0)) {
        throw DomainError("reduced purity of a qubit must lie in [0.5, 1]");
    }
    return -std::log2(4.0 * p_a * p_a - 6.0 * p_a + 3.0);
}

double schmidt_weight_from_noisy_rdm_purity(double p_a_measured, double p_dep) {
    if (!(p_dep > 0.0 && p_dep <= 1.0)) {
        throw DomainError("p_dep must lie in (0, 1]");
    }
    // Tr(rho_A^2) = p^2 (lambda^2 + (1-lambda)^2) + p (1-p) + (1-p)^2 / 2.
    const double q = 1.0 - p_dep;
    const double pure_part = (p_a_measured - p_dep * q - 0.5 * q * q) / (p_dep * p_dep);
    constexpr double slack = 1e-12;
    if (!(pure_part >= 0.5 - slack && pure_part <= 1.0 + slack)) {
        throw OutOfModelError("reduced purity " + std::to_string(p_a_measured) +
                              " is not attainable with p_dep = " + std::to_string(p_dep));
    }
    const double clamped = std::clamp(pure_part, 0.5, 1.0);
    return 0.5 * (1.0 + std::sqrt(2.0 * clamped - 1.0));
}

double nonlocal_magic_noisy(double p_a_measured, double p_dep) {
    return nonlocal_magic_schmidt(schmidt_weight_from_noisy_rdm_purity(p_a_measured, p_dep));
}

double sre_nlm_depolarized(double p_err, double theta) {
    if (!(p_err >= 0.0 && p_err <= 1.0)) {
        throw DomainError("error probability must lie in [0, 1]");
    }
    const double p = p_err;
    const double q4 = std::pow(p - 1.0, 4);
    const double inner = q4 * std::cos(4.0 * theta) + 5.0 * (p - 2.0) * p * ((p - 2.0) * p + 2.0) + 7.0;
    return -std::log2(4.0 * inner) + std::log2(3.0 * (p - 2.0) * p + 4.0) + 3.0;
}

double local_magic(const DensityMatrix &rho, double nl) {
    const double total = sre_exact(rho);
    if (nl > total + 1e-9) {
        throw InconsistencyError("non-local magic exceeds total magic");
    }
    return total - nl;
}

MagicReport magic_report(const DensityMatrix &rho) {
    MagicReport r;
    r.purity = purity(rho);
    r.stabilizer_purity = stabilizer_purity_exact(rho);
    r.m2 = -std::log2(r.stabilizer_purity) + std::log2(r.purity) - std::log2(static_cast<double>(rho.dim()));
    if (rho.num_qubits() == 2 && rho.is_pure()) {
        r.m2_nonlocal = nonlocal_magic_schmidt(schmidt_spectrum(rho).lambda);
        r.m2_local = r.m2 - *r.m2_nonlocal;
    }
    return r;
}

LemmaCheck check_distillation_lemma(const DensityMatrix &psi, const ComplexMatrix &c_factorized) {
    if (psi.num_qubits() != 2 || !psi.is_pure()) {
        throw DomainError("distillation lemma needs a pure two-qubit state");
    }
    if (c_factorized.rows() != 8 || !is_unitary(c_factorized, 1e-9)) {
        throw DimensionMismatchError("distillation lemma needs a three-qubit unitary");
    }
    LemmaCheck out;
    out.local_magic = local_magic(psi, nonlocal_magic_schmidt(schmidt_spectrum(psi).lambda));
    DensityMatrix full = psi.tensor_with(DensityMatrix::basis_state(1, 0)).conjugated(c_factorized);
    const int ancilla[] = {2};
    DensityMatrix phi = partial_trace(full, ancilla);
    if (std::abs(purity(phi) - 1.0) > 1e-9) {
        out.outcome = LemmaOutcome::NotApplicable;
        return out;
    }
    out.ancilla_magic = sre_exact(phi);
    out.outcome = out.ancilla_magic <= out.local_magic + 1e-9 ? LemmaOutcome::Holds : LemmaOutcome::Violated;
    return out;
}

}  // namespace nlmagic
