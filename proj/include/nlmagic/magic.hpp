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

#ifndef NLMAGIC_MAGIC_HPP
#define NLMAGIC_MAGIC_HPP

#include <optional>

#include "nlmagic/qcore.hpp"

namespace nlmagic {

/// W(rho) = d^-2 sum_P Tr(P rho)^4, by enumerating all 4^N Pauli strings.
double stabilizer_purity_exact(const DensityMatrix &rho);

/// Stabilizer Renyi entropy of order 2 with the Renyi-2 correction for mixed
/// states: M2 = -log2 W + log2 Tr(rho^2) - log2 d. Reduces to the pure-state
/// definition when rho is pure, and vanishes on I/d.
double sre_exact(const DensityMatrix &rho);

/// Schmidt weights of a pure two-qubit state, larger weight first.
struct SchmidtSpectrum {
    double lambda = 1.0;  // in [0.5, 1]
    double theta = 0.0;   // lambda = cos^2(theta / 2), theta in [0, pi/2]

    static SchmidtSpectrum from_lambda(double lambda);
};

/// Throws DomainError unless rho is a pure two-qubit state.
SchmidtSpectrum schmidt_spectrum(const DensityMatrix &rho);

/// -log2(4 (lambda - 1) lambda (1 - 2 lambda)^2 + 1), lambda in [0, 1].
double nonlocal_magic_schmidt(double lambda);

/// log2(8 / (7 + cos 4 theta)).
double nonlocal_magic_theta(double theta);

/// -log2(4 P^2 - 6 P + 3) for a reduced-state purity P in [0.5, 1].
double nonlocal_magic_from_rdm_purity(double p_a);

/// Largest Schmidt weight consistent with a measured single-qubit reduced purity
/// after global two-qubit depolarizing with survival probability p_dep.
/// Throws OutOfModelError when the purity is not attainable.
double schmidt_weight_from_noisy_rdm_purity(double p_a_measured, double p_dep);

/// Non-local magic inferred from a noisy reduced-state purity.
double nonlocal_magic_noisy(double p_a_measured, double p_dep);

/// Closed-form M2 of cos(theta/2)|00> - i sin(theta/2)|11> after global two-qubit
/// depolarizing with *error* probability p_err.
double sre_nlm_depolarized(double p_err, double theta);

/// sre_exact(rho) - nl; throws InconsistencyError if nl exceeds the total by more than 1e-9.
double local_magic(const DensityMatrix &rho, double nl);

struct MagicReport {
    double purity = 1.0;
    double stabilizer_purity = 1.0;
    double m2 = 0.0;
    std::optional<double> m2_nonlocal;
    std::optional<double> m2_local;
};

/// Exact report; non-local and local parts are filled in for pure two-qubit states.
MagicReport magic_report(const DensityMatrix &rho);

enum class LemmaOutcome { Holds, Violated, NotApplicable };

struct LemmaCheck {
    LemmaOutcome outcome = LemmaOutcome::NotApplicable;
    double ancilla_magic = 0.0;
    double local_magic = 0.0;
};

/// Applies a three-qubit Clifford C (qubit order A, B, ancilla) to psi x |0>.
/// When the output factorizes as psi' x phi (ancilla purity within 1e-9 of 1),
/// checks M2(phi) <= M^L(psi) + 1e-9. The caller guarantees C = C_A x C_BC.
LemmaCheck check_distillation_lemma(const DensityMatrix &psi, const ComplexMatrix &c_factorized);

}  // namespace nlmagic

#endif
