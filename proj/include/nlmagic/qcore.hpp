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

#ifndef NLMAGIC_QCORE_HPP
#define NLMAGIC_QCORE_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nlmagic {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kIdentityTol = 1e-10;

/// Kronecker product. Qubit 0 is the leftmost factor, i.e. the most significant
/// bit of a computational-basis index.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

/// Entrywise comparison with an absolute tolerance.
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol = kStructuralTol);

bool is_unitary(const ComplexMatrix &u, double tol = kStructuralTol);

/// Number of qubits for a register dimension; throws unless dim is a power of two.
int qubits_for_dimension(Eigen::Index dim);

/// A d x d Hermitian, unit-trace, positive semidefinite operator on N qubits.
///
/// Every constructor that accepts arbitrary input validates the invariants.
/// Operations that provably preserve them (unitary conjugation, mixing,
/// partial trace) go through `assume_valid` to skip the eigen-decomposition.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix assume_valid(ComplexMatrix m);
    static DensityMatrix from_pure(const ComplexVector &amplitudes);
    static DensityMatrix basis_state(int num_qubits, std::uint64_t index);
    static DensityMatrix maximally_mixed(int num_qubits);

    const ComplexMatrix &matrix() const { return m_; }
    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return m_.rows(); }

    /// U rho U^dagger for a unitary U of matching dimension.
    DensityMatrix conjugated(const ComplexMatrix &u) const;

    /// Tensor product with another register; `other` becomes the higher qubit indices.
    DensityMatrix tensor_with(const DensityMatrix &other) const;

    bool is_pure(double tol = 1e-9) const;

private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix m, Unchecked);
    ComplexMatrix m_;
    int n_;
};

/// An N-qubit Pauli string over {I, X, Y, Z}.
class PauliString {
public:
    explicit PauliString(std::string_view letters);
    /// Lexicographic index over (I, X, Y, Z)^N with qubit 0 most significant.
    static PauliString from_index(int num_qubits, std::uint64_t index);

    const std::string &letters() const { return letters_; }
    int num_qubits() const { return static_cast<int>(letters_.size()); }
    ComplexMatrix matrix() const;

private:
    std::string letters_;
};

/// Reduced state on the kept qubits, listed in increasing order of qubit index.
/// Throws InvalidSubsystemError if `keep` is empty, full, repeated or out of range.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

/// Tr(rho^2).
double purity(const DensityMatrix &rho);

/// Tr(P rho) for all 4^N Pauli strings, in lexicographic order over (I, X, Y, Z).
std::vector<double> pauli_expectations(const DensityMatrix &rho);

/// Haar-random pure state vector.
ComplexVector random_pure_state(int num_qubits, std::mt19937_64 &rng);

/// Haar-random single-qubit or multi-qubit unitary (QR of a Ginibre matrix).
ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64 &rng);

/// Random full-rank mixed state drawn from the Hilbert-Schmidt ensemble.
DensityMatrix random_mixed_state(int num_qubits, std::mt19937_64 &rng);

}  // namespace nlmagic

#endif
