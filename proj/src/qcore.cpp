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

#include "nlmagic/qcore.hpp"

#include <algorithm>
#include <cmath>

#include "nlmagic/errors.hpp"

namespace nlmagic {

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    return approx_equal(u.adjoint() * u, ComplexMatrix::Identity(u.rows(), u.cols()), tol);
}

int qubits_for_dimension(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionMismatchError("register dimension " + std::to_string(dim) + " is not a power of two");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    return n;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)), n_(qubits_for_dimension(m_.rows())) {
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(std::move(m), Unchecked{}) {
    if (m_.rows() != m_.cols()) {
        throw DimensionMismatchError("density matrix must be square");
    }
    if (!approx_equal(m_, m_.adjoint(), kStructuralTol)) {
        throw DomainError("density matrix is not Hermitian");
    }
    Complex tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > kStructuralTol || std::abs(tr.imag()) > kStructuralTol) {
        throw DomainError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw DomainError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix m) {
    return DensityMatrix(std::move(m), Unchecked{});
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector &amplitudes) {
    double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-9) {
        throw DomainError("state vector is not normalized");
    }
    ComplexVector v = amplitudes / norm;
    return DensityMatrix(v * v.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::basis_state(int num_qubits, std::uint64_t index) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    if (num_qubits < 1 || static_cast<Eigen::Index>(index) >= d) {
        throw DomainError("basis index out of range");
    }
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityMatrix(std::move(m), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    if (num_qubits < 1) {
        throw DomainError("need at least one qubit");
    }
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), Unchecked{});
}

DensityMatrix DensityMatrix::conjugated(const ComplexMatrix &u) const {
    if (u.rows() != m_.rows() || u.cols() != m_.cols()) {
        throw DimensionMismatchError("unitary dimension does not match state");
    }
    return DensityMatrix(u * m_ * u.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::tensor_with(const DensityMatrix &other) const {
    return DensityMatrix(tensor(m_, other.m_), Unchecked{});
}

bool DensityMatrix::is_pure(double tol) const {
    return std::abs(purity(*this) - 1.0) <= tol;
}

PauliString::PauliString(std::string_view letters) : letters_(letters) {
    if (letters_.empty()) {
        throw DomainError("empty Pauli string");
    }
    for (char c : letters_) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw DomainError(std::string("invalid Pauli letter '") + c + "'");
        }
    }
}

PauliString PauliString::from_index(int num_qubits, std::uint64_t index) {
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::string s(static_cast<size_t>(num_qubits), 'I');
    for (int q = num_qubits - 1; q >= 0; --q) {
        s[static_cast<size_t>(q)] = kLetters[index & 3];
        index >>= 2;
    }
    return PauliString(s);
}

ComplexMatrix PauliString::matrix() const {
    const Complex i1(0.0, 1.0);
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (char c : letters_) {
        ComplexMatrix p(2, 2);
        switch (c) {
            case 'I': p << 1.0, 0.0, 0.0, 1.0; break;
            case 'X': p << 0.0, 1.0, 1.0, 0.0; break;
            case 'Y': p << 0.0, -i1, i1, 0.0; break;
            default: p << 1.0, 0.0, 0.0, -1.0; break;
        }
        out = tensor(out, p);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    const int n = rho.num_qubits();
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty() || static_cast<int>(kept.size()) >= n) {
        throw InvalidSubsystemError("kept subsystem must be a nonempty proper subset");
    }
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.front() < 0 || kept.back() >= n) {
        throw InvalidSubsystemError("kept subsystem has repeated or out-of-range qubits");
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }
    // Builds the full index from (kept bits, traced bits), qubit 0 = MSB.
    auto compose = [n](const std::vector<int> &qs_a, std::uint64_t a, const std::vector<int> &qs_b, std::uint64_t b) {
        std::uint64_t idx = 0;
        for (size_t k = 0; k < qs_a.size(); ++k) {
            std::uint64_t bit = (a >> (qs_a.size() - 1 - k)) & 1;
            idx |= bit << (n - 1 - qs_a[k]);
        }
        for (size_t k = 0; k < qs_b.size(); ++k) {
            std::uint64_t bit = (b >> (qs_b.size() - 1 - k)) & 1;
            idx |= bit << (n - 1 - qs_b[k]);
        }
        return static_cast<Eigen::Index>(idx);
    };
    const std::uint64_t dk = std::uint64_t{1} << kept.size();
    const std::uint64_t dt = std::uint64_t{1} << traced.size();
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    const ComplexMatrix &m = rho.matrix();
    for (std::uint64_t i = 0; i < dk; ++i) {
        for (std::uint64_t j = 0; j < dk; ++j) {
            Complex acc = 0.0;
            for (std::uint64_t t = 0; t < dt; ++t) {
                acc += m(compose(kept, i, traced, t), compose(kept, j, traced, t));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix::assume_valid(std::move(out));
}

double purity(const DensityMatrix &rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.matrix().cwiseAbs2().sum();
}

std::vector<double> pauli_expectations(const DensityMatrix &rho) {
    const int n = rho.num_qubits();
    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    const ComplexMatrix &m = rho.matrix();
    const Complex i1(0.0, 1.0);
    std::vector<double> out(count);
    for (std::uint64_t p = 0; p < count; ++p) {
        // Per qubit: letter code 0..3 = I, X, Y, Z. P|k> = phase(j) |j> with j = k ^ xmask.
        std::uint64_t xmask = 0;
        for (int q = 0; q < n; ++q) {
            std::uint64_t code = (p >> (2 * (n - 1 - q))) & 3;
            if (code == 1 || code == 2) {
                xmask |= std::uint64_t{1} << (n - 1 - q);
            }
        }
        Complex acc = 0.0;
        for (std::uint64_t j = 0; j < d; ++j) {
            // <j|P|j^x> for row bit string j.
            Complex phase = 1.0;
            for (int q = 0; q < n; ++q) {
                std::uint64_t code = (p >> (2 * (n - 1 - q))) & 3;
                std::uint64_t bit = (j >> (n - 1 - q)) & 1;
                if (code == 2) {
                    phase *= bit ? i1 : -i1;
                } else if (code == 3 && bit) {
                    phase = -phase;
                }
            }
            std::uint64_t k = j ^ xmask;
            acc += phase * m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
        }
        out[p] = acc.real();
    }
    return out;
}

namespace {

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace

ComplexVector random_pure_state(int num_qubits, std::mt19937_64 &rng) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    ComplexVector v = ginibre(d, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64 &rng) {
    ComplexMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < dim; ++i) {
        Complex rii = r(i, i);
        q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

DensityMatrix random_mixed_state(int num_qubits, std::mt19937_64 &rng) {
    Eigen::Index d = Eigen::Index{1} << num_qubits;
    ComplexMatrix g = ginibre(d, d, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix(std::move(m));
}

}  // namespace nlmagic
