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

#ifndef NLMAGIC_CIRCUITS_HPP
#define NLMAGIC_CIRCUITS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nlmagic/noise.hpp"
#include "nlmagic/qcore.hpp"

namespace nlmagic {

enum class GateKind { Rx, Ry, Rz, Rxy, H, S, T, X, Y, Z, CZ, CNOT };

std::string_view gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// One gate of the hardware gate set. Rotations follow R_a(theta) = exp(-i theta sigma_a / 2);
/// Rxy(theta, phi) rotates about cos(phi) X + sin(phi) Y, so Ry(theta) == Rxy(theta, pi/2).
/// S and T are the hardware phase rotations Rz(pi/2) and Rz(pi/4).
struct GateSpec {
    GateKind kind;
    std::vector<int> qubits;
    std::vector<double> angles;

    int arity() const;
    void validate() const;
};

struct Circuit {
    int num_qubits = 1;
    std::vector<GateSpec> gates;

    Circuit &add(GateKind kind, std::vector<int> qubits, std::vector<double> angles = {});
    Circuit &append(const Circuit &other);
    int cz_count() const;
    void validate() const;
};

/// Unitary of a gate on its own qubits (2x2 or 4x4, first listed qubit most significant).
/// CNOT is returned as (I x H) CZ (I x H).
ComplexMatrix gate_matrix(const GateSpec &g);

/// Lifts a 1- or 2-qubit unitary acting on `qubits` to the full register.
ComplexMatrix embed(const ComplexMatrix &local, std::span<const int> qubits, int num_qubits);

/// Evolves |0...0> through the circuit. Every CZ, including the one inside each
/// CNOT, is followed by global depolarizing with survival probability noise.p_dep_cz.
DensityMatrix run_circuit(const Circuit &c, const NoiseConfig &noise = {});

/// Same as run_circuit but from an arbitrary initial state.
DensityMatrix run_circuit_on(const DensityMatrix &initial, const Circuit &c, const NoiseConfig &noise = {});

/// Rescales U by a global phase so the first entry (row-major) with modulus above
/// 1e-9 is real and positive.
ComplexMatrix canonicalize_phase(const ComplexMatrix &u);

struct CliffordElement {
    ComplexMatrix matrix;
    int canonical_id = 0;
};

/// The 24 single-qubit Cliffords modulo phase, in breadth-first order of the
/// closure of {H, S} from the identity (id 0 is the identity). Computed once.
const std::vector<CliffordElement> &single_qubit_clifford_group();

/// Id of the group element equal to `u` modulo phase, or -1.
int find_clifford(const ComplexMatrix &u);

/// |C_n / U(1)| = 2^(n^2 + 2n) prod_{k=1..n} (4^k - 1), as a decimal string.
std::string clifford_cardinality(int n);

/// Same value as an integer; throws DomainError if it does not fit in 64 bits.
std::uint64_t clifford_cardinality_u64(int n);

enum class StateId {
    Psi0,       // |0>
    Psi1,       // H|0>, optional T
    Psi2,       // H X|0>, optional T
    Psi3,       // |+>|+>, optional T on both
    Psi4,       // Bell pair via CNOT
    LM,         // (|00> + e^{i pi/4}|11>)/sqrt2
    LMErased,   // LM followed by a second T on qubit 0
    M,          // local + non-local magic state, Schmidt weight cos^2(pi/16)
    MErased,    // M followed by Rz(phi) on qubit 1
    NLM,        // cos(theta/2)|00> - i sin(theta/2)|11>
    Fig4,       // M mirrored onto qubit 0 via an explicit CNOT, then Rz(gamma) x Rz(phi)
};

using AngleMap = std::map<std::string, double>;

std::string_view state_name(StateId id);
StateId parse_state_id(std::string_view name);

/// Default erasure angle on qubit 1 for StateId::MErased (67.61 degrees).
inline constexpr double kMErasurePhiDeg = 67.61;

/// Preparation circuit for a catalogued state. Angles in `params` are radians:
/// "theta" (NLM), "phi" (MErased), "gamma"/"phi" (Fig4); "t" != 0 injects T for Psi1..Psi3.
Circuit preparation_circuit(StateId id, const AngleMap &params = {});

}  // namespace nlmagic

#endif
