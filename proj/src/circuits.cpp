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

#include "nlmagic/circuits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "nlmagic/errors.hpp"

namespace nlmagic {

namespace {

using std::numbers::pi;

constexpr std::array<std::pair<GateKind, std::string_view>, 12> kGateNames = {{
    {GateKind::Rx, "Rx"},
    {GateKind::Ry, "Ry"},
    {GateKind::Rz, "Rz"},
    {GateKind::Rxy, "Rxy"},
    {GateKind::H, "H"},
    {GateKind::S, "S"},
    {GateKind::T, "T"},
    {GateKind::X, "X"},
    {GateKind::Y, "Y"},
    {GateKind::Z, "Z"},
    {GateKind::CZ, "CZ"},
    {GateKind::CNOT, "CNOT"},
}};

constexpr std::array<std::pair<StateId, std::string_view>, 11> kStateNames = {{
    {StateId::Psi0, "Psi0"},
    {StateId::Psi1, "Psi1"},
    {StateId::Psi2, "Psi2"},
    {StateId::Psi3, "Psi3"},
    {StateId::Psi4, "Psi4"},
    {StateId::LM, "LM"},
    {StateId::LMErased, "LM_erased"},
    {StateId::M, "M"},
    {StateId::MErased, "M_erased"},
    {StateId::NLM, "NLM"},
    {StateId::Fig4, "Fig4"},
}};

size_t angle_count(GateKind kind) {
    switch (kind) {
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz: return 1;
        case GateKind::Rxy: return 2;
        default: return 0;
    }
}

ComplexMatrix m2x2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

ComplexMatrix rz(double theta) {
    return m2x2(std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2));
}

ComplexMatrix rxy(double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const Complex i1(0.0, 1.0);
    return m2x2(c, -i1 * s * std::polar(1.0, -phi), -i1 * s * std::polar(1.0, phi), c);
}

ComplexMatrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return m2x2(r, r, r, -r);
}

ComplexMatrix cz_matrix() {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(3, 3) = -1.0;
    return m;
}

double param(const AngleMap &params, const std::string &key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

std::string_view gate_name(GateKind kind) {
    for (const auto &[k, name] : kGateNames) {
        if (k == kind) {
            return name;
        }
    }
    throw UnsupportedGateError("unknown gate kind");
}

GateKind parse_gate_kind(std::string_view name) {
    for (const auto &[k, n] : kGateNames) {
        if (n == name) {
            return k;
        }
    }
    throw UnsupportedGateError("unsupported gate '" + std::string(name) + "'");
}

int GateSpec::arity() const {
    return (kind == GateKind::CZ || kind == GateKind::CNOT) ? 2 : 1;
}

void GateSpec::validate() const {
    gate_name(kind);
    if (static_cast<int>(qubits.size()) != arity()) {
        throw DomainError(std::string(gate_name(kind)) + " takes " + std::to_string(arity()) + " qubit(s)");
    }
    if (arity() == 2 && qubits[0] == qubits[1]) {
        throw DomainError(std::string(gate_name(kind)) + " needs two distinct qubits");
    }
    if (angles.size() != angle_count(kind)) {
        throw DomainError(std::string(gate_name(kind)) + " takes " + std::to_string(angle_count(kind)) +
                          " angle(s)");
    }
}

Circuit &Circuit::add(GateKind kind, std::vector<int> qubits, std::vector<double> angles) {
    gates.push_back(GateSpec{kind, std::move(qubits), std::move(angles)});
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits != num_qubits) {
        throw DimensionMismatchError("cannot append circuits of different width");
    }
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    return *this;
}

int Circuit::cz_count() const {
    return static_cast<int>(std::count_if(gates.begin(), gates.end(), [](const GateSpec &g) {
        return g.kind == GateKind::CZ || g.kind == GateKind::CNOT;
    }));
}

void Circuit::validate() const {
    if (num_qubits < 1) {
        throw DomainError("circuit needs at least one qubit");
    }
    for (const auto &g : gates) {
        g.validate();
        for (int q : g.qubits) {
            if (q < 0 || q >= num_qubits) {
                throw DomainError("gate qubit index " + std::to_string(q) + " out of range");
            }
        }
    }
}

ComplexMatrix gate_matrix(const GateSpec &g) {
    g.validate();
    const Complex i1(0.0, 1.0);
    switch (g.kind) {
        case GateKind::Rx: return rxy(g.angles[0], 0.0);
        case GateKind::Ry: return rxy(g.angles[0], pi / 2);
        case GateKind::Rz: return rz(g.angles[0]);
        case GateKind::Rxy: return rxy(g.angles[0], g.angles[1]);
        case GateKind::H: return hadamard();
        case GateKind::S: return rz(pi / 2);
        case GateKind::T: return rz(pi / 4);
        case GateKind::X: return m2x2(0.0, 1.0, 1.0, 0.0);
        case GateKind::Y: return m2x2(0.0, -i1, i1, 0.0);
        case GateKind::Z: return m2x2(1.0, 0.0, 0.0, -1.0);
        case GateKind::CZ: return cz_matrix();
        case GateKind::CNOT: {
            ComplexMatrix ih = tensor(ComplexMatrix::Identity(2, 2), hadamard());
            return ih * cz_matrix() * ih;
        }
    }
    throw UnsupportedGateError("unsupported gate");
}

ComplexMatrix embed(const ComplexMatrix &local, std::span<const int> qubits, int num_qubits) {
    const int k = static_cast<int>(qubits.size());
    if (local.rows() != (Eigen::Index{1} << k) || local.cols() != local.rows()) {
        throw DimensionMismatchError("local unitary does not match its qubit count");
    }
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    std::uint64_t mask = 0;
    for (int q : qubits) {
        mask |= std::uint64_t{1} << (num_qubits - 1 - q);
    }
    auto local_index = [&](std::uint64_t full) {
        std::uint64_t idx = 0;
        for (int q : qubits) {
            idx = (idx << 1) | ((full >> (num_qubits - 1 - q)) & 1);
        }
        return static_cast<Eigen::Index>(idx);
    };
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(d); ++col) {
        const Eigen::Index lc = local_index(col);
        const std::uint64_t rest = col & ~mask;
        for (Eigen::Index lr = 0; lr < local.rows(); ++lr) {
            std::uint64_t row = rest;
            for (int t = 0; t < k; ++t) {
                std::uint64_t bit = (static_cast<std::uint64_t>(lr) >> (k - 1 - t)) & 1;
                row |= bit << (num_qubits - 1 - qubits[static_cast<size_t>(t)]);
            }
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = local(lr, lc);
        }
    }
    return out;
}

DensityMatrix run_circuit_on(const DensityMatrix &initial, const Circuit &c, const NoiseConfig &noise) {
    c.validate();
    noise.validate();
    if (initial.num_qubits() != c.num_qubits) {
        throw DimensionMismatchError("initial state width does not match circuit");
    }
    DensityMatrix rho = initial;
    auto apply = [&](const ComplexMatrix &u, std::span<const int> qs) {
        rho = rho.conjugated(embed(u, qs, c.num_qubits));
    };
    auto apply_cz = [&](std::span<const int> qs) {
        apply(cz_matrix(), qs);
        if (noise.p_dep_cz < 1.0) {
            rho = depolarize(rho, noise.p_dep_cz);
        }
    };
    for (const auto &g : c.gates) {
        if (g.kind == GateKind::CZ) {
            apply_cz(g.qubits);
        } else if (g.kind == GateKind::CNOT) {
            const int target[] = {g.qubits[1]};
            apply(hadamard(), target);
            apply_cz(g.qubits);
            apply(hadamard(), target);
        } else {
            apply(gate_matrix(g), g.qubits);
        }
    }
    return rho;
}

DensityMatrix run_circuit(const Circuit &c, const NoiseConfig &noise) {
    return run_circuit_on(DensityMatrix::basis_state(c.num_qubits, 0), c, noise);
}

ComplexMatrix canonicalize_phase(const ComplexMatrix &u) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            if (std::abs(u(i, j)) > 1e-9) {
                return u * (std::abs(u(i, j)) / u(i, j));
            }
        }
    }
    return u;
}

const std::vector<CliffordElement> &single_qubit_clifford_group() {
    static const std::vector<CliffordElement> group = [] {
        const ComplexMatrix generators[] = {hadamard(), rz(pi / 2)};
        std::vector<CliffordElement> out;
        out.push_back({ComplexMatrix::Identity(2, 2), 0});
        for (size_t head = 0; head < out.size(); ++head) {
            for (const auto &g : generators) {
                ComplexMatrix next = canonicalize_phase(g * out[head].matrix);
                bool seen = std::any_of(out.begin(), out.end(), [&](const CliffordElement &e) {
                    return approx_equal(e.matrix, next, 1e-9);
                });
                if (!seen) {
                    out.push_back({next, static_cast<int>(out.size())});
                }
            }
        }
        return out;
    }();
    return group;
}

int find_clifford(const ComplexMatrix &u) {
    ComplexMatrix c = canonicalize_phase(u);
    for (const auto &e : single_qubit_clifford_group()) {
        if (approx_equal(e.matrix, c, 1e-9)) {
            return e.canonical_id;
        }
    }
    return -1;
}

std::string clifford_cardinality(int n) {
    if (n <= 0) {
        throw DomainError("Clifford group size needs n >= 1");
    }
    using boost::multiprecision::cpp_int;
    cpp_int value = cpp_int(1) << (n * n + 2 * n);
    cpp_int four_k = 1;
    for (int k = 1; k <= n; ++k) {
        four_k *= 4;
        value *= four_k - 1;
    }
    return value.str();
}

std::uint64_t clifford_cardinality_u64(int n) {
    using boost::multiprecision::cpp_int;
    cpp_int value(clifford_cardinality(n));
    if (value > cpp_int(std::numeric_limits<std::uint64_t>::max())) {
        throw DomainError("Clifford group size exceeds 64 bits");
    }
    return value.convert_to<std::uint64_t>();
}

std::string_view state_name(StateId id) {
    for (const auto &[k, name] : kStateNames) {
        if (k == id) {
            return name;
        }
    }
    throw DomainError("unknown state id");
}

StateId parse_state_id(std::string_view name) {
    for (const auto &[k, n] : kStateNames) {
        if (n == name) {
            return k;
        }
    }
    throw DomainError("unknown state id '" + std::string(name) + "'");
}

Circuit preparation_circuit(StateId id, const AngleMap &params) {
    const bool inject_t = param(params, "t", 0.0) != 0.0;
    Circuit c;
    switch (id) {
        case StateId::Psi0:
            c.num_qubits = 1;
            break;
        case StateId::Psi1:
            c.num_qubits = 1;
            c.add(GateKind::H, {0});
            if (inject_t) c.add(GateKind::T, {0});
            break;
        case StateId::Psi2:
            c.num_qubits = 1;
            c.add(GateKind::X, {0}).add(GateKind::H, {0});
            if (inject_t) c.add(GateKind::T, {0});
            break;
        case StateId::Psi3:
            c.num_qubits = 2;
            c.add(GateKind::H, {0}).add(GateKind::H, {1});
            if (inject_t) c.add(GateKind::T, {0}).add(GateKind::T, {1});
            break;
        case StateId::Psi4:
            c.num_qubits = 2;
            c.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1});
            break;
        case StateId::LM:
        case StateId::LMErased:
            c.num_qubits = 2;
            c.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1}).add(GateKind::T, {0});
            if (id == StateId::LMErased) c.add(GateKind::T, {0});
            break;
        case StateId::M:
        case StateId::MErased:
            // Rx(pi/8) x H, one CZ, then a pi/8 phase on qubit 1:
            // 2^{-3/2} [c+ |0>(|0> + e^{i pi/8}|1>) - i c- |1>(|0> - e^{i pi/8}|1>)].
            c.num_qubits = 2;
            c.add(GateKind::Rx, {0}, {pi / 8})
                .add(GateKind::H, {1})
                .add(GateKind::CZ, {0, 1})
                .add(GateKind::Rz, {1}, {pi / 8});
            if (id == StateId::MErased) {
                c.add(GateKind::Rz, {1}, {param(params, "phi", kMErasurePhiDeg * pi / 180.0)});
            }
            break;
        case StateId::NLM:
            c.num_qubits = 2;
            c.add(GateKind::Rx, {0}, {param(params, "theta", pi / 4)}).add(GateKind::CNOT, {0, 1});
            break;
        case StateId::Fig4:
            c.num_qubits = 2;
            c.add(GateKind::Rx, {1}, {pi / 8})
                .add(GateKind::CNOT, {1, 0})
                .add(GateKind::H, {0})
                .add(GateKind::Rz, {0}, {pi / 8})
                .add(GateKind::Rz, {0}, {param(params, "gamma", 0.0)})
                .add(GateKind::Rz, {1}, {param(params, "phi", 0.0)});
            break;
    }
    return c;
}

}  // namespace nlmagic
