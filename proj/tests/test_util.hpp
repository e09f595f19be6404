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

#ifndef NLMAGIC_TEST_UTIL_HPP
#define NLMAGIC_TEST_UTIL_HPP

#include <cmath>
#include <numbers>
#include <random>

#include "nlmagic/circuits.hpp"
#include "nlmagic/qcore.hpp"

namespace nlmagic::testing {

inline const double kLog43 = std::log2(4.0 / 3.0);

inline DensityMatrix t_plus() {
    Circuit c;
    c.num_qubits = 1;
    c.add(GateKind::H, {0}).add(GateKind::T, {0});
    return run_circuit(c);
}

inline DensityMatrix bell() {
    return run_circuit(preparation_circuit(StateId::Psi4));
}

inline DensityMatrix ideal(StateId id, AngleMap params = {}) {
    return run_circuit(preparation_circuit(id, params));
}

inline DensityMatrix noisy(StateId id, double p_dep, AngleMap params = {}) {
    NoiseConfig n;
    n.p_dep_cz = p_dep;
    return run_circuit(preparation_circuit(id, params), n);
}

inline double max_abs(const ComplexMatrix &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace nlmagic::testing

#endif
