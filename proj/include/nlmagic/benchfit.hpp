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

#ifndef NLMAGIC_BENCHFIT_HPP
#define NLMAGIC_BENCHFIT_HPP

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace nlmagic {

struct DecayCurve {
    std::vector<int> n_cliffords;
    std::vector<double> survival;

    void validate() const;
};

struct DecayFit {
    double a = 0.0;
    double p = 1.0;
    double b = 0.0;
    double residual_rms = 0.0;
    int iterations = 0;
};

/// Least-squares fit of A p^N + B. Starts from a log-linear regression on
/// (survival - min) and refines with damped Gauss-Newton.
DecayFit fit_exp_decay(const DecayCurve &curve);

/// Physical gates per Clifford in the single-qubit benchmarking set.
inline constexpr double kGatesPerClifford = 1.875;

struct GateFidelity {
    double f_cl = 1.0;
    double f_avg = 1.0;
};

/// f_cl = 1 - ((d-1)/d)(1-p), f_avg = f_cl^(1/1.875).
GateFidelity avg_gate_fidelity(double p, int d);

struct IrbFidelity {
    double value = 1.0;
    /// Set when p1 > p0, i.e. value > 1 from statistical fluctuation.
    bool exceeds_one = false;
};

/// 1 - ((d-1)/d)(1 - p1/p0).
IrbFidelity irb_fidelity(double p0, double p1, int d);

/// (A_jj / A_ij) (t_jj / t_ij) as a fraction.
double mw_crosstalk(double a_jj, double t_jj, double a_ij, double t_ij);

/// Model values at `points` plus Gaussian noise, clamped to [0, 1].
DecayCurve synth_rb_curve(double a, double p, double b, const std::vector<int> &points, double noise_sigma,
                          std::uint64_t seed);

/// Two numeric columns (N, survival); a non-numeric first line is taken as a header.
DecayCurve read_decay_csv(std::istream &in);

}  // namespace nlmagic

#endif
