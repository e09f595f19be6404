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

#include "nlmagic/benchfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "nlmagic/errors.hpp"

namespace nlmagic {

namespace {

double sum_sq_residual(const DecayCurve &c, double a, double p, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.survival.size(); ++i) {
        const double r = c.survival[i] - (a * std::pow(p, c.n_cliffords[i]) + b);
        s += r * r;
    }
    return s;
}

// Box-Muller on 53-bit uniforms, so the stream is identical across standard libraries.
double gaussian(std::mt19937_64 &rng) {
    auto u = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
    const double u1 = u();
    const double u2 = u();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

void DecayCurve::validate() const {
    if (n_cliffords.size() != survival.size()) {
        throw DimensionMismatchError("decay curve columns differ in length");
    }
    if (n_cliffords.size() < 4) {
        throw DomainError("decay fit needs at least four points");
    }
    for (std::size_t i = 0; i < n_cliffords.size(); ++i) {
        if (i > 0 && n_cliffords[i] <= n_cliffords[i - 1]) {
            throw DomainError("Clifford counts must be strictly increasing");
        }
        if (!(survival[i] >= 0.0 && survival[i] <= 1.0)) {
            throw DomainError("survival probabilities must lie in [0, 1]");
        }
    }
}

DecayFit fit_exp_decay(const DecayCurve &curve) {
    curve.validate();
    const auto [mn_it, mx_it] = std::minmax_element(curve.survival.begin(), curve.survival.end());
    const double mn = *mn_it;
    if (*mx_it - mn <= 0.0) {
        throw FitError("constant survival data leaves the decay unidentifiable");
    }
    const std::size_t n = curve.survival.size();

    // Log-linear initial guess on points strictly above the minimum.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = curve.survival[i] - mn;
        if (y > 0.0) {
            const double x = curve.n_cliffords[i];
            const double ly = std::log(y);
            sx += x;
            sy += ly;
            sxx += x * x;
            sxy += x * ly;
            ++m;
        }
    }
    double p = 0.99;
    double a = *mx_it - mn;
    if (m >= 2 && m * sxx - sx * sx > 0.0) {
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double icept = (sy - slope * sx) / m;
        p = std::clamp(std::exp(slope), 1e-6, 1.0 - 1e-9);
        a = std::exp(icept);
    }
    double b = mn;

    double cost = sum_sq_residual(curve, a, p, b);
    double mu = 1e-3;
    int it = 0;
    bool done = false;
    for (; it < 200 && !done; ++it) {
        Eigen::MatrixXd j(n, 3);
        Eigen::VectorXd r(n);
        for (std::size_t i = 0; i < n; ++i) {
            const int k = curve.n_cliffords[i];
            const double pk = std::pow(p, k);
            j(static_cast<Eigen::Index>(i), 0) = pk;
            j(static_cast<Eigen::Index>(i), 1) = a * k * std::pow(p, k - 1);
            j(static_cast<Eigen::Index>(i), 2) = 1.0;
            r(static_cast<Eigen::Index>(i)) = curve.survival[i] - (a * pk + b);
        }
        const Eigen::Matrix3d jtj = j.transpose() * j;
        const Eigen::Vector3d jtr = j.transpose() * r;
        bool accepted = false;
        for (int tries = 0; tries < 60 && !accepted; ++tries) {
            Eigen::Matrix3d damped = jtj;
            damped.diagonal() += mu * jtj.diagonal();
            const Eigen::Vector3d delta = damped.ldlt().solve(jtr);
            const double na = a + delta(0), np = p + delta(1), nb = b + delta(2);
            const double ncost = (np > 0.0 && std::isfinite(np)) ? sum_sq_residual(curve, na, np, nb)
                                                                  : std::numeric_limits<double>::infinity();
            if (ncost <= cost) {
                const double change = delta.norm();
                a = na;
                p = np;
                b = nb;
                const double old = cost;
                cost = ncost;
                mu = std::max(mu / 10.0, 1e-15);
                accepted = true;
                if (change < 1e-14 || old - ncost <= 1e-16 * std::max(old, 1e-300)) {
                    done = true;
                }
            } else {
                mu *= 10.0;
            }
        }
        if (!accepted) {
            break;
        }
    }
    if (!(p > 0.0 && p <= 1.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw FitError("decay parameter p estimated outside (0, 1]");
    }
    DecayFit fit{a, p, b, std::sqrt(cost / static_cast<double>(n)), it};
    return fit;
}

GateFidelity avg_gate_fidelity(double p, int d) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw DomainError("decay parameter must lie in (0, 1]");
    }
    if (d < 2) {
        throw DomainError("dimension must be at least 2");
    }
    GateFidelity f;
    f.f_cl = 1.0 - (static_cast<double>(d - 1) / d) * (1.0 - p);
    f.f_avg = std::pow(f.f_cl, 1.0 / kGatesPerClifford);
    return f;
}

IrbFidelity irb_fidelity(double p0, double p1, int d) {
    if (!(p0 > 0.0 && p0 <= 1.0)) {
        throw DomainError("reference decay p0 must lie in (0, 1]");
    }
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw DomainError("interleaved decay p1 must lie in [0, 1]");
    }
    if (d < 2) {
        throw DomainError("dimension must be at least 2");
    }
    IrbFidelity f;
    f.value = 1.0 - (static_cast<double>(d - 1) / d) * (1.0 - p1 / p0);
    f.exceeds_one = p1 > p0;
    return f;
}

double mw_crosstalk(double a_jj, double t_jj, double a_ij, double t_ij) {
    if (!(a_ij > 0.0) || !(t_ij > 0.0)) {
        throw DomainError("crosstalk denominators must be positive");
    }
    return (a_jj / a_ij) * (t_jj / t_ij);
}

DecayCurve synth_rb_curve(double a, double p, double b, const std::vector<int> &points, double noise_sigma,
                          std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0) || noise_sigma < 0.0) {
        throw DomainError("invalid decay model parameters");
    }
    std::mt19937_64 rng(seed);
    DecayCurve c;
    c.n_cliffords = points;
    for (int k : points) {
        double v = a * std::pow(p, k) + b;
        if (noise_sigma > 0.0) {
            v += noise_sigma * gaussian(rng);
        }
        c.survival.push_back(std::clamp(v, 0.0, 1.0));
    }
    return c;
}

DecayCurve read_decay_csv(std::istream &in) {
    DecayCurve c;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double nval = 0.0, s = 0.0;
        if (!(ls >> nval >> s)) {
            if (first) {
                first = false;
                continue;
            }
            throw DomainError("malformed decay CSV line: " + line);
        }
        first = false;
        c.n_cliffords.push_back(static_cast<int>(std::lround(nval)));
        c.survival.push_back(s);
    }
    c.validate();
    return c;
}

}  // namespace nlmagic
