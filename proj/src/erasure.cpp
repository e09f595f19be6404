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

#include "nlmagic/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "nlmagic/circuits.hpp"
#include "nlmagic/errors.hpp"
#include "nlmagic/magic.hpp"

namespace nlmagic {

namespace {

using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Adjoint action of Rz(t) = exp(-i t Z / 2) on the Bloch vector (x, y, z).
Mat3 so3_z(double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 r;
    r << c, -s, 0, s, c, 0, 0, 0, 1;
    return r;
}

Mat3 so3_y(double t) {
    const double c = std::cos(t), s = std::sin(t);
    Mat3 r;
    r << c, 0, s, 0, 1, 0, -s, 0, c;
    return r;
}

Mat4 lifted(double z1, double y, double z2) {
    Mat4 r = Mat4::Identity();
    r.bottomRightCorner<3, 3>() = so3_z(z1) * so3_y(y) * so3_z(z2);
    return r;
}

void require_two_qubits(const DensityMatrix &rho) {
    if (rho.num_qubits() != 2) {
        throw DimensionMismatchError("erasure acts on two-qubit states");
    }
}

// Pauli correlation matrix T(a, b) = Tr((P_a x P_b) rho), a, b over I, X, Y, Z.
struct Correlations {
    Mat4 t;
    double log2_purity;
};

Correlations correlations(const DensityMatrix &rho) {
    require_two_qubits(rho);
    const auto e = pauli_expectations(rho);
    Correlations c;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            c.t(a, b) = e[static_cast<std::size_t>(4 * a + b)];
        }
    }
    c.log2_purity = std::log2(purity(rho));
    return c;
}

double objective_from(const Correlations &c, const std::array<double, 6> &x) {
    const Mat4 t = lifted(x[0], x[1], x[2]) * c.t * lifted(x[3], x[4], x[5]).transpose();
    const double w = t.array().square().square().sum() / 16.0;
    return -std::log2(w) + c.log2_purity - 2.0;
}

double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Budget {
    std::size_t used = 0;
    std::size_t limit = 0;
};

struct Point {
    std::array<double, 6> x{};
    double f = 0.0;
};

// Nelder-Mead over the free coordinates `free` of a 6-vector. Returns the best
// vertex and whether the simplex spread fell below tol before the budget ran out.
std::pair<Point, bool> nelder_mead(const Correlations &c, Point start, const std::vector<int> &free, double scale,
                                   double tol, Budget &budget) {
    const std::size_t n = free.size();
    auto eval = [&](const std::array<double, 6> &x) {
        ++budget.used;
        return objective_from(c, x);
    };
    std::vector<Point> s(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        s[i + 1].x[static_cast<std::size_t>(free[i])] += scale;
        s[i + 1].f = eval(s[i + 1].x);
    }
    auto combine = [&](const std::array<double, 6> &a, const std::array<double, 6> &b, double t) {
        std::array<double, 6> r = a;
        for (int k : free) {
            r[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] +
                                             t * (b[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k)]);
        }
        return r;
    };
    while (true) {
        std::sort(s.begin(), s.end(), [](const Point &a, const Point &b) { return a.f < b.f; });
        double size = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (int k : free) {
                size = std::max(size, std::abs(s[i].x[static_cast<std::size_t>(k)] - s[0].x[static_cast<std::size_t>(k)]));
            }
        }
        if (s[n].f - s[0].f <= tol * 1e-2 && size <= std::sqrt(tol)) {
            return {s[0], true};
        }
        if (budget.used >= budget.limit) {
            return {s[0], false};
        }
        std::array<double, 6> centroid = s[0].x;
        for (int k : free) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sum += s[i].x[static_cast<std::size_t>(k)];
            }
            centroid[static_cast<std::size_t>(k)] = sum / static_cast<double>(n);
        }
        Point r{combine(centroid, s[n].x, -1.0), 0.0};
        r.f = eval(r.x);
        if (r.f < s[0].f) {
            Point e{combine(centroid, s[n].x, -2.0), 0.0};
            e.f = eval(e.x);
            s[n] = e.f < r.f ? e : r;
        } else if (r.f < s[n - 1].f) {
            s[n] = r;
        } else {
            const bool outside = r.f < s[n].f;
            Point k{combine(centroid, outside ? r.x : s[n].x, 0.5), 0.0};
            k.f = eval(k.x);
            if (k.f < (outside ? r.f : s[n].f)) {
                s[n] = k;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    s[i].x = combine(s[0].x, s[i].x, 0.5);
                    s[i].f = eval(s[i].x);
                }
            }
        }
    }
}

}  // namespace

ErasureAngles ErasureAngles::from_array(const std::array<double, 6> &a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
}

std::array<double, 6> ErasureAngles::to_array() const {
    return {alpha, beta, gamma, delta, eta, phi};
}

ErasureAngles ErasureAngles::wrapped() const {
    auto a = to_array();
    for (auto &x : a) {
        x = std::fmod(x, kTwoPi);
        if (x < 0.0) {
            x += kTwoPi;
        }
        if (x >= kTwoPi) {
            x = 0.0;
        }
    }
    return from_array(a);
}

ComplexMatrix ErasureAngles::unitary() const {
    auto r = [](GateKind k, double t) { return gate_matrix(GateSpec{k, {0}, {t}}); };
    const ComplexMatrix ua = r(GateKind::Rz, alpha) * r(GateKind::Ry, beta) * r(GateKind::Rz, gamma);
    const ComplexMatrix ub = r(GateKind::Rz, delta) * r(GateKind::Ry, eta) * r(GateKind::Rz, phi);
    return tensor(ua, ub);
}

std::string Landscape::to_csv() const {
    std::ostringstream out;
    out << "gamma_deg,phi_deg,m2\n";
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
        for (std::size_t j = 0; j < phi_grid.size(); ++j) {
            out << std::setprecision(12) << gamma_grid[i] * 180.0 / std::numbers::pi << ','
                << phi_grid[j] * 180.0 / std::numbers::pi << ',' << std::setprecision(17) << values[i][j] << '\n';
        }
    }
    return out.str();
}

double erasure_objective(const DensityMatrix &rho, const ErasureAngles &a) {
    return objective_from(correlations(rho), a.to_array());
}

double erasure_objective_direct(const DensityMatrix &rho, const ErasureAngles &a) {
    require_two_qubits(rho);
    return sre_exact(rho.conjugated(a.unitary()));
}

ErasureResult optimize_erasure(const DensityMatrix &rho, const OptConfig &cfg) {
    if (!(cfg.tol > 0.0) || cfg.max_evals == 0 || cfg.restarts < 1) {
        throw DomainError("optimizer tolerance, budget and restarts must be positive");
    }
    const Correlations c = correlations(rho);
    const bool full = cfg.search == ErasureSearch::Full;
    const std::vector<int> free = full ? std::vector<int>{0, 1, 2, 3, 4, 5} : std::vector<int>{2, 5};
    const double step = (full ? 45.0 : 15.0) * std::numbers::pi / 180.0;
    const int per_axis = static_cast<int>(std::lround(kTwoPi / step));

    // Coarse grid; keep the best `restarts` points.
    std::vector<Point> best;
    std::size_t grid_evals = 0;
    std::vector<int> idx(free.size(), 0);
    while (true) {
        Point p;
        for (std::size_t k = 0; k < free.size(); ++k) {
            p.x[static_cast<std::size_t>(free[k])] = idx[k] * step;
        }
        p.f = objective_from(c, p.x);
        ++grid_evals;
        if (best.size() < static_cast<std::size_t>(cfg.restarts) || p.f < best.back().f) {
            auto pos = std::upper_bound(best.begin(), best.end(), p, [](const Point &a, const Point &b) { return a.f < b.f; });
            best.insert(pos, p);
            if (best.size() > static_cast<std::size_t>(cfg.restarts)) {
                best.pop_back();
            }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == per_axis) {
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) {
            break;
        }
    }

    ErasureResult res;
    Point overall = best.front();
    Budget budget{0, cfg.max_evals};
    bool converged = true;
    std::mt19937_64 rng(cfg.seed);
    std::vector<Point> starts = best;
    for (int r = 0; r < cfg.restarts; ++r) {
        Point p;
        for (int k : free) {
            p.x[static_cast<std::size_t>(k)] = uniform01(rng) * kTwoPi;
        }
        p.f = objective_from(c, p.x);
        ++grid_evals;
        starts.push_back(p);
    }
    // Each start gets an equal share of the refinement budget.
    const std::size_t share = std::max<std::size_t>(1, cfg.max_evals / starts.size());
    for (const auto &s : starts) {
        budget.limit = std::min(cfg.max_evals, budget.used + share);
        auto [p, ok] = nelder_mead(c, s, free, step / 2.0, cfg.tol, budget);
        // Polish once from the refined point with a small simplex.
        if (ok) {
            budget.limit = std::min(cfg.max_evals, budget.used + share / 2 + 1);
            auto [q, ok2] = nelder_mead(c, p, free, 1e-3, cfg.tol, budget);
            if (q.f < p.f) {
                p = q;
            }
            ok = ok2;
        }
        if (p.f < overall.f) {
            overall = p;
            converged = ok;
        } else if (&s == &starts.front()) {
            converged = ok;
        }
    }
    res.angles = ErasureAngles::from_array(overall.x).wrapped();
    res.residual_m2 = overall.f;
    res.evaluations = grid_evals + budget.used;
    res.converged = converged;
    return res;
}

ErasureResult sweep_landscape(const DensityMatrix &rho, const std::vector<double> &gamma_grid,
                              const std::vector<double> &phi_grid) {
    if (gamma_grid.empty() || phi_grid.empty()) {
        throw DomainError("landscape grids must be non-empty");
    }
    const Correlations c = correlations(rho);
    Landscape land{gamma_grid, phi_grid, {}};
    ErasureResult res;
    res.residual_m2 = std::numeric_limits<double>::infinity();
    for (double g : gamma_grid) {
        std::vector<double> row;
        row.reserve(phi_grid.size());
        for (double f : phi_grid) {
            const std::array<double, 6> x{0.0, 0.0, g, 0.0, 0.0, f};
            const double v = objective_from(c, x);
            row.push_back(v);
            if (v < res.residual_m2) {
                res.residual_m2 = v;
                res.angles = ErasureAngles::from_array(x).wrapped();
            }
            ++res.evaluations;
        }
        land.values.push_back(std::move(row));
    }
    res.landscape = std::move(land);
    return res;
}

}  // namespace nlmagic
