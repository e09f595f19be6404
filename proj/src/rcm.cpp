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

#include "nlmagic/rcm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include "nlmagic/circuits.hpp"
#include "nlmagic/errors.hpp"

namespace nlmagic {

namespace {

constexpr int kGroupSize = 24;

// (-2)^-w for w = 0..63.
double xor_weight_factor(std::uint64_t x) {
    return std::ldexp(1.0, -std::popcount(x)) * ((std::popcount(x) & 1) ? -1.0 : 1.0);
}

std::vector<double> weight_table(std::size_t d) {
    std::vector<double> w(d);
    for (std::size_t x = 0; x < d; ++x) {
        w[x] = xor_weight_factor(x);
    }
    return w;
}

template <typename Stat>
EstimateWithError estimate_with(const RcmDataset &ds, Stat stat) {
    ds.validate();
    std::vector<double> xs;
    xs.reserve(ds.size());
    for (const auto &p : ds.prob_vectors) {
        xs.push_back(stat(p));
    }
    return EstimateWithError::from_samples(xs);
}

}  // namespace

EstimateWithError EstimateWithError::from_samples(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw UndersampledDataError("need at least two samples for a variance");
    }
    EstimateWithError e;
    e.n_samples = xs.size();
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    e.mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - e.mean) * (x - e.mean);
    }
    e.sample_std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    e.sampling_error = e.sample_std / std::sqrt(static_cast<double>(xs.size()));
    return e;
}

void RcmDataset::validate() const {
    if (prob_vectors.size() < 2) {
        throw UndersampledDataError("RCM dataset needs at least two Clifford samples");
    }
    if (clifford_ids.size() != prob_vectors.size()) {
        throw DimensionMismatchError("Clifford ids and probability vectors differ in count");
    }
    const std::size_t d = std::size_t{1} << num_qubits;
    for (std::size_t i = 0; i < prob_vectors.size(); ++i) {
        if (prob_vectors[i].size() != d || clifford_ids[i].size() != static_cast<std::size_t>(num_qubits)) {
            throw DimensionMismatchError("sample " + std::to_string(i) + " does not match the register width");
        }
    }
}

std::vector<CliffordTuple> exhaustive_local_cliffords(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 4) {
        throw DomainError("exhaustive enumeration supports 1..4 qubits");
    }
    std::size_t total = 1;
    for (int q = 0; q < num_qubits; ++q) {
        total *= kGroupSize;
    }
    std::vector<CliffordTuple> out;
    out.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        CliffordTuple t(static_cast<std::size_t>(num_qubits));
        std::size_t r = k;
        for (int q = num_qubits - 1; q >= 0; --q) {
            t[static_cast<std::size_t>(q)] = static_cast<int>(r % kGroupSize);
            r /= kGroupSize;
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<CliffordTuple> sample_local_cliffords(int num_qubits, std::size_t n_rand, std::uint64_t seed) {
    if (num_qubits < 1) {
        throw DomainError("need at least one qubit");
    }
    if (n_rand < 2) {
        throw DomainError("need at least two Clifford samples");
    }
    std::size_t total = 1;
    for (int q = 0; q < num_qubits && total <= n_rand; ++q) {
        total *= kGroupSize;
    }
    if (total == n_rand) {
        return exhaustive_local_cliffords(num_qubits);
    }
    std::mt19937_64 rng(seed);
    std::vector<CliffordTuple> out(n_rand, CliffordTuple(static_cast<std::size_t>(num_qubits)));
    for (auto &t : out) {
        for (auto &id : t) {
            // Multiply-high maps a 64-bit draw onto 0..23 without modulo bias beyond 2^-59.
            id = static_cast<int>((static_cast<unsigned __int128>(rng()) * kGroupSize) >> 64);
        }
    }
    return out;
}

ComplexMatrix local_clifford_unitary(const CliffordTuple &ids) {
    const auto &group = single_qubit_clifford_group();
    ComplexMatrix u = ComplexMatrix::Identity(1, 1);
    for (int id : ids) {
        if (id < 0 || id >= kGroupSize) {
            throw DomainError("Clifford id out of range");
        }
        u = tensor(u, group[static_cast<std::size_t>(id)].matrix);
    }
    return u;
}

RcmDataset collect_dataset(const DensityMatrix &rho, std::span<const CliffordTuple> tuples, const NoiseConfig &noise,
                           unsigned workers) {
    noise.validate();
    if (noise.readout_lambda && noise.readout_lambda->num_qubits() != rho.num_qubits()) {
        throw DimensionMismatchError("calibration matrix width does not match the state");
    }
    RcmDataset ds;
    ds.num_qubits = rho.num_qubits();
    ds.clifford_ids.assign(tuples.begin(), tuples.end());
    ds.n_shot = noise.n_shot;
    ds.seed = noise.seed;

    std::vector<std::optional<ProbabilityVector>> slots(tuples.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            if (tuples[i].size() != static_cast<std::size_t>(rho.num_qubits())) {
                throw DimensionMismatchError("Clifford tuple width does not match the state");
            }
            ProbabilityVector p = born_probabilities(rho.conjugated(local_clifford_unitary(tuples[i])));
            if (noise.readout_lambda) {
                p = apply_readout_noise(p, *noise.readout_lambda);
            }
            if (noise.n_shot) {
                p = sample_shots(p, *noise.n_shot, derive_seed(noise.seed, i));
            }
            slots[i] = std::move(p);
        }
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, tuples.size()))));
    if (workers == 1) {
        work(0, tuples.size());
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(workers);
        const std::size_t chunk = (tuples.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(tuples.size(), w * chunk);
            const std::size_t end = std::min(tuples.size(), begin + chunk);
            threads.emplace_back([&, w, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : threads) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    ds.prob_vectors.reserve(slots.size());
    for (auto &s : slots) {
        ds.prob_vectors.push_back(std::move(*s));
    }
    return ds;
}

int hamming_xor_weight(std::span<const std::uint64_t> strings) {
    if (strings.size() != 2 && strings.size() != 4) {
        throw DomainError("XOR weight is defined for 2 or 4 strings");
    }
    std::uint64_t acc = 0;
    for (auto s : strings) {
        acc ^= s;
    }
    return std::popcount(acc);
}

int hamming_xor_weight(std::span<const std::string> strings) {
    if (strings.size() != 2 && strings.size() != 4) {
        throw DomainError("XOR weight is defined for 2 or 4 strings");
    }
    const std::size_t len = strings[0].size();
    std::vector<std::uint64_t> bits;
    for (const auto &s : strings) {
        if (s.size() != len) {
            throw DimensionMismatchError("bit strings differ in length");
        }
        if (len > 64) {
            throw DomainError("bit strings longer than 64");
        }
        std::uint64_t v = 0;
        for (char c : s) {
            if (c != '0' && c != '1') {
                throw DomainError("bit strings may only contain '0' and '1'");
            }
            v = (v << 1) | static_cast<std::uint64_t>(c == '1');
        }
        bits.push_back(v);
    }
    return hamming_xor_weight(std::span<const std::uint64_t>(bits));
}

double purity_statistic(const ProbabilityVector &p) {
    const std::size_t d = p.size();
    const auto w = weight_table(d);
    const auto &v = p.values();
    double sum = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            sum += w[a ^ b] * v[a] * v[b];
        }
    }
    return static_cast<double>(d) * sum;
}

double stabilizer_purity_statistic(const ProbabilityVector &p) {
    const std::size_t d = p.size();
    const auto w = weight_table(d);
    const auto &v = p.values();
    double sum = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            const double pab = v[a] * v[b];
            for (std::size_t c = 0; c < d; ++c) {
                const double pabc = pab * v[c];
                const std::size_t abc = a ^ b ^ c;
                for (std::size_t e = 0; e < d; ++e) {
                    sum += w[abc ^ e] * pabc * v[e];
                }
            }
        }
    }
    return sum;
}

EstimateWithError estimate_purity(const RcmDataset &ds) {
    return estimate_with(ds, purity_statistic);
}

EstimateWithError estimate_stabilizer_purity(const RcmDataset &ds) {
    return estimate_with(ds, stabilizer_purity_statistic);
}

EstimateWithError estimate_sre(const RcmDataset &ds) {
    const auto pur = estimate_purity(ds);
    const auto stab = estimate_stabilizer_purity(ds);
    if (!(pur.mean > 0.0) || !(stab.mean > 0.0)) {
        throw UndersampledDataError("purity or stabilizer purity estimate is not positive");
    }
    const double n = static_cast<double>(ds.size());
    const double d = static_cast<double>(std::size_t{1} << ds.num_qubits);
    EstimateWithError e;
    e.n_samples = ds.size();
    e.mean = -std::log2(stab.mean) + std::log2(pur.mean) - std::log2(d);
    const double var_w = stab.sample_std * stab.sample_std;
    const double var_p = pur.sample_std * pur.sample_std;
    e.sampling_error =
        std::sqrt(var_w / (n * stab.mean * stab.mean) + var_p / (n * pur.mean * pur.mean)) / std::numbers::ln2;
    e.sample_std = e.sampling_error * std::sqrt(n);
    return e;
}

ProbabilityVector marginalize(const ProbabilityVector &p, std::span<const int> keep) {
    const int n = p.num_qubits();
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty() || static_cast<int>(kept.size()) >= n || kept.front() < 0 || kept.back() >= n ||
        std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw InvalidSubsystemError("kept subsystem must be a nonempty proper subset of distinct qubits");
    }
    std::vector<double> out(std::size_t{1} << kept.size(), 0.0);
    for (std::size_t s = 0; s < p.size(); ++s) {
        std::size_t idx = 0;
        for (int q : kept) {
            idx = (idx << 1) | ((s >> (n - 1 - q)) & 1);
        }
        out[idx] += p[s];
    }
    return ProbabilityVector(std::move(out));
}

EstimateWithError estimate_rdm_purity(const RcmDataset &ds, std::span<const int> keep) {
    std::vector<int> kept(keep.begin(), keep.end());
    return estimate_with(ds, [&](const ProbabilityVector &p) { return purity_statistic(marginalize(p, kept)); });
}

}  // namespace nlmagic
