// Copyright 2026 The qdef Authors
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

/**
 * @file
 * Closed-form outcome statistics of phase estimation on an n-qubit ancilla
 * register, and the sigma_z statistic of its most significant qubit.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace qdef {

inline constexpr double kIntegerPhaseTol = 1e-12;

/// Eigenphases theta_i with weights |beta_i|^2.
struct PhaseEnsemble {
    std::vector<double> phases;
    std::vector<double> weights;
};

/// p[x] for x in [0, 2^n).
struct AncillaDistribution {
    unsigned n = 0;
    std::vector<double> p;

    double total() const {
        double acc = 0.0;
        for (double v : p) {
            acc += v;
        }
        return acc;
    }
};

/// p_n(x, theta) for any integer x; periodic in x with period 2^n.
inline double single_phase_probability(double theta, unsigned n, std::int64_t x) {
    const double size = std::ldexp(1.0, static_cast<int>(n));
    // 2^n * (theta mod 1); ldexp is exact so integer phases stay integers.
    const double y = std::ldexp(theta, static_cast<int>(n)) -
                     std::ldexp(std::floor(theta), static_cast<int>(n));
    const auto period = static_cast<std::int64_t>(size);
    const std::int64_t xr = ((x % period) + period) % period;
    const double nearest = std::round(y);
    if (std::abs(y - nearest) <= kIntegerPhaseTol) {
        const auto peak = static_cast<std::int64_t>(nearest);
        return (((xr - peak) % period) + period) % period == 0 ? 1.0 : 0.0;
    }
    const double frac = y - std::floor(y);
    const double num = std::sin(std::numbers::pi * frac);
    const double den = std::sin(std::numbers::pi * (y - static_cast<double>(xr)) / size);
    return (num * num) / (den * den) / (size * size);
}

inline AncillaDistribution single_phase_distribution(double theta, unsigned n) {
    if (n < 1 || n > 30) {
        throw Error(ErrorCode::InvalidArgument, "ancilla count must lie in [1, 30]");
    }
    AncillaDistribution d;
    d.n = n;
    d.p.resize(std::size_t{1} << n);
    for (std::size_t x = 0; x < d.p.size(); ++x) {
        d.p[x] = single_phase_probability(theta, n, static_cast<std::int64_t>(x));
    }
    return d;
}

/// Weighted mixture sum_i w_i p_n(x, theta_i), renormalized by sum_i w_i.
inline AncillaDistribution ensemble_distribution(const PhaseEnsemble &ens, unsigned n) {
    if (ens.phases.size() != ens.weights.size() || ens.phases.empty()) {
        throw Error(ErrorCode::InvalidArgument, "phase ensemble needs matching, nonempty lists");
    }
    double wsum = 0.0;
    for (double w : ens.weights) {
        if (w < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "phase weights must be nonnegative");
        }
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > kIntegerPhaseTol) {
        throw Error(ErrorCode::InvalidArgument, "phase weights must sum to 1");
    }
    AncillaDistribution d;
    d.n = n;
    d.p.assign(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < ens.phases.size(); ++i) {
        if (ens.weights[i] == 0.0) {
            continue;
        }
        const AncillaDistribution single = single_phase_distribution(ens.phases[i], n);
        for (std::size_t x = 0; x < d.p.size(); ++x) {
            d.p[x] += ens.weights[i] * single.p[x];
        }
    }
    for (double &v : d.p) {
        v /= wsum;
    }
    return d;
}

/// <sigma_z> on the most significant ancilla qubit: P(MSB = 0) - P(MSB = 1).
inline double sigma_z_expectation(const AncillaDistribution &d) {
    const std::size_t half = d.p.size() / 2;
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t x = 0; x < half; ++x) {
        lo += d.p[x];
    }
    for (std::size_t x = half; x < d.p.size(); ++x) {
        hi += d.p[x];
    }
    return lo - hi;
}

/// Sum of |a - b| / 2 over outcomes.
inline double total_variation(const AncillaDistribution &a, const AncillaDistribution &b) {
    if (a.p.size() != b.p.size()) {
        throw Error(ErrorCode::DimensionMismatch, "distributions over different registers");
    }
    double acc = 0.0;
    for (std::size_t x = 0; x < a.p.size(); ++x) {
        acc += std::abs(a.p[x] - b.p[x]);
    }
    return 0.5 * acc;
}

/// Shot-noise estimate of <sigma_z>: `shots` Bernoulli(p1) draws,
/// returns (count0 - count1) / shots.
inline double sample_sigma_z(double p1, unsigned shots, Rng &rng) {
    if (shots < 1) {
        throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
    }
    std::bernoulli_distribution one(std::clamp(p1, 0.0, 1.0));
    long ones = 0;
    for (unsigned s = 0; s < shots; ++s) {
        ones += one(rng) ? 1 : 0;
    }
    return static_cast<double>(static_cast<long>(shots) - 2 * ones) / static_cast<double>(shots);
}

} // namespace qdef
