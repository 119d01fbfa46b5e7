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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bounds.hpp"
#include "definiteness.hpp"
#include "error.hpp"
#include "hermitian.hpp"
#include "qpe.hpp"
#include "rng.hpp"
#include "statevector.hpp"

namespace qdef {

enum class InitStrategy { RandomComplex, FixedTriple };

inline std::string_view to_string(InitStrategy s) {
    return s == InitStrategy::RandomComplex ? "random" : "triple";
}

inline InitStrategy init_strategy_from_string(std::string_view s) {
    if (s == "random" || s == "RandomComplex") {
        return InitStrategy::RandomComplex;
    }
    if (s == "triple" || s == "FixedTriple") {
        return InitStrategy::FixedTriple;
    }
    throw Error(ErrorCode::ParseError, "unknown init strategy '" + std::string(s) + "'");
}

struct QuantumConfig {
    unsigned n = 14;
    unsigned trials = 5;
    unsigned shots = 100;
    double delta = 0.98;
    double guard = 1.0;
    InitStrategy init = InitStrategy::RandomComplex;
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1 || n > 24) {
            throw Error(ErrorCode::InvalidArgument, "n must lie in [1, 24]");
        }
        if (trials < 1 || shots < 1) {
            throw Error(ErrorCode::InvalidArgument, "trials and shots must be >= 1");
        }
        if (!(delta >= 0.0 && delta <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1]");
        }
        if (!(guard >= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "guard must be >= 1");
        }
    }
};

struct QuantumVerdict {
    DefinitenessClass cls = DefinitenessClass::Indefinite;
    double mean_sigma = 0.0;
    std::vector<double> per_trial_sigma;
    std::vector<double> per_trial_p1; ///< exact MSB=1 probability behind each trial
    double scale = 0.0;               ///< C, zero when short-circuited
};

/// First d entries i.i.d. standard complex Gaussian, the remaining N - d
/// exactly zero, then normalized.
inline std::vector<Complex> random_b(std::size_t padded_dim, std::size_t original_dim, Rng &rng) {
    if (original_dim < 1 || original_dim > padded_dim) {
        throw Error(ErrorCode::InvalidArgument, "need 1 <= d <= N");
    }
    std::vector<Complex> b(padded_dim);
    for (std::size_t i = 0; i < original_dim; ++i) {
        b[i] = complex_gaussian(rng);
    }
    const double nrm = norm2(b);
    for (auto &z : b) {
        z /= nrm;
    }
    return b;
}

/// |0...0>, |1...1> and the uniform superposition on m system qubits.
inline std::array<std::vector<Complex>, 3> fixed_b_triple(unsigned m, std::size_t original_dim) {
    const std::size_t dim = std::size_t{1} << m;
    if (original_dim != dim) {
        throw Error(ErrorCode::PaddedUnsupported,
                    "fixed initial vectors need an unpadded power-of-two matrix");
    }
    std::array<std::vector<Complex>, 3> out;
    out[0].assign(dim, 0.0);
    out[0][0] = 1.0;
    out[1].assign(dim, 0.0);
    out[1][dim - 1] = 1.0;
    out[2].assign(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    return out;
}

/// Threshold rule, inclusive at +-delta.
inline DefinitenessClass decide_quantum(double mean_sigma, double delta) {
    if (mean_sigma >= delta) {
        return DefinitenessClass::PositiveSemiDefinite;
    }
    if (mean_sigma <= -delta) {
        return DefinitenessClass::NegativeDefinite;
    }
    return DefinitenessClass::Indefinite;
}

inline double mean_of(std::span<const double> xs) {
    double acc = 0.0;
    for (double x : xs) {
        acc += x;
    }
    return acc / static_cast<double>(xs.size());
}

/// Phases lambda_i / C weighted by |<v_i|b>|^2.
inline PhaseEnsemble phase_ensemble(const Spectrum &spectrum, double scale, std::span<const Complex> b) {
    PhaseEnsemble ens;
    const std::size_t n = spectrum.eigenvalues.size();
    if (b.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "initial vector does not match matrix dimension");
    }
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = spectrum.eigenvector(i);
        ens.phases.push_back(spectrum.eigenvalues[i] / scale);
        ens.weights.push_back(std::norm(inner(v, b)));
        wsum += ens.weights.back();
    }
    for (double &w : ens.weights) {
        w /= wsum;
    }
    return ens;
}

/// Infinite-shot <sigma_z> from the closed-form distribution, no circuit.
inline double expected_sigma_exact(const HermitianMatrix &m, double scale, unsigned n,
                                   std::span<const Complex> b) {
    const Spectrum spectrum = eigen_decompose(m);
    return sigma_z_expectation(ensemble_distribution(phase_ensemble(spectrum, scale, b), n));
}

/// Trial loop: each trial draws |b> from its own substream of cfg.seed,
/// simulates the circuit, and estimates sigma_z from cfg.shots samples of
/// the exact MSB marginal. `m` must already have power-of-two dimension.
inline QuantumVerdict classify_quantum(const HermitianMatrix &m, const SpectralBounds &bounds,
                                       const QuantumConfig &cfg) {
    cfg.validate();
    const unsigned system_qubits = log2_exact(m.dim());
    QuantumVerdict out;

    if (m.is_zero()) {
        out.cls = DefinitenessClass::PositiveSemiDefinite;
        out.mean_sigma = 1.0;
        out.per_trial_sigma.assign(cfg.trials, 1.0);
        out.per_trial_p1.assign(cfg.trials, 0.0);
        return out;
    }
    out.scale = scale_constant(bounds, cfg.guard);
    const Spectrum spectrum = eigen_decompose(m);

    const bool use_triple = cfg.init == InitStrategy::FixedTriple && !m.is_padded();
    std::array<std::vector<Complex>, 3> triple;
    if (use_triple) {
        triple = fixed_b_triple(system_qubits, m.original_dim());
    }

    for (unsigned t = 0; t < cfg.trials; ++t) {
        Rng rng = make_stream(cfg.seed, StreamTag::Trial, t);
        const std::vector<Complex> b =
            use_triple ? triple[t % 3] : random_b(m.dim(), m.original_dim(), rng);
        const Statevector state = run_qpe_statevector(spectrum, out.scale, cfg.n, b);
        const double p1 = marginal_msb(state).p1;
        out.per_trial_p1.push_back(p1);
        out.per_trial_sigma.push_back(sample_sigma_z(p1, cfg.shots, rng));
    }
    out.mean_sigma = mean_of(out.per_trial_sigma);
    out.cls = decide_quantum(out.mean_sigma, cfg.delta);
    return out;
}

} // namespace qdef
