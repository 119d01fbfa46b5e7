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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "definiteness.hpp"
#include "hermitian.hpp"
#include "rng.hpp"

namespace qdef {

/// Random unitary: modified Gram-Schmidt on a matrix of standard complex
/// Gaussians, with each column phase fixed so that R has a positive real
/// diagonal. The result is Haar distributed.
inline CMatrix random_unitary(std::size_t dim, Rng &rng) {
    CMatrix q(dim);
    for (auto &z : q.data()) {
        z = complex_gaussian(rng);
    }
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            Complex proj{};
            for (std::size_t i = 0; i < dim; ++i) {
                proj += std::conj(q(i, j)) * q(i, k);
            }
            for (std::size_t i = 0; i < dim; ++i) {
                q(i, k) -= proj * q(i, j);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            norm += std::norm(q(i, k));
        }
        norm = std::sqrt(norm);
        // R_kk = norm is already real and positive, so the phase is fixed.
        for (std::size_t i = 0; i < dim; ++i) {
            q(i, k) /= norm;
        }
    }
    return q;
}

/// Which eigenvalue of a Positive-class sample is overwritten with 0.
enum class ZeroPlacement { Random, Smallest };

struct LabeledMatrix {
    std::size_t id = 0;
    HermitianMatrix matrix;
    CanonicalClass label;
};

struct SampleOptions {
    double zero_fraction = 0.05;
    ZeroPlacement zero_placement = ZeroPlacement::Random;
    double ztol = kDefaultZeroTol;
};

namespace detail {

inline std::vector<double> draw_spectrum(CanonicalClass cls, std::size_t dim, Rng &rng,
                                         double ztol) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> lambda(dim);
    switch (cls) {
    case CanonicalClass::Positive:
        for (auto &l : lambda) {
            l = unit(rng);
        }
        break;
    case CanonicalClass::Negative:
        for (auto &l : lambda) {
            do {
                l = -1.0 + unit(rng);
            } while (l >= -ztol);
        }
        break;
    case CanonicalClass::Indefinite:
        if (dim < 2) {
            throw Error(ErrorCode::InvalidArgument, "an indefinite matrix needs dim >= 2");
        }
        for (;;) {
            bool pos = false;
            bool neg = false;
            for (auto &l : lambda) {
                l = -1.0 + 2.0 * unit(rng);
                pos = pos || l > ztol;
                neg = neg || l < -ztol;
            }
            if (pos && neg) {
                break;
            }
        }
        break;
    }
    return lambda;
}

} // namespace detail

/// `count` matrices V diag(lambda) V^dagger of the requested class with Haar V.
///
/// Positive: lambda uniform in [0, 1); round(zero_fraction * count) of them,
/// chosen by a seeded shuffle, get one eigenvalue forced to 0.
/// Negative: lambda uniform in [-1, 0), zero excluded.
/// Indefinite: lambda uniform in [-1, 1), redrawn until both signs occur.
///
/// Matrix i only depends on (seed, class, i). ids are 0..count-1.
inline std::vector<LabeledMatrix> generate_sample(CanonicalClass cls, std::size_t dim,
                                                  std::size_t count, std::uint64_t seed,
                                                  const SampleOptions &opts = {}) {
    if (count < 1 || dim < 1) {
        throw Error(ErrorCode::InvalidArgument, "sample needs count >= 1 and dim >= 1");
    }
    if (opts.zero_fraction < 0.0 || opts.zero_fraction > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "zero_fraction must lie in [0, 1]");
    }
    const auto class_index = static_cast<std::uint64_t>(cls);

    std::vector<bool> forced_zero(count, false);
    if (cls == CanonicalClass::Positive) {
        const auto zeros = static_cast<std::size_t>(
            std::llround(opts.zero_fraction * static_cast<double>(count)));
        std::vector<std::size_t> idx(count);
        std::iota(idx.begin(), idx.end(), 0);
        Rng shuffle_rng = make_stream(seed, StreamTag::SampleZeroSubset, class_index);
        std::shuffle(idx.begin(), idx.end(), shuffle_rng);
        for (std::size_t k = 0; k < std::min(zeros, count); ++k) {
            forced_zero[idx[k]] = true;
        }
    }

    std::vector<LabeledMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::SampleMatrix),
                                   class_index, i}));
        std::vector<double> lambda = detail::draw_spectrum(cls, dim, rng, opts.ztol);
        if (forced_zero[i]) {
            std::size_t slot = 0;
            if (opts.zero_placement == ZeroPlacement::Random) {
                slot = std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng);
            } else {
                slot = static_cast<std::size_t>(
                    std::min_element(lambda.begin(), lambda.end()) - lambda.begin());
            }
            lambda[slot] = 0.0;
        }
        const CMatrix v = random_unitary(dim, rng);
        const CMatrix m = v * CMatrix::diagonal(lambda) * v.adjoint();
        HermitianMatrix h = validate_hermitian(m);

        const auto truth = canonical(ground_truth_class(h, opts.ztol));
        if (!truth || *truth != cls) {
            throw std::logic_error("generated matrix " + std::to_string(i) +
                                   " does not match its requested class");
        }
        out.push_back(LabeledMatrix{i, std::move(h), cls});
    }
    return out;
}

/// Equal-count sample over the three classes, ids renumbered 0..3*count-1 in
/// Positive, Negative, Indefinite order.
inline std::vector<LabeledMatrix> generate_balanced_sample(std::size_t dim, std::size_t count_per_class,
                                                           std::uint64_t seed,
                                                           const SampleOptions &opts = {}) {
    std::vector<LabeledMatrix> out;
    out.reserve(3 * count_per_class);
    for (CanonicalClass cls : kCanonicalClasses) {
        for (auto &lm : generate_sample(cls, dim, count_per_class, seed, opts)) {
            lm.id = out.size();
            out.push_back(std::move(lm));
        }
    }
    return out;
}

} // namespace qdef
