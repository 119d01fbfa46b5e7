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
 * Trace-only bounds on the extreme eigenvalues (Wolkowicz-Styan) and the
 * O(N^2) classical definiteness screen built on them.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "definiteness.hpp"
#include "error.hpp"
#include "hermitian.hpp"

namespace qdef {

struct TraceMoments {
    double mean = 0.0;   ///< r = Tr(M) / N
    double spread = 0.0; ///< s = sqrt(Tr(M^2) / N - r^2)
};

/// Tr(M^2) is the entrywise sum of M (Hadamard) M^T, never forming M^2.
inline TraceMoments trace_moments(const HermitianMatrix &m) {
    const std::size_t n = m.dim();
    double tr = 0.0;
    double tr2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tr += m(i, i).real();
        for (std::size_t j = 0; j < n; ++j) {
            tr2 += (m(i, j) * m(j, i)).real();
        }
    }
    const double dn = static_cast<double>(n);
    const double r = tr / dn;
    return {r, std::sqrt(std::max(0.0, tr2 / dn - r * r))};
}

/// low_* bracket the smallest eigenvalue, high_* the largest.
struct SpectralBounds {
    std::size_t dim = 0;
    double r = 0.0;
    double s = 0.0;
    double low_min = 0.0;
    double low_max = 0.0;
    double high_min = 0.0;
    double high_max = 0.0;
};

/// For N = 1 the bounds collapse onto the single eigenvalue r.
inline SpectralBounds eigenvalue_bounds(const HermitianMatrix &m) {
    const TraceMoments tm = trace_moments(m);
    SpectralBounds b;
    b.dim = m.dim();
    b.r = tm.mean;
    b.s = tm.spread;
    if (b.dim < 2) {
        b.low_min = b.low_max = b.high_min = b.high_max = b.r;
        return b;
    }
    const double root = std::sqrt(static_cast<double>(b.dim - 1));
    b.low_min = b.r - b.s * root;
    b.low_max = b.r - b.s / root;
    b.high_min = b.r + b.s / root;
    b.high_max = b.r + b.s * root;
    return b;
}

struct ClassicalVerdict {
    DefinitenessClass cls = DefinitenessClass::Unclassified;
    SpectralBounds bounds;

    /// Semi-definite verdicts from the bounds are only candidates.
    bool candidate() const {
        return cls == DefinitenessClass::PositiveSemiDefinite ||
               cls == DefinitenessClass::NegativeSemiDefinite;
    }
    bool conclusive() const { return cls != DefinitenessClass::Unclassified; }
};

/// Decision cascade on the trace bounds; every comparison with zero uses a
/// +-ztol band. A spectrum pinned inside the band on both sides (the zero
/// matrix) is reported PositiveSemiDefinite before the cascade runs.
inline DefinitenessClass classify_bounds(const SpectralBounds &b, double ztol = kDefaultZeroTol) {
    if (b.high_max <= ztol && b.low_min >= -ztol) {
        return DefinitenessClass::PositiveSemiDefinite;
    }
    if (b.high_max < -ztol) {
        return DefinitenessClass::NegativeDefinite;
    }
    if (b.high_max <= ztol) {
        return DefinitenessClass::NegativeSemiDefinite;
    }
    if (b.low_min > ztol) {
        return DefinitenessClass::PositiveDefinite;
    }
    if (b.low_min >= -ztol) {
        return DefinitenessClass::PositiveSemiDefinite;
    }
    if (b.low_max < -ztol && b.high_min > ztol) {
        return DefinitenessClass::Indefinite;
    }
    return DefinitenessClass::Unclassified;
}

inline ClassicalVerdict classify_classical(const HermitianMatrix &m, double ztol = kDefaultZeroTol) {
    ClassicalVerdict v;
    v.bounds = eigenvalue_bounds(m);
    v.cls = classify_bounds(v.bounds, ztol);
    return v;
}

/// C = guard * 2 * max(|low_min|, |high_max|), so every |lambda / C| <= 0.5 / guard.
inline double scale_constant(const SpectralBounds &b, double guard = 1.0) {
    if (!(guard >= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "guard must be >= 1");
    }
    const double c = guard * 2.0 * std::max(std::abs(b.low_min), std::abs(b.high_max));
    if (!(c > 0.0)) {
        throw Error(ErrorCode::ZeroMatrix, "trace bounds vanish; classify as PositiveSemiDefinite");
    }
    return c;
}

} // namespace qdef
