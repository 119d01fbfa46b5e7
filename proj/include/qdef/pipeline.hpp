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
 * Two-stage classification: the trace-bound screen first, phase estimation
 * only for matrices the screen leaves unclassified. Also the optional -M
 * refinement and recall / accuracy scoring.
 */

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "bounds.hpp"
#include "classifier.hpp"
#include "definiteness.hpp"
#include "error.hpp"
#include "hermitian.hpp"

namespace qdef {

enum class Stage { Classical, Quantum };

inline std::string_view to_string(Stage s) { return s == Stage::Classical ? "Classical" : "Quantum"; }

struct HybridVerdict {
    DefinitenessClass cls = DefinitenessClass::Unclassified;
    Stage stage = Stage::Classical;
    ClassicalVerdict classical;
    std::optional<QuantumVerdict> quantum;
    bool refined = false;
    bool refinement_inconsistent = false;
};

/// Runs the quantum classifier on -M with the same configuration (hence
/// the same |b> draws). -M negative definite means M positive definite;
/// -M indefinite means M has a zero eigenvalue. A positive verdict for -M
/// contradicts the earlier one and raises InconsistentRefinement.
inline DefinitenessClass refine_positive(const HermitianMatrix &m, const QuantumConfig &cfg) {
    if (m.is_zero()) {
        return DefinitenessClass::PositiveSemiDefinite;
    }
    const HermitianMatrix padded = pad_to_power_of_two(m);
    const HermitianMatrix flipped = -padded;
    const QuantumVerdict q = classify_quantum(flipped, eigenvalue_bounds(flipped), cfg);
    switch (q.cls) {
    case DefinitenessClass::NegativeDefinite:
        return DefinitenessClass::PositiveDefinite;
    case DefinitenessClass::Indefinite:
        return DefinitenessClass::PositiveSemiDefinite;
    default:
        throw Error(ErrorCode::InconsistentRefinement,
                    "-M was also classified positive semi-definite (mean sigma " +
                        std::to_string(q.mean_sigma) + ")");
    }
}

/// The classical verdict is taken on the unpadded block; the quantum stage
/// runs on the power-of-two padding, with bounds recomputed when padding
/// changed the dimension.
inline HybridVerdict classify_hybrid(const HermitianMatrix &m, const QuantumConfig &cfg,
                                     double ztol = kDefaultZeroTol, bool refine = false) {
    HybridVerdict out;
    out.classical = classify_classical(m.leading_block(), ztol);
    if (out.classical.conclusive()) {
        out.cls = out.classical.cls;
        out.stage = Stage::Classical;
        return out;
    }
    const HermitianMatrix padded = pad_to_power_of_two(m);
    const SpectralBounds bounds =
        padded.dim() == out.classical.bounds.dim ? out.classical.bounds : eigenvalue_bounds(padded);
    out.stage = Stage::Quantum;
    out.quantum = classify_quantum(padded, bounds, cfg);
    out.cls = out.quantum->cls;
    if (refine && out.cls == DefinitenessClass::PositiveSemiDefinite) {
        try {
            out.cls = refine_positive(padded, cfg);
            out.refined = true;
        } catch (const Error &e) {
            if (e.code() != ErrorCode::InconsistentRefinement) {
                throw;
            }
            out.refinement_inconsistent = true;
        }
    }
    return out;
}

inline HybridVerdict classify_hybrid(const CMatrix &raw, const QuantumConfig &cfg,
                                     double atol = kDefaultHermitianTol,
                                     double ztol = kDefaultZeroTol, bool refine = false) {
    return classify_hybrid(validate_hermitian(raw, atol), cfg, ztol, refine);
}

struct ScoredRecord {
    CanonicalClass truth;
    DefinitenessClass predicted;
    Stage stage;
};

/// Column 3 of the confusion matrix counts Unclassified predictions.
struct Metrics {
    std::array<std::array<std::size_t, 4>, 3> confusion{};
    std::array<std::size_t, 3> support{};
    std::array<double, 3> recall{};
    std::array<double, 3> classical_coverage{};
    double accuracy = 0.0;
    std::size_t total = 0;
};

/// Recall and coverage of a class with no records are reported as 0.
inline Metrics score(std::span<const ScoredRecord> records) {
    if (records.empty()) {
        throw Error(ErrorCode::InvalidArgument, "cannot score an empty record set");
    }
    Metrics out;
    std::array<std::size_t, 3> classical{};
    for (const auto &rec : records) {
        const auto t = static_cast<std::size_t>(rec.truth);
        const auto pred = canonical(rec.predicted);
        const std::size_t col = pred ? static_cast<std::size_t>(*pred) : 3;
        ++out.confusion[t][col];
        ++out.support[t];
        if (rec.stage == Stage::Classical && pred) {
            ++classical[t];
        }
    }
    out.total = records.size();
    std::size_t correct = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        correct += out.confusion[c][c];
        if (out.support[c] > 0) {
            const auto s = static_cast<double>(out.support[c]);
            out.recall[c] = static_cast<double>(out.confusion[c][c]) / s;
            out.classical_coverage[c] = static_cast<double>(classical[c]) / s;
        }
    }
    out.accuracy = static_cast<double>(correct) / static_cast<double>(out.total);
    return out;
}

} // namespace qdef
