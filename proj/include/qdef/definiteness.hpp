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
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace qdef {

enum class DefinitenessClass {
    PositiveDefinite,
    PositiveSemiDefinite,
    NegativeDefinite,
    NegativeSemiDefinite,
    Indefinite,
    Unclassified,
};

/// The three labels the experiments score against.
enum class CanonicalClass { Positive = 0, Negative = 1, Indefinite = 2 };

inline constexpr std::array<CanonicalClass, 3> kCanonicalClasses = {
    CanonicalClass::Positive, CanonicalClass::Negative, CanonicalClass::Indefinite};

/// Projects a verdict onto the scoring labels. NegativeSemiDefinite lands on
/// Negative; Unclassified has no projection.
inline std::optional<CanonicalClass> canonical(DefinitenessClass c) {
    switch (c) {
    case DefinitenessClass::PositiveDefinite:
    case DefinitenessClass::PositiveSemiDefinite:
        return CanonicalClass::Positive;
    case DefinitenessClass::NegativeDefinite:
    case DefinitenessClass::NegativeSemiDefinite:
        return CanonicalClass::Negative;
    case DefinitenessClass::Indefinite:
        return CanonicalClass::Indefinite;
    case DefinitenessClass::Unclassified:
        return std::nullopt;
    }
    return std::nullopt;
}

/// Sign flip of the spectrum, i.e. the class of -M given the class of M.
inline DefinitenessClass negate(DefinitenessClass c) {
    switch (c) {
    case DefinitenessClass::PositiveDefinite:
        return DefinitenessClass::NegativeDefinite;
    case DefinitenessClass::PositiveSemiDefinite:
        return DefinitenessClass::NegativeSemiDefinite;
    case DefinitenessClass::NegativeDefinite:
        return DefinitenessClass::PositiveDefinite;
    case DefinitenessClass::NegativeSemiDefinite:
        return DefinitenessClass::PositiveSemiDefinite;
    default:
        return c;
    }
}

inline std::string_view to_string(DefinitenessClass c) {
    switch (c) {
    case DefinitenessClass::PositiveDefinite:
        return "PositiveDefinite";
    case DefinitenessClass::PositiveSemiDefinite:
        return "PositiveSemiDefinite";
    case DefinitenessClass::NegativeDefinite:
        return "NegativeDefinite";
    case DefinitenessClass::NegativeSemiDefinite:
        return "NegativeSemiDefinite";
    case DefinitenessClass::Indefinite:
        return "Indefinite";
    case DefinitenessClass::Unclassified:
        return "Unclassified";
    }
    return "Unclassified";
}

inline std::string_view to_string(CanonicalClass c) {
    switch (c) {
    case CanonicalClass::Positive:
        return "Positive";
    case CanonicalClass::Negative:
        return "Negative";
    case CanonicalClass::Indefinite:
        return "Indefinite";
    }
    return "Indefinite";
}

inline DefinitenessClass definiteness_from_string(std::string_view s) {
    for (auto c : {DefinitenessClass::PositiveDefinite, DefinitenessClass::PositiveSemiDefinite,
                   DefinitenessClass::NegativeDefinite, DefinitenessClass::NegativeSemiDefinite,
                   DefinitenessClass::Indefinite, DefinitenessClass::Unclassified}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw Error(ErrorCode::ParseError, "unknown definiteness class '" + std::string(s) + "'");
}

/// Accepts the canonical names plus the lowercase aliases used on the command line.
inline CanonicalClass canonical_from_string(std::string_view s) {
    if (s == "Positive" || s == "positive" || s == "pos") {
        return CanonicalClass::Positive;
    }
    if (s == "Negative" || s == "negative" || s == "neg") {
        return CanonicalClass::Negative;
    }
    if (s == "Indefinite" || s == "indefinite" || s == "indef") {
        return CanonicalClass::Indefinite;
    }
    throw Error(ErrorCode::ParseError, "unknown class label '" + std::string(s) + "'");
}

} // namespace qdef
