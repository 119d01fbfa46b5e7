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
 * JSON encodings shared by the tools:
 *
 *   matrix:  {"dim": d, "entries": [[[re, im], ...], ...], "label": "...", "id": k}
 *   sample:  a JSON array of matrix objects
 *   config:  the QuantumConfig fields by name
 *   verdict: HybridVerdict / QuantumVerdict with their bounds
 */

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "classifier.hpp"
#include "error.hpp"
#include "experiment.hpp"
#include "matrix.hpp"
#include "pipeline.hpp"
#include "sample.hpp"

namespace qdef {

using json = nlohmann::json;

struct MatrixRecord {
    CMatrix entries;
    std::optional<std::string> label;
    std::optional<std::size_t> id;
};

inline json matrix_to_json(const CMatrix &m, const std::optional<std::string> &label = std::nullopt,
                           const std::optional<std::size_t> &id = std::nullopt) {
    json j;
    j["dim"] = m.dim();
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.dim(); ++k) {
            row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    if (label) {
        j["label"] = *label;
    }
    if (id) {
        j["id"] = *id;
    }
    return j;
}

/// Entries may be [re, im] pairs or bare reals.
inline MatrixRecord matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
        throw Error(ErrorCode::ParseError, "matrix object needs an 'entries' array");
    }
    const json &rows = j["entries"];
    std::vector<std::vector<Complex>> nested;
    nested.reserve(rows.size());
    for (const auto &row : rows) {
        if (!row.is_array()) {
            throw Error(ErrorCode::ParseError, "matrix rows must be arrays");
        }
        std::vector<Complex> r;
        for (const auto &z : row) {
            if (z.is_number()) {
                r.emplace_back(z.get<double>(), 0.0);
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                r.emplace_back(z[0].get<double>(), z[1].get<double>());
            } else {
                throw Error(ErrorCode::ParseError, "matrix entries must be [re, im] or numbers");
            }
        }
        nested.push_back(std::move(r));
    }
    MatrixRecord out{CMatrix::from_rows(nested), std::nullopt, std::nullopt};
    if (j.contains("dim")) {
        if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() != out.entries.dim()) {
            throw Error(ErrorCode::ParseError, "'dim' does not match the entries");
        }
    }
    if (j.contains("label") && j["label"].is_string()) {
        out.label = j["label"].get<std::string>();
    }
    if (j.contains("id") && j["id"].is_number_unsigned()) {
        out.id = j["id"].get<std::size_t>();
    }
    return out;
}

inline json parse_json_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

/// A single matrix object or an array of them.
inline std::vector<MatrixRecord> parse_matrix_document(const std::string &text) {
    const json doc = parse_json_text(text);
    std::vector<MatrixRecord> out;
    if (doc.is_array()) {
        for (const auto &item : doc) {
            out.push_back(matrix_from_json(item));
        }
    } else {
        out.push_back(matrix_from_json(doc));
    }
    return out;
}

/// One matrix object per line inside a JSON array; LF line endings.
inline std::string sample_to_json_text(const std::vector<LabeledMatrix> &sample) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto &lm = sample[i];
        out += matrix_to_json(lm.matrix.entries(), std::string(to_string(lm.label)), lm.id).dump();
        out += i + 1 < sample.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

/// Loads a labeled sample; every entry must carry a canonical label.
inline std::vector<LabeledMatrix> sample_from_json_text(const std::string &text,
                                                        double atol = kDefaultHermitianTol) {
    std::vector<LabeledMatrix> out;
    for (auto &rec : parse_matrix_document(text)) {
        if (!rec.label) {
            throw Error(ErrorCode::ParseError, "sample entry without a 'label'");
        }
        const std::size_t id = rec.id.value_or(out.size());
        out.push_back(LabeledMatrix{id, validate_hermitian(rec.entries, atol),
                                    canonical_from_string(*rec.label)});
    }
    return out;
}

inline json to_json(const QuantumConfig &c) {
    return json{{"n", c.n},
                {"trials", c.trials},
                {"shots", c.shots},
                {"delta", c.delta},
                {"guard", c.guard},
                {"init", std::string(to_string(c.init))},
                {"seed", c.seed}};
}

/// Missing fields keep their defaults.
inline QuantumConfig config_from_json(const json &j) {
    QuantumConfig c;
    try {
        c.n = j.value("n", c.n);
        c.trials = j.value("trials", c.trials);
        c.shots = j.value("shots", c.shots);
        c.delta = j.value("delta", c.delta);
        c.guard = j.value("guard", c.guard);
        c.seed = j.value("seed", c.seed);
        if (j.contains("init")) {
            c.init = init_strategy_from_string(j["init"].get<std::string>());
        }
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    c.validate();
    return c;
}

inline json to_json(const SpectralBounds &b) {
    return json{{"dim", b.dim},         {"r", b.r},
                {"s", b.s},             {"low_min", b.low_min},
                {"low_max", b.low_max}, {"high_min", b.high_min},
                {"high_max", b.high_max}};
}

inline json to_json(const ClassicalVerdict &v) {
    return json{{"class", std::string(to_string(v.cls))},
                {"candidate", v.candidate()},
                {"bounds", to_json(v.bounds)}};
}

inline json to_json(const QuantumVerdict &v) {
    return json{{"class", std::string(to_string(v.cls))},
                {"mean_sigma", v.mean_sigma},
                {"per_trial_sigma", v.per_trial_sigma},
                {"per_trial_p1", v.per_trial_p1},
                {"scale", v.scale}};
}

inline json to_json(const HybridVerdict &v) {
    json j{{"class", std::string(to_string(v.cls))},
           {"stage", std::string(to_string(v.stage))},
           {"classical", to_json(v.classical)},
           {"quantum", v.quantum ? to_json(*v.quantum) : json(nullptr)}};
    if (v.refined || v.refinement_inconsistent) {
        j["refined"] = v.refined;
        j["refinement_inconsistent"] = v.refinement_inconsistent;
    }
    return j;
}

/// One JSON-lines object per record.
inline json to_json(const VerdictRecord &r) {
    return json{{"id", r.id},
                {"mode", std::string(to_string(r.mode))},
                {"true_class", std::string(to_string(r.truth))},
                {"predicted_class", std::string(to_string(r.predicted))},
                {"stage", std::string(to_string(r.stage))},
                {"mean_sigma", r.mean_sigma ? json(*r.mean_sigma) : json(nullptr)},
                {"per_trial_sigma", r.per_trial_sigma},
                {"n", r.n},
                {"delta", r.delta},
                {"seed", r.seed}};
}

inline std::string records_to_jsonl(const std::vector<VerdictRecord> &records) {
    std::string out;
    for (const auto &r : records) {
        out += to_json(r).dump();
        out += '\n';
    }
    return out;
}

} // namespace qdef
