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

#include "qdef/io.hpp"

#include <functional>

#include "gtest/gtest.h"

using namespace qdef;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(matrix_json, round_trip) {
    const auto m = CMatrix::from_rows({{1.0, Complex(2.0, 1.0)}, {Complex(2.0, -1.0), 3.0}});
    const auto j = matrix_to_json(m, std::string("Positive"), 5);
    EXPECT_EQ(j["dim"], 2);
    EXPECT_EQ(j["entries"][0][1][1], 1.0);
    const auto rec = matrix_from_json(j);
    EXPECT_TRUE(rec.entries == m);
    EXPECT_EQ(rec.label, "Positive");
    EXPECT_EQ(rec.id, 5u);
}

TEST(matrix_json, bare_reals_and_no_dim) {
    const auto recs = parse_matrix_document(R"({"entries": [[1, 0.5], [0.5, 2]]})");
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].entries(0, 1), Complex(0.5));
    EXPECT_FALSE(recs[0].label.has_value());
}

TEST(matrix_json, errors) {
    EXPECT_EQ(code_of([] { parse_matrix_document("{not json"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_matrix_document(R"({"dim": 2})"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_matrix_document(R"({"dim": 3, "entries": [[1]]})"); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_matrix_document(R"({"entries": [[[1, 2, 3]]]})"); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_matrix_document(R"({"entries": [[1, 2], [3]]})"); }),
              ErrorCode::NonSquare);
    EXPECT_EQ(code_of([] { read_text_file("/nonexistent/qdef/file.json"); }), ErrorCode::ParseError);
}

TEST(sample_json, round_trip_is_exact) {
    const auto sample = generate_balanced_sample(4, 3, 21);
    const auto text = sample_to_json_text(sample);
    EXPECT_EQ(text.front(), '[');
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const auto back = sample_from_json_text(text);
    ASSERT_EQ(back.size(), sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        EXPECT_EQ(back[i].id, sample[i].id);
        EXPECT_EQ(back[i].label, sample[i].label);
        EXPECT_TRUE(back[i].matrix.entries() == sample[i].matrix.entries());
    }
    EXPECT_EQ(sample_to_json_text(back), text);
}

TEST(sample_json, label_required_and_checked) {
    EXPECT_EQ(code_of([] { sample_from_json_text(R"([{"entries": [[1]]}])"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { sample_from_json_text(R"([{"entries": [[1]], "label": "Weird"}])"); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] {
                  sample_from_json_text(R"([{"entries": [[0, [0, 1]], [[0, 1], 0]], "label": "Positive"}])");
              }),
              ErrorCode::NotHermitian);
}

TEST(config_json, round_trip_and_defaults) {
    QuantumConfig c;
    c.n = 9;
    c.delta = 0.9;
    c.init = InitStrategy::FixedTriple;
    c.seed = 12345678901234ULL;
    const auto back = config_from_json(to_json(c));
    EXPECT_EQ(back.n, 9u);
    EXPECT_EQ(back.delta, 0.9);
    EXPECT_EQ(back.init, InitStrategy::FixedTriple);
    EXPECT_EQ(back.seed, c.seed);
    const auto defaults = config_from_json(json::object());
    EXPECT_EQ(defaults.n, 14u);
    EXPECT_EQ(code_of([] { config_from_json(json{{"n", "many"}}); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { config_from_json(json{{"delta", 2.0}}); }), ErrorCode::InvalidArgument);
}

TEST(verdict_json, hybrid_fields) {
    QuantumConfig cfg;
    cfg.n = 6;
    const auto classical = to_json(classify_hybrid(CMatrix::identity(2), cfg));
    EXPECT_EQ(classical["class"], "PositiveDefinite");
    EXPECT_EQ(classical["stage"], "Classical");
    EXPECT_TRUE(classical["quantum"].is_null());
    EXPECT_EQ(classical["classical"]["bounds"]["r"], 1.0);

    const auto m = HermitianMatrix::diagonal(std::vector<double>{0.05, 0.1, 0.7, 0.9});
    const auto quantum = to_json(classify_hybrid(m, cfg));
    EXPECT_EQ(quantum["stage"], "Quantum");
    EXPECT_EQ(quantum["quantum"]["per_trial_sigma"].size(), 5u);
    EXPECT_FALSE(quantum.contains("refined"));
}

TEST(verdict_json, records_jsonl) {
    VerdictRecord r;
    r.id = 3;
    r.mode = Mode::Quantum;
    r.truth = CanonicalClass::Negative;
    r.predicted = DefinitenessClass::NegativeDefinite;
    r.stage = Stage::Quantum;
    r.mean_sigma = -0.98;
    r.per_trial_sigma = {-1.0, -0.96};
    r.n = 14;
    r.delta = 0.98;
    r.seed = 77;
    VerdictRecord classical;
    const auto text = records_to_jsonl({r, classical});
    const auto eol = text.find('\n');
    ASSERT_NE(eol, std::string::npos);
    const auto j = json::parse(text.substr(0, eol));
    EXPECT_EQ(j["id"], 3);
    EXPECT_EQ(j["mode"], "quantum");
    EXPECT_EQ(j["true_class"], "Negative");
    EXPECT_EQ(j["predicted_class"], "NegativeDefinite");
    EXPECT_EQ(j["stage"], "Quantum");
    EXPECT_EQ(j["mean_sigma"], -0.98);
    EXPECT_EQ(j["per_trial_sigma"].size(), 2u);
    EXPECT_EQ(j["seed"], 77);
    const auto k = json::parse(text.substr(eol + 1));
    EXPECT_TRUE(k["mean_sigma"].is_null());
    EXPECT_EQ(text.back(), '\n');
}
