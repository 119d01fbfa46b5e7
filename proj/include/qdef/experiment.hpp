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
 * Recall / accuracy sweeps over (n, delta, trials) on a labeled sample.
 *
 * Each matrix is evaluated once per ancilla size n with its own seed derived
 * from (plan seed, matrix id); every delta, every mode and every trial
 * prefix is then scored from that single evaluation. Results therefore do
 * not depend on the worker count.
 */

#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "classifier.hpp"
#include "definiteness.hpp"
#include "error.hpp"
#include "hermitian.hpp"
#include "pipeline.hpp"
#include "rng.hpp"
#include "sample.hpp"

namespace qdef {

enum class Mode { Hybrid, Quantum, Classical };

inline std::string_view to_string(Mode m) {
    switch (m) {
    case Mode::Hybrid:
        return "hybrid";
    case Mode::Quantum:
        return "quantum";
    case Mode::Classical:
        return "classical";
    }
    return "hybrid";
}

inline Mode mode_from_string(std::string_view s) {
    if (s == "hybrid") {
        return Mode::Hybrid;
    }
    if (s == "quantum") {
        return Mode::Quantum;
    }
    if (s == "classical") {
        return Mode::Classical;
    }
    throw Error(ErrorCode::ParseError, "unknown mode '" + std::string(s) + "'");
}

inline const std::vector<double> kDefaultDeltaGrid = {0.80, 0.85, 0.90, 0.95, 0.96,
                                                      0.97, 0.98, 0.99, 1.0};

struct ExperimentPlan {
    // sample
    std::size_t count_per_class = 600;
    std::size_t dim = 4;
    double zero_fraction = 0.05;
    ZeroPlacement zero_placement = ZeroPlacement::Random;
    std::uint64_t seed = 42;
    // grids
    std::vector<unsigned> n_grid = {4, 6, 8, 10, 12, 14};
    std::vector<double> delta_grid = kDefaultDeltaGrid;
    std::vector<Mode> modes = {Mode::Hybrid, Mode::Quantum};
    std::vector<InitStrategy> inits = {InitStrategy::RandomComplex};
    // circuit
    unsigned trials = 5;
    unsigned shots = 100;
    double guard = 1.0;
    double ztol = kDefaultZeroTol;
    // execution
    unsigned workers = 1;

    void validate() const {
        if (count_per_class < 1) {
            throw Error(ErrorCode::InvalidArgument, "count per class must be >= 1");
        }
        if (n_grid.empty() || delta_grid.empty() || modes.empty() || inits.empty()) {
            throw Error(ErrorCode::InvalidArgument, "experiment grids must be nonempty");
        }
        for (double d : delta_grid) {
            if (!(d >= 0.0 && d <= 1.0)) {
                throw Error(ErrorCode::InvalidArgument, "delta values must lie in [0, 1]");
            }
        }
        QuantumConfig probe = config(n_grid.front(), 0);
        for (unsigned n : n_grid) {
            probe.n = n;
            probe.validate();
        }
    }

    QuantumConfig config(unsigned n, std::uint64_t matrix_seed,
                         InitStrategy init = InitStrategy::RandomComplex) const {
        QuantumConfig c;
        c.n = n;
        c.trials = trials;
        c.shots = shots;
        c.guard = guard;
        c.init = init;
        c.seed = matrix_seed;
        return c;
    }

    std::uint64_t matrix_seed(std::size_t id) const {
        return derive_seed(seed, StreamTag::Matrix, id);
    }
};

struct ResultRow {
    Mode mode = Mode::Hybrid;
    InitStrategy init = InitStrategy::RandomComplex;
    unsigned n = 0;
    double delta = 0.0;
    unsigned trials = 0;
    std::array<double, 3> recall{};
    double accuracy = 0.0;
    std::array<double, 3> coverage{};
    double seconds = 0.0;

    bool operator==(const ResultRow &) const = default;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    bool operator==(const ResultTable &) const = default;
};

struct VerdictRecord {
    std::size_t id = 0;
    Mode mode = Mode::Hybrid;
    CanonicalClass truth = CanonicalClass::Positive;
    DefinitenessClass predicted = DefinitenessClass::Unclassified;
    Stage stage = Stage::Classical;
    std::optional<double> mean_sigma;
    std::vector<double> per_trial_sigma;
    unsigned n = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
};

struct BenchmarkOutput {
    ResultTable table;
    std::vector<VerdictRecord> records;
};

/// Runs fn(i) for i in [0, count) on `workers` threads. The first exception
/// is rethrown after all workers finish.
template <typename Fn> void parallel_for(std::size_t count, unsigned workers, Fn &&fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(spawn);
    for (unsigned w = 0; w < spawn; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mu);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

namespace detail {

struct PreparedMatrix {
    ClassicalVerdict classical;
    HermitianMatrix padded;
    SpectralBounds padded_bounds;
};

inline std::vector<PreparedMatrix> prepare(const std::vector<LabeledMatrix> &sample, double ztol) {
    std::vector<PreparedMatrix> out;
    out.reserve(sample.size());
    for (const auto &lm : sample) {
        ClassicalVerdict cv = classify_classical(lm.matrix.leading_block(), ztol);
        HermitianMatrix padded = pad_to_power_of_two(lm.matrix);
        SpectralBounds pb = padded.dim() == cv.bounds.dim ? cv.bounds : eigenvalue_bounds(padded);
        out.push_back(PreparedMatrix{cv, std::move(padded), pb});
    }
    return out;
}

// Evaluates the quantum stage for every matrix that needs it.
inline std::vector<std::optional<QuantumVerdict>>
evaluate_quantum(const std::vector<LabeledMatrix> &sample, const std::vector<PreparedMatrix> &prep,
                 const ExperimentPlan &plan, unsigned n, InitStrategy init, bool all_matrices) {
    std::vector<std::optional<QuantumVerdict>> out(sample.size());
    parallel_for(sample.size(), plan.workers, [&](std::size_t i) {
        if (!all_matrices && prep[i].classical.conclusive()) {
            return;
        }
        out[i] = classify_quantum(prep[i].padded, prep[i].padded_bounds,
                                  plan.config(n, plan.matrix_seed(sample[i].id), init));
    });
    return out;
}

inline bool needs_all(const std::vector<Mode> &modes) {
    for (Mode m : modes) {
        if (m == Mode::Quantum) {
            return true;
        }
    }
    return false;
}

struct Prediction {
    DefinitenessClass cls;
    Stage stage;
};

inline Prediction predict(Mode mode, const PreparedMatrix &p, const std::optional<QuantumVerdict> &q,
                          double mean_sigma, double delta) {
    switch (mode) {
    case Mode::Classical:
        return {p.classical.cls, Stage::Classical};
    case Mode::Hybrid:
        if (p.classical.conclusive()) {
            return {p.classical.cls, Stage::Classical};
        }
        [[fallthrough]];
    case Mode::Quantum:
        if (q && q->scale == 0.0) {
            return {q->cls, Stage::Quantum}; // zero matrix short-circuit
        }
        return {decide_quantum(mean_sigma, delta), Stage::Quantum};
    }
    return {DefinitenessClass::Unclassified, Stage::Classical};
}

inline ResultRow make_row(Mode mode, InitStrategy init, unsigned n, double delta, unsigned trials,
                          const Metrics &m, double seconds) {
    ResultRow row;
    row.mode = mode;
    row.init = init;
    row.n = n;
    row.delta = delta;
    row.trials = trials;
    row.recall = m.recall;
    row.accuracy = m.accuracy;
    row.coverage = m.classical_coverage;
    row.seconds = seconds;
    return row;
}

} // namespace detail

/// For each n: one evaluation of the sample, then one row per (delta, mode).
/// Uses the first entry of plan.inits. Records are only collected when
/// `collect_records` is set.
inline BenchmarkOutput run_benchmark(const std::vector<LabeledMatrix> &sample, const ExperimentPlan &plan,
                                     bool collect_records = true) {
    plan.validate();
    if (sample.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty sample");
    }
    const auto prep = detail::prepare(sample, plan.ztol);
    const InitStrategy init = plan.inits.front();
    BenchmarkOutput out;

    for (unsigned n : plan.n_grid) {
        const auto start = std::chrono::steady_clock::now();
        const auto quantum = detail::evaluate_quantum(sample, prep, plan, n, init, detail::needs_all(plan.modes));
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        for (double delta : plan.delta_grid) {
            for (Mode mode : plan.modes) {
                std::vector<ScoredRecord> scored;
                scored.reserve(sample.size());
                for (std::size_t i = 0; i < sample.size(); ++i) {
                    const auto &q = quantum[i];
                    const double mean = q ? q->mean_sigma : 0.0;
                    const auto pred = detail::predict(mode, prep[i], q, mean, delta);
                    scored.push_back({sample[i].label, pred.cls, pred.stage});
                    if (collect_records) {
                        VerdictRecord rec;
                        rec.id = sample[i].id;
                        rec.mode = mode;
                        rec.truth = sample[i].label;
                        rec.predicted = pred.cls;
                        rec.stage = pred.stage;
                        if (pred.stage == Stage::Quantum && q) {
                            rec.mean_sigma = q->mean_sigma;
                            rec.per_trial_sigma = q->per_trial_sigma;
                        }
                        rec.n = n;
                        rec.delta = delta;
                        rec.seed = plan.matrix_seed(sample[i].id);
                        out.records.push_back(std::move(rec));
                    }
                }
                out.table.rows.push_back(
                    detail::make_row(mode, init, n, delta, plan.trials, score(scored), seconds));
            }
        }
    }
    return out;
}

/// Recall versus number of trials: every matrix is evaluated once with
/// plan.trials trials per (n, init); the row for t trials scores the mean
/// of the first t per-trial estimates, which is exactly what a t-trial run
/// with the same seed produces.
inline ResultTable run_trials_sweep(const std::vector<LabeledMatrix> &sample, const ExperimentPlan &plan) {
    plan.validate();
    if (sample.empty()) {
        throw Error(ErrorCode::InvalidArgument, "empty sample");
    }
    const auto prep = detail::prepare(sample, plan.ztol);
    ResultTable table;
    for (InitStrategy init : plan.inits) {
        for (unsigned n : plan.n_grid) {
            const auto start = std::chrono::steady_clock::now();
            const auto quantum =
                detail::evaluate_quantum(sample, prep, plan, n, init, detail::needs_all(plan.modes));
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            for (unsigned t = 1; t <= plan.trials; ++t) {
                for (double delta : plan.delta_grid) {
                    for (Mode mode : plan.modes) {
                        std::vector<ScoredRecord> scored;
                        scored.reserve(sample.size());
                        for (std::size_t i = 0; i < sample.size(); ++i) {
                            const auto &q = quantum[i];
                            double mean = 0.0;
                            if (q) {
                                mean = mean_of(std::span<const double>(q->per_trial_sigma).first(t));
                            }
                            const auto pred = detail::predict(mode, prep[i], q, mean, delta);
                            scored.push_back({sample[i].label, pred.cls, pred.stage});
                        }
                        table.rows.push_back(
                            detail::make_row(mode, init, n, delta, t, score(scored), seconds));
                    }
                }
            }
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// CSV

/// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::ParseError, "bad number '" + std::string(s) + "'");
    }
    return v;
}

inline unsigned parse_unsigned(std::string_view s) {
    unsigned v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::ParseError, "bad count '" + std::string(s) + "'");
    }
    return v;
}

inline const std::vector<std::string> kBenchmarkColumns = {
    "mode",         "n",            "delta",          "recall_pos", "recall_neg", "recall_indef",
    "accuracy",     "coverage_pos", "coverage_neg", "coverage_indef", "seconds"};

inline const std::vector<std::string> kSweepColumns = {
    "mode",     "init",         "n",            "delta",          "trials",
    "recall_pos", "recall_neg", "recall_indef", "accuracy",       "coverage_pos",
    "coverage_neg", "coverage_indef", "seconds"};

inline std::string row_field(const ResultRow &r, const std::string &col) {
    if (col == "mode") return std::string(to_string(r.mode));
    if (col == "init") return std::string(to_string(r.init));
    if (col == "n") return std::to_string(r.n);
    if (col == "delta") return format_double(r.delta);
    if (col == "trials") return std::to_string(r.trials);
    if (col == "recall_pos") return format_double(r.recall[0]);
    if (col == "recall_neg") return format_double(r.recall[1]);
    if (col == "recall_indef") return format_double(r.recall[2]);
    if (col == "accuracy") return format_double(r.accuracy);
    if (col == "coverage_pos") return format_double(r.coverage[0]);
    if (col == "coverage_neg") return format_double(r.coverage[1]);
    if (col == "coverage_indef") return format_double(r.coverage[2]);
    if (col == "seconds") return format_double(r.seconds);
    throw Error(ErrorCode::InvalidArgument, "unknown CSV column '" + col + "'");
}

inline void set_row_field(ResultRow &r, const std::string &col, std::string_view v) {
    if (col == "mode") r.mode = mode_from_string(v);
    else if (col == "init") r.init = init_strategy_from_string(v);
    else if (col == "n") r.n = parse_unsigned(v);
    else if (col == "delta") r.delta = parse_double(v);
    else if (col == "trials") r.trials = parse_unsigned(v);
    else if (col == "recall_pos") r.recall[0] = parse_double(v);
    else if (col == "recall_neg") r.recall[1] = parse_double(v);
    else if (col == "recall_indef") r.recall[2] = parse_double(v);
    else if (col == "accuracy") r.accuracy = parse_double(v);
    else if (col == "coverage_pos") r.coverage[0] = parse_double(v);
    else if (col == "coverage_neg") r.coverage[1] = parse_double(v);
    else if (col == "coverage_indef") r.coverage[2] = parse_double(v);
    else if (col == "seconds") r.seconds = parse_double(v);
    else throw Error(ErrorCode::ParseError, "unknown CSV column '" + col + "'");
}

/// Comma separated, header row, LF line endings.
inline std::string to_csv(const ResultTable &t, const std::vector<std::string> &columns = kBenchmarkColumns) {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out += columns[c];
        out += c + 1 < columns.size() ? "," : "\n";
    }
    for (const auto &row : t.rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out += row_field(row, columns[c]);
            out += c + 1 < columns.size() ? "," : "\n";
        }
    }
    return out;
}

/// Columns are matched by header name; absent columns keep their defaults.
inline ResultTable parse_csv(std::string_view text) {
    auto split = [](std::string_view line) {
        std::vector<std::string> cells;
        std::size_t pos = 0;
        for (;;) {
            const std::size_t comma = line.find(',', pos);
            cells.emplace_back(line.substr(pos, comma - pos));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        return cells;
    };
    ResultTable t;
    std::vector<std::string> header;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) {
            continue;
        }
        auto cells = split(line);
        if (header.empty()) {
            header = std::move(cells);
            continue;
        }
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::ParseError, "CSV row width differs from header");
        }
        ResultRow row;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            set_row_field(row, header[c], cells[c]);
        }
        t.rows.push_back(row);
    }
    return t;
}

} // namespace qdef
