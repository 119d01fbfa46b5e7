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

// qdef command line: generate, classify, benchmark, sweep-trials.
//
// Every flag can also be set through an environment variable QDEF_<FLAG>
// (upper case, dashes as underscores), e.g. QDEF_N=4,6 or QDEF_SEED=7.
// Exit codes: 0 ok, 1 usage / IO, 2 not Hermitian, 3 parse or shape error,
// 4 any other classification error.

#include <cctype>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdef/qdef.hpp"

namespace {

using namespace qdef;

constexpr int kExitUsage = 1;
constexpr int kExitNotHermitian = 2;
constexpr int kExitParse = 3;
constexpr int kExitOther = 4;

std::string env_name(const std::string &flag) {
    std::string out = "QDEF_";
    for (char c : flag) {
        out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

template <typename T> CLI::Option *flag(CLI::App *app, const std::string &name, T &value, const std::string &help) {
    return app->add_option("--" + name, value, help)->envname(env_name(name))->capture_default_str();
}

template <typename T>
CLI::Option *list_flag(CLI::App *app, const std::string &name, std::vector<T> &value, const std::string &help) {
    return flag(app, name, value, help)->delimiter(',');
}

// Enum-valued flags are taken as strings and converted after parsing.
const std::vector<std::string> kInitNames = {"random", "triple"};
const std::vector<std::string> kModeNames = {"hybrid", "quantum", "classical"};
const std::vector<std::string> kPlacementNames = {"random", "smallest"};

ZeroPlacement placement_from_string(const std::string &s) {
    return s == "smallest" ? ZeroPlacement::Smallest : ZeroPlacement::Random;
}

template <typename T, typename F> std::vector<T> convert_all(const std::vector<std::string> &names, F &&f) {
    std::vector<T> out;
    for (const auto &n : names) {
        out.push_back(f(n));
    }
    return out;
}

struct SampleArgs {
    std::size_t count = 600;
    std::size_t dim = 4;
    double zero_fraction = 0.05;
    std::string placement = "random";
    std::uint64_t seed = 42;
    double ztol = kDefaultZeroTol;
};

void add_sample_flags(CLI::App *app, SampleArgs &a) {
    flag(app, "count", a.count, "Matrices per class")->check(CLI::PositiveNumber);
    flag(app, "dim", a.dim, "Matrix dimension")->check(CLI::Range(1, 64));
    flag(app, "zero-fraction", a.zero_fraction, "Fraction of positive matrices with a zero eigenvalue")
        ->check(CLI::Range(0.0, 1.0));
    flag(app, "zero-placement", a.placement, "Which eigenvalue is forced to zero")
        ->check(CLI::IsMember(kPlacementNames));
    flag(app, "seed", a.seed, "Random seed");
}

std::vector<LabeledMatrix> make_sample(const SampleArgs &a) {
    SampleOptions opts;
    opts.zero_fraction = a.zero_fraction;
    opts.zero_placement = placement_from_string(a.placement);
    opts.ztol = a.ztol;
    return generate_balanced_sample(a.dim, a.count, a.seed, opts);
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        write_text_file(path, text);
    }
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
    SampleArgs sample;
    std::string out;
};

int run_generate(const GenerateArgs &a) {
    const auto sample = make_sample(a.sample);
    emit(a.out, sample_to_json_text(sample));
    std::fprintf(stderr, "generated %zu matrices (dim %zu, seed %llu)\n", sample.size(), a.sample.dim,
                 static_cast<unsigned long long>(a.sample.seed));
    return 0;
}

struct ClassifyArgs {
    std::string input;
    QuantumConfig cfg;
    std::string init = "random";
    std::string mode_name = "hybrid";
    Mode mode = Mode::Hybrid;
    bool refine = false;
    double atol = kDefaultHermitianTol;
    double ztol = kDefaultZeroTol;
    std::string out;
};

json classify_one(const CMatrix &raw, const ClassifyArgs &a) {
    json j;
    const HermitianMatrix m = validate_hermitian(raw, a.atol);
    switch (a.mode) {
    case Mode::Hybrid:
        j = to_json(classify_hybrid(m, a.cfg, a.ztol, a.refine));
        break;
    case Mode::Classical: {
        const ClassicalVerdict v = classify_classical(m, a.ztol);
        j = json{{"class", std::string(to_string(v.cls))},
                 {"stage", "Classical"},
                 {"classical", to_json(v)},
                 {"quantum", nullptr}};
        break;
    }
    case Mode::Quantum: {
        const HermitianMatrix padded = pad_to_power_of_two(m);
        const QuantumVerdict q = classify_quantum(padded, eigenvalue_bounds(padded), a.cfg);
        j = json{{"class", std::string(to_string(q.cls))},
                 {"stage", "Quantum"},
                 {"classical", to_json(classify_classical(m, a.ztol))},
                 {"quantum", to_json(q)}};
        break;
    }
    }
    j["mode"] = std::string(to_string(a.mode));
    j["dim"] = m.dim();
    j["truth"] = std::string(to_string(ground_truth_class(m, a.ztol)));
    return j;
}

int run_classify(const ClassifyArgs &a) {
    a.cfg.validate();
    const std::string text = a.input == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                            : read_text_file(a.input);
    const json doc = parse_json_text(text);
    std::string out;
    if (doc.is_array()) {
        for (const auto &rec : parse_matrix_document(text)) {
            out += classify_one(rec.entries, a).dump() + "\n";
        }
    } else {
        out = classify_one(matrix_from_json(doc).entries, a).dump(2) + "\n";
    }
    emit(a.out, out);
    return 0;
}

struct BenchmarkArgs {
    SampleArgs sample;
    std::string sample_path;
    std::vector<unsigned> n = {4, 6, 8, 10, 12, 14};
    std::vector<double> delta = kDefaultDeltaGrid;
    std::vector<std::string> modes = {"hybrid", "quantum"};
    std::vector<std::string> inits = {"random"};
    unsigned trials = 5;
    unsigned shots = 100;
    double guard = 1.0;
    unsigned workers = 1;
    double atol = kDefaultHermitianTol;
    std::string out;
    std::string records;
};

ExperimentPlan plan_from(const BenchmarkArgs &a) {
    ExperimentPlan plan;
    plan.count_per_class = a.sample.count;
    plan.dim = a.sample.dim;
    plan.zero_fraction = a.sample.zero_fraction;
    plan.zero_placement = placement_from_string(a.sample.placement);
    plan.seed = a.sample.seed;
    plan.n_grid = a.n;
    plan.delta_grid = a.delta;
    plan.modes = convert_all<Mode>(a.modes, mode_from_string);
    plan.inits = convert_all<InitStrategy>(a.inits, init_strategy_from_string);
    plan.trials = a.trials;
    plan.shots = a.shots;
    plan.guard = a.guard;
    plan.ztol = a.sample.ztol;
    plan.workers = a.workers;
    return plan;
}

std::vector<LabeledMatrix> load_or_generate(const BenchmarkArgs &a) {
    if (!a.sample_path.empty()) {
        return sample_from_json_text(read_text_file(a.sample_path), a.atol);
    }
    return make_sample(a.sample);
}

int run_benchmark_cmd(const BenchmarkArgs &a) {
    const ExperimentPlan plan = plan_from(a);
    plan.validate();
    const auto sample = load_or_generate(a);
    const BenchmarkOutput out = run_benchmark(sample, plan, !a.records.empty());
    emit(a.out, to_csv(out.table));
    if (!a.records.empty()) {
        write_text_file(a.records, records_to_jsonl(out.records));
    }
    std::fprintf(stderr, "benchmark: %zu matrices, %zu rows\n", sample.size(), out.table.rows.size());
    return 0;
}

int run_sweep_cmd(const BenchmarkArgs &a) {
    const ExperimentPlan plan = plan_from(a);
    plan.validate();
    const auto sample = load_or_generate(a);
    const ResultTable table = run_trials_sweep(sample, plan);
    emit(a.out, to_csv(table, kSweepColumns));
    std::fprintf(stderr, "sweep-trials: %zu matrices, %zu rows\n", sample.size(), table.rows.size());
    return 0;
}

void add_quantum_flags(CLI::App *app, unsigned &trials, unsigned &shots, double &guard) {
    flag(app, "trials", trials, "Initial vectors per matrix")->check(CLI::PositiveNumber);
    flag(app, "shots", shots, "Measurements per trial")->check(CLI::PositiveNumber);
    flag(app, "guard", guard, "Safety factor (>= 1) on the scale constant")->check(CLI::Range(1.0, 1e6));
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hermitian definiteness classification by trace bounds and phase estimation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qdef 0.1.0");

    GenerateArgs gen;
    auto *generate = app.add_subcommand("generate", "Write a labeled random sample as JSON");
    add_sample_flags(generate, gen.sample);
    flag(generate, "out", gen.out, "Output path (stdout if empty)");

    ClassifyArgs cls;
    auto *classify = app.add_subcommand("classify", "Classify the matrix (or array of matrices) in a JSON file");
    classify->add_option("input", cls.input, "Matrix JSON file, '-' for stdin")->required();
    flag(classify, "n", cls.cfg.n, "Ancilla qubits")->check(CLI::Range(1, 24));
    flag(classify, "delta", cls.cfg.delta, "Decision threshold on mean sigma_z")->check(CLI::Range(0.0, 1.0));
    add_quantum_flags(classify, cls.cfg.trials, cls.cfg.shots, cls.cfg.guard);
    flag(classify, "seed", cls.cfg.seed, "Random seed for initial vectors and shots");
    flag(classify, "init", cls.init, "Initial vectors: random or triple")->check(CLI::IsMember(kInitNames));
    flag(classify, "mode", cls.mode_name, "hybrid, quantum or classical")->check(CLI::IsMember(kModeNames));
    classify->add_flag("--refine", cls.refine, "Resolve PD vs PSD by re-running on -M")->envname("QDEF_REFINE");
    flag(classify, "atol", cls.atol, "Relative Hermiticity tolerance");
    flag(classify, "ztol", cls.ztol, "Zero-eigenvalue tolerance");
    flag(classify, "out", cls.out, "Output path (stdout if empty)");

    BenchmarkArgs bench;
    auto *benchmark = app.add_subcommand("benchmark", "Recall/accuracy table over the (n, delta) grid");
    BenchmarkArgs sweep;
    sweep.n = {14};
    sweep.delta = {0.98};
    sweep.modes = {"quantum"};
    auto *sweep_trials = app.add_subcommand("sweep-trials", "Recall versus number of trials");
    for (auto [cmd, args] : {std::pair{benchmark, &bench}, std::pair{sweep_trials, &sweep}}) {
        add_sample_flags(cmd, args->sample);
        flag(cmd, "sample", args->sample_path, "Labeled sample JSON (generated inline if empty)");
        list_flag(cmd, "n", args->n, "Ancilla qubit grid")->check(CLI::Range(1, 24));
        list_flag(cmd, "delta", args->delta, "Threshold grid")->check(CLI::Range(0.0, 1.0));
        list_flag(cmd, "mode", args->modes, "Modes to score")->check(CLI::IsMember(kModeNames));
        list_flag(cmd, "init", args->inits, "Initial vector strategies")->check(CLI::IsMember(kInitNames));
        add_quantum_flags(cmd, args->trials, args->shots, args->guard);
        flag(cmd, "workers", args->workers, "Worker threads")->check(CLI::PositiveNumber);
        flag(cmd, "atol", args->atol, "Relative Hermiticity tolerance for --sample");
        flag(cmd, "ztol", args->sample.ztol, "Zero-eigenvalue tolerance");
        flag(cmd, "out", args->out, "CSV output path (stdout if empty)");
    }
    flag(benchmark, "records", bench.records, "Per-matrix JSON lines output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            return run_generate(gen);
        }
        if (classify->parsed()) {
            cls.cfg.init = init_strategy_from_string(cls.init);
            cls.mode = mode_from_string(cls.mode_name);
            return run_classify(cls);
        }
        if (benchmark->parsed()) {
            return run_benchmark_cmd(bench);
        }
        return run_sweep_cmd(sweep);
    } catch (const Error &e) {
        std::fprintf(stderr, "qdef: %s\n", e.what());
        switch (e.code()) {
        case ErrorCode::NotHermitian:
            return kExitNotHermitian;
        case ErrorCode::ParseError:
        case ErrorCode::NonSquare:
            return kExitParse;
        case ErrorCode::InvalidArgument:
            return kExitUsage;
        default:
            return kExitOther;
        }
    } catch (const std::exception &e) {
        std::fprintf(stderr, "qdef: %s\n", e.what());
        return kExitUsage;
    }
}
