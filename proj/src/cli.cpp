// Copyright 2026 The entcap Authors
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

#include "entcap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "entcap/circuit.hpp"
#include "entcap/dataset.hpp"
#include "entcap/metrics.hpp"
#include "entcap/model.hpp"
#include "entcap/simulator.hpp"
#include "entcap/training.hpp"
#include "json.hpp"

namespace entcap {

namespace fs = std::filesystem;
using nlohmann::json;

std::string file_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

namespace {

/// Output files are written under temporary names and renamed into place only
/// after every output of the run is complete.
class StagedOutputs {
   public:
    StagedOutputs() = default;
    StagedOutputs(const StagedOutputs&) = delete;
    StagedOutputs& operator=(const StagedOutputs&) = delete;

    ~StagedOutputs() {
        if (committed_) return;
        for (const auto& [tmp, final_path] : files_) {
            std::error_code ec;
            fs::remove(tmp, ec);
        }
    }

    fs::path stage(const fs::path& final_path) {
        fs::path tmp = final_path;
        tmp += ".partial";
        files_.emplace_back(tmp, final_path);
        return tmp;
    }

    void commit() {
        for (const auto& [tmp, final_path] : files_) fs::rename(tmp, final_path);
        committed_ = true;
    }

   private:
    std::vector<std::pair<fs::path, fs::path>> files_;
    bool committed_ = false;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream ss;
    ss << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return ss.str();
}

fs::path manifest_path(const fs::path& primary) {
    fs::path p = primary;
    p += ".manifest.json";
    return p;
}

/// Run manifest: everything needed to reproduce the primary output.
struct Manifest {
    std::string subcommand;
    json config = json::object();
    json inputs = json::array();
    json outputs = json::array();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void add_input(const fs::path& p) {
        inputs.push_back({{"path", p.string()}, {"fnv1a64", file_digest(p)}});
    }
    void add_output(const fs::path& p) { outputs.push_back(p.string()); }

    std::string dump() const {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json j = {{"tool", "entcap"},
                  {"version", kToolVersion},
                  {"subcommand", subcommand},
                  {"config", config},
                  {"inputs", inputs},
                  {"outputs", outputs},
                  {"wall_seconds", seconds}};
        return j.dump(2) + "\n";
    }
};

void commit_with_manifest(StagedOutputs& staged, Manifest& manifest, const fs::path& primary) {
    const fs::path mpath = manifest_path(primary);
    write_text(staged.stage(mpath), manifest.dump());
    staged.commit();
}

int common_qubit_count(std::span<const Record> records) {
    if (records.empty()) {
        throw std::invalid_argument("dataset has no records");
    }
    const int n = records.front().circuit.n_qubits();
    for (const Record& r : records) {
        if (r.circuit.n_qubits() != n) {
            throw std::invalid_argument("record " + r.id + " has " +
                                        std::to_string(r.circuit.n_qubits()) +
                                        " qubits, expected " + std::to_string(n));
        }
    }
    return n;
}

void check_against_checkpoint(std::span<const Record> records, const Checkpoint& ck) {
    for (const Record& r : records) {
        if (r.circuit.n_qubits() != ck.encoding.n_qubits) {
            throw std::invalid_argument(
                "dimension mismatch: record " + r.id + " has " +
                std::to_string(r.circuit.n_qubits()) + " qubits but the model was trained on " +
                std::to_string(ck.encoding.n_qubits));
        }
        if (r.circuit.size() > ck.encoding.seq_len) {
            throw std::invalid_argument("dimension mismatch: record " + r.id + " has " +
                                        std::to_string(r.circuit.size()) +
                                        " gates but the model accepts at most " +
                                        std::to_string(ck.encoding.seq_len));
        }
    }
}

std::vector<Eigen::MatrixXd> features_of(std::span<const Record> records,
                                         const EncodingConfig& encoding) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(records.size());
    for (const Record& r : records) out.push_back(circuit_features(r.circuit, encoding));
    return out;
}

// ---- generate ---------------------------------------------------------------

struct GenerateOptions {
    std::size_t count = 20000;
    int qubits = 6;
    std::size_t gates = kDefaultGateBudget;
    std::string strategy = "mixed";
    std::uint64_t seed = 0;
    fs::path out;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
    Manifest manifest;
    manifest.subcommand = "generate";
    manifest.config = {{"count", o.count},       {"qubits", o.qubits}, {"gates", o.gates},
                       {"strategy", o.strategy}, {"seed", o.seed},     {"rng", "mt19937_64"}};

    Rng rng(o.seed);
    std::vector<Circuit> circuits;
    circuits.reserve(o.count);
    if (o.strategy == "mixed") {
        circuits = generate_mixed(o.qubits, o.gates, o.count, rng);
    } else {
        for (std::size_t i = 0; i < o.count; ++i) {
            circuits.push_back(o.strategy == "gate" ? generate_gate_strategy(o.qubits, o.gates, rng)
                                                    : generate_layer_strategy(o.qubits, o.gates, rng));
        }
    }
    DatasetFile file;
    file.config = {{"generate", manifest.config}};
    std::size_t n_gate = 0;
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        if (circuits[i].strategy() == Strategy::GateStrategy) ++n_gate;
        file.records.push_back({record_id(i), std::move(circuits[i]), std::nullopt});
    }

    StagedOutputs staged;
    write_dataset(staged.stage(o.out), file);
    manifest.add_output(o.out);
    commit_with_manifest(staged, manifest, o.out);
    out << "generated " << file.records.size() << " circuits: gate " << n_gate << ", layer "
        << file.records.size() - n_gate << "\n";
    return 0;
}

// ---- label ------------------------------------------------------------------

struct LabelOptions {
    fs::path in;
    fs::path out;
    std::size_t samples = kDefaultSampleCount;
    std::uint64_t seed = 0;
    std::size_t parallel = 1;
};

int cmd_label(const LabelOptions& o, std::ostream& out, std::ostream& err) {
    Manifest manifest;
    manifest.subcommand = "label";
    manifest.config = {{"samples", o.samples},
                       {"seed", o.seed},
                       {"parallel", o.parallel},
                       {"angle_distribution", "uniform[0,2pi)"},
                       {"measure", "meyer-wallach/generalized-distance"}};
    manifest.add_input(o.in);

    DatasetFile file = read_dataset(o.in);
    const std::size_t total = file.records.size();
    const std::size_t every = std::max<std::size_t>(1, total / 20);
    label_records(file.records, o.samples, o.seed, o.parallel,
                  [&](std::size_t done, std::size_t n) {
                      if (done % every == 0 || done == n) {
                          err << "labeled " << done << "/" << n << "\n";
                      }
                  });
    file.config["label"] = {{"samples", o.samples}, {"seed", o.seed}};

    StagedOutputs staged;
    write_dataset(staged.stage(o.out), file);
    manifest.add_output(o.out);
    commit_with_manifest(staged, manifest, o.out);
    out << "labeled " << total << " records with " << o.samples << " samples each\n";
    return 0;
}

// ---- train ------------------------------------------------------------------

struct TrainOptions {
    fs::path data;
    fs::path out;
    fs::path log;
    fs::path test_out;
    double split = 0.9;
    std::size_t epochs = 200;
    std::size_t batch = 1000;
    bool batch_given = false;
    int hidden = 64;
    int fc = 64;
    double lr = 1e-3;
    double delta = 1.0;
    std::uint64_t seed = 0;
    std::string pooling = "concat";
    std::string placement = "diagonal";
    double scale = kDefaultFeatureScale;
    std::size_t max_gates = kDefaultGateBudget;
};

int cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
    Manifest manifest;
    manifest.subcommand = "train";
    manifest.add_input(o.data);

    const DatasetFile file = read_dataset(o.data);
    const int n_qubits = common_qubit_count(file.records);
    auto [train_records, test_records] = split(file.records, o.split, o.seed);

    std::size_t batch = o.batch;
    if (batch > train_records.size()) {
        if (o.batch_given) {
            throw CLI::ValidationError("--batch", "batch size " + std::to_string(batch) +
                                                      " exceeds the " +
                                                      std::to_string(train_records.size()) +
                                                      "-record training split");
        }
        batch = train_records.size();
    }

    EncodingConfig encoding;
    encoding.n_qubits = n_qubits;
    encoding.seq_len = o.max_gates;
    encoding.placement = parse_cnot_placement(o.placement);
    encoding.scale = o.scale;
    const TrainingSet train = make_training_set(train_records, encoding);
    const TrainingSet test = make_training_set(test_records, encoding);

    TrainConfig config;
    config.epochs = o.epochs;
    config.batch_size = batch;
    config.huber_delta = o.delta;
    config.lr = o.lr;
    config.hidden_dim = o.hidden;
    config.fc_dim = o.fc;
    config.pooling = parse_pooling(o.pooling);
    config.seed = o.seed;
    ModelShape shape;
    shape.input_dim = encoding.input_dim();
    shape.hidden_dim = o.hidden;
    shape.fc_dim = o.fc;
    shape.seq_len = static_cast<int>(o.max_gates);
    shape.pooling = config.pooling;

    manifest.config = {{"split", o.split},
                       {"train_records", train.size()},
                       {"test_records", test.size()},
                       {"epochs", o.epochs},
                       {"batch", batch},
                       {"hidden", o.hidden},
                       {"fc", o.fc},
                       {"lr", o.lr},
                       {"delta", o.delta},
                       {"seed", o.seed},
                       {"pooling", o.pooling},
                       {"cnot_placement", o.placement},
                       {"scale", o.scale},
                       {"max_gates", o.max_gates},
                       {"n_qubits", n_qubits},
                       {"checkpoint_policy", "lowest held-out loss"}};

    std::ostringstream log;
    log << "epoch\ttrain_loss\ttest_loss\ttrain_pc\ttest_pc\n";
    const FitResult result = fit(train, test, shape, config, [&](const EpochStats& s) {
        log << s.epoch << '\t' << format_double(s.train_loss) << '\t'
            << format_double(s.test_loss) << '\t' << format_double(s.train_pc) << '\t'
            << format_double(s.test_pc) << '\n';
        err << "epoch " << s.epoch << "/" << o.epochs << " train_loss " << s.train_loss
            << " test_loss " << s.test_loss << " test_pc " << s.test_pc << "\n";
    });
    manifest.config["best_epoch"] = result.best_epoch;

    StagedOutputs staged;
    save_checkpoint({result.best, encoding}, staged.stage(o.out));
    manifest.add_output(o.out);
    write_text(staged.stage(o.log), log.str());
    manifest.add_output(o.log);
    if (!o.test_out.empty()) {
        DatasetFile test_file;
        test_file.config = file.config;
        test_file.config["split"] = {{"part", "test"}, {"fraction", o.split}, {"seed", o.seed}};
        test_file.records = std::move(test_records);
        write_dataset(staged.stage(o.test_out), test_file);
        manifest.add_output(o.test_out);
    }
    commit_with_manifest(staged, manifest, o.out);
    out << "best epoch " << result.best_epoch << " held-out loss "
        << format_double(result.best_loss) << "\n";
    return 0;
}

// ---- eval -------------------------------------------------------------------

struct EvalOptions {
    fs::path model;
    fs::path data;
    fs::path report;
    fs::path scatter;
    std::size_t groups = 200;
    std::size_t group_size = 20;
    std::uint64_t seed = 0;
};

int cmd_eval(const EvalOptions& o, std::ostream& out) {
    Manifest manifest;
    manifest.subcommand = "eval";
    manifest.config = {{"subsample_groups", o.groups}, {"group_size", o.group_size}, {"seed", o.seed}};
    manifest.add_input(o.model);
    manifest.add_input(o.data);

    const Checkpoint ck = load_checkpoint(o.model);
    const DatasetFile file = read_dataset(o.data);
    if (file.records.empty()) {
        throw std::invalid_argument("eval: dataset has no records");
    }
    check_against_checkpoint(file.records, ck);
    const std::vector<double> truth = labels_of(file.records);
    const Predictions pred = predict_batch(ck.model, features_of(file.records, ck.encoding));

    json report = {{"count", truth.size()},
                   {"pc", pearson(truth, pred.raw)},
                   {"rmse", rmse(truth, pred.raw)},
                   {"clamped", {{"pc", pearson(truth, pred.clamped)},
                                {"rmse", rmse(truth, pred.clamped)}}}};
    if (o.groups > 0) {
        Rng rng(o.seed);
        const SubsampleDistribution dist =
            subsample_pc_distribution(truth, pred.raw, o.group_size, o.groups, rng);
        const auto above = std::count_if(dist.values.begin(), dist.values.end(),
                                         [](double v) { return v > 0.9; });
        report["subsample"] = {
            {"group_size", o.group_size},
            {"repetitions", o.groups},
            {"seed", o.seed},
            {"redraws", dist.redraws},
            {"median", median(dist.values)},
            {"fraction_above_0_90",
             static_cast<double>(above) / static_cast<double>(dist.values.size())},
            {"values", dist.values},
            {"histogram",
             {{"lower", -1.0}, {"bin_width", kHistogramBinWidth}, {"counts", dist.histogram}}}};
    }

    std::ostringstream scatter;
    scatter << "true\tpredicted\n";
    for (std::size_t i = 0; i < truth.size(); ++i) {
        scatter << format_double(truth[i]) << '\t' << format_double(pred.raw[i]) << '\n';
    }

    const fs::path scatter_path = o.scatter.empty() ? fs::path(o.report.string() + ".scatter.tsv")
                                                    : o.scatter;
    StagedOutputs staged;
    write_text(staged.stage(o.report), report.dump(2) + "\n");
    manifest.add_output(o.report);
    write_text(staged.stage(scatter_path), scatter.str());
    manifest.add_output(scatter_path);
    commit_with_manifest(staged, manifest, o.report);
    out << "count " << truth.size() << " pc " << format_double(report["pc"].get<double>())
        << " rmse " << format_double(report["rmse"].get<double>()) << "\n";
    return 0;
}

// ---- predict ----------------------------------------------------------------

struct PredictOptions {
    fs::path model;
    fs::path in;
    fs::path out;
};

int cmd_predict(const PredictOptions& o, std::ostream& out) {
    Manifest manifest;
    manifest.subcommand = "predict";
    manifest.add_input(o.model);
    manifest.add_input(o.in);

    const Checkpoint ck = load_checkpoint(o.model);
    const DatasetFile file = read_dataset(o.in);
    check_against_checkpoint(file.records, ck);
    const Predictions pred = predict_batch(ck.model, features_of(file.records, ck.encoding));

    std::ostringstream text;
    if (!file.records.empty()) {
        text << "id\traw\tclamped\n";
        for (std::size_t i = 0; i < file.records.size(); ++i) {
            text << file.records[i].id << '\t' << format_double(pred.raw[i]) << '\t'
                 << format_double(pred.clamped[i]) << '\n';
        }
    }
    StagedOutputs staged;
    write_text(staged.stage(o.out), text.str());
    manifest.add_output(o.out);
    commit_with_manifest(staged, manifest, o.out);
    out << "predicted " << file.records.size() << " records\n";
    return 0;
}

// ---- convergence ------------------------------------------------------------

struct ConvergenceOptions {
    std::vector<int> qubits = {4, 6, 8, 10};
    std::size_t gates = kDefaultGateBudget;
    std::vector<std::size_t> sample_counts = {10, 40, 160, 640};
    std::size_t repetitions = 20;
    std::uint64_t seed = 0;
    fs::path out;
};

int cmd_convergence(const ConvergenceOptions& o, std::ostream& out) {
    Manifest manifest;
    manifest.subcommand = "convergence";
    manifest.config = {{"qubits", o.qubits},
                       {"gates", o.gates},
                       {"sample_counts", o.sample_counts},
                       {"repetitions", o.repetitions},
                       {"seed", o.seed}};

    Rng rng(o.seed);
    std::ostringstream table;
    table << "n_qubits\tsample_count\tmean\tstd\n";
    json circuits = json::array();
    for (int n : o.qubits) {
        const Circuit circuit = generate_mixed(n, o.gates, 1, rng).front();
        circuits.push_back(json::parse(record_to_line({"q" + std::to_string(n), circuit, {}})));
        for (const ConvergenceRow& row :
             convergence_sweep(circuit, o.sample_counts, o.repetitions, rng)) {
            table << n << '\t' << row.sample_count << '\t' << format_double(row.mean) << '\t'
                  << format_double(row.std) << '\n';
        }
        out << "swept " << n << " qubits\n";
    }
    manifest.config["circuits"] = std::move(circuits);

    StagedOutputs staged;
    write_text(staged.stage(o.out), table.str());
    manifest.add_output(o.out);
    commit_with_manifest(staged, manifest, o.out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entangling capability of parameterized quantum circuits: simulation and "
                 "LSTM prediction",
                 "entcap"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GenerateOptions gen;
    auto* g = app.add_subcommand("generate", "Generate random circuit structures");
    g->add_option("--count", gen.count, "Number of circuits")->capture_default_str()->check(CLI::PositiveNumber);
    g->add_option("--qubits", gen.qubits, "Qubits per circuit")->capture_default_str()->check(CLI::Range(2, 16));
    g->add_option("--gates", gen.gates, "Gates per circuit")->capture_default_str()->check(CLI::PositiveNumber);
    g->add_option("--strategy", gen.strategy, "mixed, gate or layer")
        ->capture_default_str()
        ->check(CLI::IsMember({"mixed", "gate", "layer"}));
    g->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    g->add_option("--out", gen.out, "Output circuits file")->required();

    LabelOptions lab;
    auto* l = app.add_subcommand("label", "Label circuits with sampled Meyer-Wallach entanglement");
    l->add_option("--in", lab.in, "Circuits file")->required()->check(CLI::ExistingFile);
    l->add_option("--out", lab.out, "Labeled dataset file")->required();
    l->add_option("--samples", lab.samples, "Parameter samples per circuit")->capture_default_str()->check(CLI::PositiveNumber);
    l->add_option("--seed", lab.seed, "Base seed")->capture_default_str();
    l->add_option("--parallel", lab.parallel, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    TrainOptions tr;
    auto* t = app.add_subcommand("train", "Train the LSTM regressor");
    t->add_option("--data", tr.data, "Labeled dataset")->required()->check(CLI::ExistingFile);
    t->add_option("--out", tr.out, "Checkpoint path")->required();
    t->add_option("--log", tr.log, "Per-epoch TSV log")->required();
    t->add_option("--test-out", tr.test_out, "Write the held-out split here");
    t->add_option("--split", tr.split, "Training fraction")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    t->add_option("--epochs", tr.epochs)->capture_default_str()->check(CLI::PositiveNumber);
    auto* batch_opt = t->add_option("--batch", tr.batch, "Batch size")->capture_default_str()->check(CLI::PositiveNumber);
    t->add_option("--hidden", tr.hidden, "LSTM hidden size")->capture_default_str()->check(CLI::PositiveNumber);
    t->add_option("--fc", tr.fc, "Fully connected width")->capture_default_str()->check(CLI::PositiveNumber);
    t->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str()->check(CLI::PositiveNumber);
    t->add_option("--delta", tr.delta, "Huber delta")->capture_default_str()->check(CLI::PositiveNumber);
    t->add_option("--seed", tr.seed)->capture_default_str();
    t->add_option("--pooling", tr.pooling)->capture_default_str()->check(CLI::IsMember({"concat", "mean", "last"}));
    t->add_option("--cnot-placement", tr.placement)
        ->capture_default_str()
        ->check(CLI::IsMember({"diagonal", "off-diagonal"}));
    t->add_option("--scale", tr.scale, "Feature divisor")->capture_default_str()->check(CLI::PositiveNumber);
    t->add_option("--max-gates", tr.max_gates, "Sequence length T")->capture_default_str()->check(CLI::PositiveNumber);

    EvalOptions ev;
    auto* e = app.add_subcommand("eval", "Evaluate a checkpoint on a labeled dataset");
    e->add_option("--model", ev.model)->required()->check(CLI::ExistingFile);
    e->add_option("--data", ev.data)->required()->check(CLI::ExistingFile);
    e->add_option("--report", ev.report, "Metrics report (JSON)")->required();
    e->add_option("--scatter", ev.scatter, "Scatter TSV (default <report>.scatter.tsv)");
    e->add_option("--subsample-groups", ev.groups)->capture_default_str();
    e->add_option("--group-size", ev.group_size)->capture_default_str()->check(CLI::Range(2, 1 << 30));
    e->add_option("--seed", ev.seed)->capture_default_str();

    PredictOptions pr;
    auto* p = app.add_subcommand("predict", "Predict entangling capability without sampling");
    p->add_option("--model", pr.model)->required()->check(CLI::ExistingFile);
    p->add_option("--in", pr.in)->required()->check(CLI::ExistingFile);
    p->add_option("--out", pr.out)->required();

    ConvergenceOptions cv;
    auto* c = app.add_subcommand("convergence", "Sample-count convergence of the estimate");
    c->add_option("--qubits", cv.qubits)->capture_default_str()->delimiter(',')->check(CLI::Range(2, 16));
    c->add_option("--gates", cv.gates)->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--sample-counts", cv.sample_counts)->capture_default_str()->delimiter(',')->check(CLI::PositiveNumber);
    c->add_option("--repetitions", cv.repetitions)->capture_default_str()->check(CLI::Range(2, 1 << 30));
    c->add_option("--seed", cv.seed)->capture_default_str();
    c->add_option("--out", cv.out)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& pe) {
        err << "entcap: " << pe.what() << "\n";
        return 2;
    }

    try {
        if (g->parsed()) return cmd_generate(gen, out);
        if (l->parsed()) return cmd_label(lab, out, err);
        if (t->parsed()) {
            tr.batch_given = batch_opt->count() > 0;
            return cmd_train(tr, out, err);
        }
        if (e->parsed()) return cmd_eval(ev, out);
        if (p->parsed()) return cmd_predict(pr, out);
        if (c->parsed()) return cmd_convergence(cv, out);
    } catch (const CLI::ParseError& pe) {
        err << "entcap: " << pe.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        err << "entcap: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace entcap
