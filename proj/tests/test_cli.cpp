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

#include <fstream>
#include <sstream>

#include "entcap/dataset.hpp"
#include "entcap/metrics.hpp"
#include "entcap/model.hpp"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_support.hpp"

using namespace entcap;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const fs::path& p) {
    std::vector<std::string> out;
    std::ifstream in(p);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string body(const fs::path& p) {
    const std::string text = slurp(p);
    return text.substr(text.find('\n') + 1);
}

// Shared small pipeline: 100 labeled 4-qubit, 10-gate circuits.
class CliPipeline : public ::testing::Test {
   protected:
    static void SetUpTestSuite() {
        dir_ = entcap::testing::scratch_dir("cli_pipeline");
        ASSERT_EQ(run({"generate", "--count", "100", "--qubits", "4", "--gates", "10", "--seed", "1",
                       "--out", (dir_ / "c.jsonl").string()})
                      .code,
                  0);
        ASSERT_EQ(run({"label", "--in", (dir_ / "c.jsonl").string(), "--samples", "20", "--seed", "2",
                       "--out", (dir_ / "l.jsonl").string()})
                      .code,
                  0);
        const CliRun t = run({"train", "--data", (dir_ / "l.jsonl").string(), "--epochs", "2", "--hidden", "8",
                           "--fc", "8", "--seed", "3", "--out", (dir_ / "m.json").string(), "--log",
                           (dir_ / "log.tsv").string(), "--test-out", (dir_ / "test.jsonl").string()});
        ASSERT_EQ(t.code, 0) << t.err;
    }
    static fs::path dir_;
};
fs::path CliPipeline::dir_;

}  // namespace

TEST(CliGenerate, writes_records_and_tally) {
    const auto dir = entcap::testing::scratch_dir("cli_generate");
    const CliRun r = run({"generate", "--count", "300", "--seed", "4", "--out", (dir / "c.jsonl").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("gate "), std::string::npos);
    const DatasetFile f = read_dataset(dir / "c.jsonl");
    ASSERT_EQ(f.records.size(), 300u);
    for (const Record& rec : f.records) {
        EXPECT_EQ(rec.circuit.n_qubits(), 6);
        EXPECT_EQ(rec.circuit.size(), 30u);
        EXPECT_FALSE(rec.label);
    }
    EXPECT_TRUE(fs::exists(dir / "c.jsonl.manifest.json"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "c.jsonl.manifest.json"));
    EXPECT_EQ(manifest.at("subcommand"), "generate");
    EXPECT_EQ(manifest.at("config").at("count"), 300);
}

TEST(CliGenerate, single_gate_strategy_record) {
    const auto dir = entcap::testing::scratch_dir("cli_generate_one");
    ASSERT_EQ(run({"generate", "--count", "1", "--strategy", "gate", "--out", (dir / "c.jsonl").string()}).code, 0);
    const DatasetFile f = read_dataset(dir / "c.jsonl");
    ASSERT_EQ(f.records.size(), 1u);
    EXPECT_EQ(f.records[0].circuit.strategy(), Strategy::GateStrategy);
}

TEST(CliGenerate, deterministic) {
    const auto dir = entcap::testing::scratch_dir("cli_generate_det");
    run({"generate", "--count", "50", "--seed", "8", "--out", (dir / "a.jsonl").string()});
    run({"generate", "--count", "50", "--seed", "8", "--out", (dir / "b.jsonl").string()});
    EXPECT_EQ(slurp(dir / "a.jsonl"), slurp(dir / "b.jsonl"));
}

TEST(CliGenerate, one_qubit_is_rejected_naming_the_flag) {
    const auto dir = entcap::testing::scratch_dir("cli_generate_bad");
    const CliRun r = run({"generate", "--qubits", "1", "--out", (dir / "c.jsonl").string()});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("--qubits"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "c.jsonl"));
}

TEST(CliLabel, entanglement_free_file_is_all_zero) {
    const auto dir = entcap::testing::scratch_dir("cli_label_free");
    DatasetFile f;
    for (int k = 0; k < 5; ++k) f.records.push_back({record_id(k), Circuit(3, {Gate::rx(k % 3), Gate::rz(0)}), std::nullopt});
    write_dataset(dir / "c.jsonl", f);
    ASSERT_EQ(run({"label", "--in", (dir / "c.jsonl").string(), "--samples", "10", "--out", (dir / "l.jsonl").string()}).code, 0);
    for (const Record& r : read_dataset(dir / "l.jsonl").records) EXPECT_EQ(r.label->ent, 0.0);
}

TEST(CliLabel, rerun_is_byte_identical_and_parallel_matches) {
    const auto dir = entcap::testing::scratch_dir("cli_label_det");
    run({"generate", "--count", "30", "--qubits", "4", "--gates", "8", "--out", (dir / "c.jsonl").string()});
    const auto label = [&](const std::string& out, const std::string& threads) {
        return run({"label", "--in", (dir / "c.jsonl").string(), "--samples", "10", "--seed", "5",
                    "--parallel", threads, "--out", (dir / out).string()});
    };
    ASSERT_EQ(label("a.jsonl", "1").code, 0);
    ASSERT_EQ(label("b.jsonl", "1").code, 0);
    ASSERT_EQ(label("p.jsonl", "3").code, 0);
    EXPECT_EQ(body(dir / "a.jsonl"), body(dir / "b.jsonl"));
    EXPECT_EQ(body(dir / "a.jsonl"), body(dir / "p.jsonl"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "a.jsonl.manifest.json"));
    EXPECT_EQ(manifest.at("config").at("samples"), 10);
    EXPECT_EQ(manifest.at("config").at("seed"), 5);
}

TEST(CliLabel, malformed_input_names_the_line_and_leaves_no_output) {
    const auto dir = entcap::testing::scratch_dir("cli_label_bad");
    run({"generate", "--count", "3", "--qubits", "3", "--gates", "4", "--out", (dir / "c.jsonl").string()});
    std::ofstream(dir / "c.jsonl", std::ios::app) << "{\"id\":\"zz\",\"broken\n";
    const CliRun r = run({"label", "--in", (dir / "c.jsonl").string(), "--out", (dir / "l.jsonl").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "l.jsonl"));
    EXPECT_FALSE(fs::exists(dir / "l.jsonl.partial"));
    EXPECT_FALSE(fs::exists(dir / "l.jsonl.manifest.json"));
}

TEST_F(CliPipeline, train_writes_checkpoint_log_and_manifest) {
    const auto log = lines(dir_ / "log.tsv");
    ASSERT_EQ(log.size(), 3u);
    EXPECT_EQ(log[0], "epoch\ttrain_loss\ttest_loss\ttrain_pc\ttest_pc");
    EXPECT_EQ(log[1].substr(0, 2), "1\t");
    EXPECT_NO_THROW(load_checkpoint(dir_ / "m.json"));
    EXPECT_EQ(read_dataset(dir_ / "test.jsonl").records.size(), 10u);
    const auto manifest = nlohmann::json::parse(slurp(dir_ / "m.json.manifest.json"));
    EXPECT_EQ(manifest.at("subcommand"), "train");
    EXPECT_EQ(manifest.at("config").at("epochs"), 2);
    EXPECT_EQ(manifest.at("inputs").size(), 1u);
}

TEST_F(CliPipeline, single_epoch_smoke_with_default_batch) {
    const CliRun r = run({"train", "--data", (dir_ / "l.jsonl").string(), "--epochs", "1", "--out",
                       (dir_ / "m1.json").string(), "--log", (dir_ / "log1.tsv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(dir_ / "log1.tsv").size(), 2u);
}

TEST_F(CliPipeline, explicit_batch_larger_than_data_is_a_flag_error) {
    const CliRun r = run({"train", "--data", (dir_ / "l.jsonl").string(), "--batch", "1000", "--out",
                       (dir_ / "mb.json").string(), "--log", (dir_ / "logb.tsv").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--batch"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir_ / "mb.json"));
}

TEST_F(CliPipeline, eval_report_and_scatter) {
    const CliRun r = run({"eval", "--model", (dir_ / "m.json").string(), "--data", (dir_ / "test.jsonl").string(),
                       "--report", (dir_ / "r.json").string(), "--group-size", "5", "--subsample-groups", "40"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = nlohmann::json::parse(slurp(dir_ / "r.json"));
    EXPECT_EQ(report.at("count"), 10);
    EXPECT_EQ(report.at("subsample").at("values").size(), 40u);
    const auto scatter = lines(dir_ / "r.json.scatter.tsv");
    ASSERT_EQ(scatter.size(), 11u);
    EXPECT_EQ(scatter[0], "true\tpredicted");
}

TEST_F(CliPipeline, eval_on_own_predictions_is_perfect) {
    const Checkpoint ck = load_checkpoint(dir_ / "m.json");
    DatasetFile f = read_dataset(dir_ / "l.jsonl");
    std::vector<Eigen::MatrixXd> features;
    for (const Record& r : f.records) features.push_back(circuit_features(r.circuit, ck.encoding));
    const Predictions p = predict_batch(ck.model, features);
    std::vector<Record> kept;
    for (std::size_t k = 0; k < f.records.size(); ++k) {
        if (p.raw[k] < 0.0 || p.raw[k] > 1.0) continue;
        Record rec = f.records[k];
        rec.label->ent = p.raw[k];
        kept.push_back(rec);
    }
    ASSERT_GE(kept.size(), 50u);
    f.records = kept;
    write_dataset(dir_ / "self.jsonl", f);
    ASSERT_EQ(run({"eval", "--model", (dir_ / "m.json").string(), "--data", (dir_ / "self.jsonl").string(),
                   "--report", (dir_ / "self.json").string()})
                  .code,
              0);
    const auto report = nlohmann::json::parse(slurp(dir_ / "self.json"));
    EXPECT_NEAR(report.at("pc").get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(report.at("rmse").get<double>(), 0.0, 1e-12);
}

TEST_F(CliPipeline, eval_rejects_qubit_mismatch) {
    run({"generate", "--count", "20", "--qubits", "6", "--gates", "10", "--out", (dir_ / "c6.jsonl").string()});
    run({"label", "--in", (dir_ / "c6.jsonl").string(), "--samples", "2", "--out", (dir_ / "l6.jsonl").string()});
    const CliRun r = run({"eval", "--model", (dir_ / "m.json").string(), "--data", (dir_ / "l6.jsonl").string(),
                       "--report", (dir_ / "r6.json").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("dimension mismatch"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir_ / "r6.json"));
}

TEST_F(CliPipeline, predict_unlabeled_and_labeled_inputs) {
    ASSERT_EQ(run({"predict", "--model", (dir_ / "m.json").string(), "--in", (dir_ / "c.jsonl").string(), "--out",
                   (dir_ / "pu.tsv").string()})
                  .code,
              0);
    ASSERT_EQ(run({"predict", "--model", (dir_ / "m.json").string(), "--in", (dir_ / "l.jsonl").string(), "--out",
                   (dir_ / "pl.tsv").string()})
                  .code,
              0);
    const auto unlabeled = lines(dir_ / "pu.tsv");
    ASSERT_EQ(unlabeled.size(), 101u);
    EXPECT_EQ(unlabeled[0], "id\traw\tclamped");
    EXPECT_EQ(slurp(dir_ / "pu.tsv"), slurp(dir_ / "pl.tsv"));
}

TEST_F(CliPipeline, predict_empty_input) {
    std::ofstream(dir_ / "empty.jsonl").close();
    const CliRun r = run({"predict", "--model", (dir_ / "m.json").string(), "--in", (dir_ / "empty.jsonl").string(),
                       "--out", (dir_ / "pe.tsv").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(dir_ / "pe.tsv"), "");
}

TEST(CliConvergence, table_covers_requested_qubits) {
    const auto dir = entcap::testing::scratch_dir("cli_convergence");
    const CliRun r = run({"convergence", "--qubits", "4,6", "--gates", "20", "--sample-counts", "10,40,160",
                       "--repetitions", "40", "--seed", "3", "--out", (dir / "conv.tsv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto table = lines(dir / "conv.tsv");
    ASSERT_EQ(table.size(), 7u);
    EXPECT_EQ(table[0], "n_qubits\tsample_count\tmean\tstd");
    EXPECT_EQ(table[1].substr(0, 5), "4\t10\t");
}

TEST(CliConvergence, minimum_repetitions) {
    const auto dir = entcap::testing::scratch_dir("cli_convergence_min");
    EXPECT_EQ(run({"convergence", "--qubits", "4", "--sample-counts", "5", "--repetitions", "2", "--out",
                   (dir / "a.tsv").string()})
                  .code,
              0);
    const CliRun r = run({"convergence", "--repetitions", "1", "--out", (dir / "b.tsv").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--repetitions"), std::string::npos) << r.err;
}

TEST(Cli, unknown_subcommand_and_missing_flags) {
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"generate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}
