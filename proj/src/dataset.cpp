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

#include "entcap/dataset.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_set>

namespace entcap {

using nlohmann::json;

DatasetFormatError::DatasetFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string record_to_line(const Record& r) {
    json gates = json::array();
    for (const Gate& g : r.circuit.gates()) {
        json qubits = json::array();
        for (int a = 0; a < g.arity(); ++a) qubits.push_back(g.qubits[a]);
        gates.push_back({{"kind", to_string(g.kind)}, {"qubits", std::move(qubits)}});
    }
    json j = {{"id", r.id},
              {"n_qubits", r.circuit.n_qubits()},
              {"strategy", to_string(r.circuit.strategy())},
              {"gates", std::move(gates)}};
    if (r.label) {
        j["ent"] = r.label->ent;
        j["sample_count"] = r.label->sample_count;
        j["label_seed"] = r.label->label_seed;
        j["std_error"] = r.label->std_error;
    }
    return j.dump();
}

Record record_from_line(std::string_view line, std::size_t line_number) {
    try {
        const json j = json::parse(line);
        const int n = j.at("n_qubits").get<int>();
        const auto strategy = parse_strategy(j.at("strategy").get<std::string>());
        if (!strategy) {
            throw DatasetFormatError(line_number, "unknown strategy");
        }
        std::vector<Gate> gates;
        for (const json& g : j.at("gates")) {
            const auto kind = parse_gate_kind(g.at("kind").get<std::string>());
            if (!kind) {
                throw DatasetFormatError(line_number, "unknown gate kind " + g.at("kind").dump());
            }
            const auto qubits = g.at("qubits").get<std::vector<int>>();
            if (qubits.size() != (*kind == GateKind::CNOT ? 2u : 1u)) {
                throw DatasetFormatError(line_number, "wrong qubit count for " +
                                                          std::string(to_string(*kind)));
            }
            gates.push_back(*kind == GateKind::CNOT ? Gate::cnot(qubits[0], qubits[1])
                                                    : Gate::rotation(*kind, qubits[0]));
        }
        Record r{j.at("id").get<std::string>(), Circuit(n, std::move(gates), *strategy),
                 std::nullopt};
        if (j.contains("ent")) {
            Label l;
            l.ent = j.at("ent").get<double>();
            l.sample_count = j.at("sample_count").get<std::size_t>();
            l.label_seed = j.at("label_seed").get<std::uint64_t>();
            l.std_error = j.at("std_error").get<double>();
            if (!(l.ent >= 0.0 && l.ent <= 1.0) || l.sample_count < 1 || !(l.std_error >= 0.0)) {
                throw DatasetFormatError(line_number, "label out of range");
            }
            r.label = l;
        }
        return r;
    } catch (const DatasetFormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw DatasetFormatError(line_number, e.what());
    }
}

std::string header_line(const json& config) {
    return json{{"format", kDatasetFormat}, {"version", kDatasetVersion}, {"config", config}}
        .dump();
}

void write_dataset(const std::filesystem::path& path, const DatasetFile& dataset) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out << header_line(dataset.config) << '\n';
        for (const Record& r : dataset.records) out << record_to_line(r) << '\n';
        out.close();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

DatasetFile read_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    DatasetFile file;
    std::string line;
    std::size_t line_number = 0;
    std::unordered_set<std::string> ids;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        if (line_number == 1) {
            json header;
            try {
                header = json::parse(line);
            } catch (const json::parse_error& e) {
                throw DatasetFormatError(1, std::string("header is not JSON: ") + e.what());
            }
            if (header.value("format", "") != kDatasetFormat) {
                throw DatasetFormatError(1, "missing dataset header");
            }
            if (header.value("version", -1) != kDatasetVersion) {
                throw DatasetFormatError(1, "unsupported dataset version " +
                                                header.value("version", json()).dump());
            }
            file.config = header.value("config", json::object());
            continue;
        }
        Record r = record_from_line(line, line_number);
        if (!ids.insert(r.id).second) {
            throw DatasetFormatError(line_number, "duplicate id " + r.id);
        }
        file.records.push_back(std::move(r));
    }
    return file;
}

std::uint64_t record_label_seed(std::uint64_t base_seed, std::size_t index) {
    return derive_seed(base_seed, index) >> 11;
}

void label_records(std::vector<Record>& records, std::size_t sample_count,
                   std::uint64_t base_seed, std::size_t threads, const ProgressFn& progress) {
    if (sample_count < 1) {
        throw std::invalid_argument("label_records: sample_count must be >= 1");
    }
    threads = std::max<std::size_t>(1, std::min(threads, records.size()));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mu;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= records.size() || failed.load()) return;
            Record& r = records[i];
            try {
                const std::uint64_t seed = record_label_seed(base_seed, i);
                const EntEstimate e = estimate_ent(r.circuit, sample_count, seed);
                r.label = Label{e.value, e.sample_count, e.seed, e.std_error};
            } catch (const std::exception& ex) {
                std::lock_guard lock(mu);
                if (!failed.exchange(true)) {
                    error = std::make_exception_ptr(
                        std::runtime_error("record " + r.id + ": " + ex.what()));
                }
                return;
            }
            const std::size_t d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock(mu);
                progress(d, records.size());
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

std::string record_id(std::size_t index) {
    std::string digits = std::to_string(index);
    if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
    return "c" + digits;
}

std::vector<Record> build_dataset(std::span<const Circuit> circuits, std::size_t sample_count,
                                  std::uint64_t base_seed, std::size_t threads) {
    if (circuits.empty()) {
        throw std::invalid_argument("build_dataset: no circuits");
    }
    std::vector<Record> records;
    records.reserve(circuits.size());
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        records.push_back({record_id(i), circuits[i], std::nullopt});
    }
    label_records(records, sample_count, base_seed, threads);
    return records;
}

std::pair<std::vector<Record>, std::vector<Record>> split(std::span<const Record> records,
                                                          double train_fraction,
                                                          std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("split: train_fraction must lie strictly between 0 and 1");
    }
    const std::size_t n = records.size();
    const auto n_train =
        static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train == n) {
        throw std::invalid_argument("split: fraction " + std::to_string(train_fraction) +
                                    " leaves one side empty for " + std::to_string(n) +
                                    " records");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    std::pair<std::vector<Record>, std::vector<Record>> out;
    out.first.reserve(n_train);
    out.second.reserve(n - n_train);
    for (std::size_t k = 0; k < n; ++k) {
        (k < n_train ? out.first : out.second).push_back(records[order[k]]);
    }
    return out;
}

std::vector<double> labels_of(std::span<const Record> records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const Record& r : records) {
        if (!r.label) {
            throw std::invalid_argument("record " + r.id + " has no label");
        }
        out.push_back(r.label->ent);
    }
    return out;
}

}  // namespace entcap
