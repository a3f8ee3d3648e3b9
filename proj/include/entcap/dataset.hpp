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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entcap/circuit.hpp"
#include "entcap/simulator.hpp"
#include "json.hpp"

namespace entcap {

/// Ground-truth entangling capability and how it was sampled.
struct Label {
    double ent = 0.0;
    std::size_t sample_count = 0;
    std::uint64_t label_seed = 0;
    double std_error = 0.0;

    bool operator==(const Label&) const = default;
};

/// One dataset row. Files produced by `generate` carry no label.
struct Record {
    std::string id;
    Circuit circuit;
    std::optional<Label> label;

    bool operator==(const Record&) const = default;
};

inline constexpr int kDatasetVersion = 1;
inline constexpr std::string_view kDatasetFormat = "entcap-dataset";

/// Line-delimited JSON. Line 1 is a header
///   {"format":"entcap-dataset","version":1,"config":{...}}
/// and every following line one record
///   {"id":..,"n_qubits":..,"strategy":"gate|layer|manual",
///    "gates":[{"kind":"RX","qubits":[q]}, {"kind":"CNOT","qubits":[c,t]}, ...],
///    "ent":..,"sample_count":..,"label_seed":..,"std_error":..}
/// with the four label fields omitted for unlabeled records. Reals use the
/// shortest decimal form that parses back to the identical double.
struct DatasetFile {
    nlohmann::json config = nlohmann::json::object();
    std::vector<Record> records;
};

class DatasetFormatError : public std::runtime_error {
   public:
    DatasetFormatError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

std::string record_to_line(const Record& record);
/// `line_number` is 1-based and only used in error messages.
Record record_from_line(std::string_view line, std::size_t line_number);

std::string header_line(const nlohmann::json& config);

/// Writes to a temporary sibling and renames over `path` on success, so a
/// failed write never leaves a partial file behind.
void write_dataset(const std::filesystem::path& path, const DatasetFile& dataset);
/// An empty file reads as zero records with an empty config.
DatasetFile read_dataset(const std::filesystem::path& path);

/// Seed used to label record `index` under `base_seed`; fits in 53 bits so
/// any JSON reader holds it exactly.
std::uint64_t record_label_seed(std::uint64_t base_seed, std::size_t index);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Labels every record in place via estimate_ent with per-record seeds.
/// Output is independent of `threads`. Errors are rethrown with the record
/// id attached.
void label_records(std::vector<Record>& records, std::size_t sample_count,
                   std::uint64_t base_seed, std::size_t threads = 1,
                   const ProgressFn& progress = {});

/// Ids "c000000", "c000001", ... for generated circuits.
std::string record_id(std::size_t index);

/// Wraps circuits as records (ids by position) and labels them.
std::vector<Record> build_dataset(std::span<const Circuit> circuits, std::size_t sample_count,
                                  std::uint64_t base_seed, std::size_t threads = 1);

/// Seeded shuffle, then the first round(train_fraction * N) go to training.
std::pair<std::vector<Record>, std::vector<Record>> split(std::span<const Record> records,
                                                          double train_fraction,
                                                          std::uint64_t seed);

/// Ground-truth labels in record order; throws if any record is unlabeled.
std::vector<double> labels_of(std::span<const Record> records);

}  // namespace entcap
