// Copyright 2026 The evostream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evostream/prequential.hpp"
#include "evostream/stream_io.hpp"

namespace evostream {

struct LoadedStream {
  std::vector<Document> docs;
  std::vector<std::int64_t> classes;  // topic, else first label, else -1
  std::vector<bool> reveal;
  Vocabulary vocab;
  Vocabulary labels;
  std::vector<std::string> label_names() const;
};

LoadedStream load_documents(const std::vector<RawRecord>& records,
                            const PreprocessConfig& cfg = PreprocessConfig::defaults());

const std::vector<std::string>& model_names();
/// Published default parameters of a model; ConfigError for unknown names.
ParamBlock defaults_for(const std::string& model);
/// Sets one named parameter; ConfigError on unknown keys or bad values.
void apply_param(ParamBlock& p, const std::string& key, double value);
std::unique_ptr<StreamClusterer> make_clusterer(const std::string& model, const ParamBlock& p,
                                                std::uint64_t seed);

struct RunConfig {
  std::string model = "osdm";
  std::string input;
  std::string out;
  std::vector<std::pair<std::string, double>> overrides;
  std::size_t window = 1000;
  std::uint64_t seed = 0;
  bool deterministic = false;
  bool check_invariants = false;
  std::optional<double> labeled_ratio;
  bool stem = false;
  std::string stopwords;
  bool skip_bad_lines = false;
};

/// Runs one model over an already loaded stream. Writes the assignment log,
/// event log and reports under `cfg.out` when it is non-empty.
RunReport execute_run(const RunConfig& cfg, const LoadedStream& stream);

/// Entry point of the evostream tool; returns the process exit code.
int run_cli(int argc, char** argv);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kConfig = 2;
inline constexpr int kIo = 3;
inline constexpr int kInvariant = 4;
}  // namespace exit_code

}  // namespace evostream
