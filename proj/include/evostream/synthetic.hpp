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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evostream/text.hpp"

namespace evostream {

struct DriftPoint {
  int topic = 0;
  std::size_t position = 0;  // stream position from which the change applies
  double fraction = 0.0;     // share of the topic's core terms replaced
};

enum class LabelMode { kSingle, kMulti };

struct SynthSpec {
  std::size_t n_topics = 10;
  std::size_t vocab_size = 2000;
  std::size_t core_terms_per_topic = 40;
  std::size_t docs_per_topic = 500;
  double mean_doc_len = 8.0;
  double core_share = 0.7;
  std::vector<DriftPoint> drift_points;
  LabelMode label_mode = LabelMode::kSingle;
  std::size_t cardinality = 1;
  // Row a holds the relative chance of pairing label a with each other label.
  // Drawn at random from the seed when empty.
  std::vector<std::vector<double>> label_cooc;
  double reveal_ratio = 0.0;
  std::optional<std::size_t> n_docs;  // multi-label stream length
  std::uint64_t seed = 1;

  std::size_t stream_length() const;
  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

struct SynthStream {
  std::vector<RawRecord> records;
  std::vector<int> topics;
  // Per topic: core terms in use at the end of the stream and the terms
  // retired by drift.
  std::vector<std::vector<std::string>> core_terms;
  std::vector<std::vector<std::string>> retired_terms;
};

SynthStream generate_synthetic(const SynthSpec& spec);

/// Reads a spec from a parsed key/value config; unknown keys are rejected.
SynthSpec synth_spec_from_config(const nlohmann::json& cfg);
SynthSpec load_synth_spec(const std::string& path);

std::string synth_term(std::size_t id);

}  // namespace evostream
