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
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evostream/clusterer.hpp"
#include "evostream/metrics.hpp"
#include "evostream/osmtc.hpp"

namespace evostream {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::size_t window = 1000;
  // Leaves wall-clock figures out of the report so reruns are byte-identical.
  bool deterministic = false;
  bool check_invariants = false;
  std::function<void(const Json&)> on_row;
  std::function<void(const Json&)> on_event;
};

struct SeriesPoint {
  std::size_t at_doc = 0;
  Json metrics;
  std::size_t clusters = 0;
  std::size_t vocab = 0;
  std::size_t cooc_entries = 0;
};

struct PerfStats {
  double seconds = 0.0;
  double docs_per_sec = 0.0;
  std::size_t peak_clusters = 0;
  std::size_t peak_vocab = 0;
  std::size_t peak_cooc_entries = 0;
};

struct RunReport {
  std::string model;
  std::size_t documents = 0;
  Json final_metrics;
  std::vector<SeriesPoint> series;
  PerfStats perf;

  Json to_json(bool deterministic) const;
  std::string to_csv() const;
};

/// Error raised while processing a document, tagged with its stream position.
class StreamError : public std::runtime_error {
 public:
  StreamError(std::size_t position, const std::string& what, bool invariant)
      : std::runtime_error("document " + std::to_string(position) + ": " + what),
        position_(position),
        invariant_(invariant) {}
  std::size_t position() const { return position_; }
  bool invariant_breach() const { return invariant_; }

 private:
  std::size_t position_;
  bool invariant_;
};

/// Feeds `docs` through a clustering model. `classes` holds the ground-truth
/// class per document, -1 when unknown; metrics cover known classes only.
RunReport run_clustering(StreamClusterer& model, const std::vector<Document>& docs,
                         const std::vector<std::int64_t>& classes, const RunOptions& opts);

/// Initialises on the first D_init documents, then predicts and updates on
/// the rest. Labels of a document are used for training only when `reveal`
/// is set for it.
RunReport run_osmtc(OsmtcModel& model, const std::vector<Document>& docs,
                    const std::vector<bool>& reveal, std::size_t label_space,
                    const RunOptions& opts,
                    const std::vector<std::string>& label_names = {});

Json event_json(const ModelEvent& ev);

}  // namespace evostream
