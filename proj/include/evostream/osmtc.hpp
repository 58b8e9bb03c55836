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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evostream/clusterer.hpp"

namespace evostream {

/// Conditional label co-occurrence: at(a, b) = docs with a and b / docs with a.
class LabelCooc {
 public:
  void add(const std::vector<LabelId>& labels);
  double at(LabelId a, LabelId b) const;
  std::int64_t count(LabelId a) const;
  std::size_t size() const { return counts_.size(); }

 private:
  void grow(LabelId l);
  std::vector<std::int64_t> counts_;
  std::vector<std::vector<std::int64_t>> pairs_;
};

struct Prediction {
  std::string doc_id;
  std::vector<LabelId> labels;  // sorted
  std::size_t l_count = 0;
  bool fallback = false;
  // Every vocabulary-sharing cluster, best first; the first k are Z_d.
  std::vector<std::pair<ClusterId, double>> scored;
  std::size_t neighbors = 0;
};

/// Defaults: gamma 5 (recency and penalty), k 15, lambda 1e-5, Z_min 3,
/// D_init 600, alpha 1e-4, beta 0.01.
ParamBlock osmtc_defaults();

/// Number of scores whose softmax probability exceeds the mean probability.
std::size_t label_count(const std::vector<double>& log_scores);

/// Collapsed Gibbs sampler for a Dirichlet-multinomial mixture. Returns a
/// partition index per document; every partition is non-empty when there are
/// at least `k` documents.
std::vector<std::size_t> dmm_partition(const std::vector<const Document*>& docs,
                                       std::size_t k, std::uint64_t seed,
                                       int sweeps = 30, double alpha = 0.1,
                                       double beta = 0.1);

class OsmtcModel {
 public:
  explicit OsmtcModel(ParamBlock params = osmtc_defaults(), std::uint64_t seed = 0);

  /// Builds Z_min labelled clusters per warmup label. Throws ConfigError when
  /// a label has fewer than Z_min documents.
  void initialize(const std::vector<Document>& warmup,
                  const std::vector<std::string>& label_names = {});
  bool initialized() const { return initialized_; }

  /// Advances the clock and runs decay, merging and term pruning.
  void maintain();
  Prediction predict(const Document& d) const;
  /// Penalises wrong labels and absorbs `d` under the truth when given, else
  /// under the predicted labels.
  void update(const Document& d, const Prediction& pred,
              const std::vector<LabelId>* truth);
  /// maintain, predict, update.
  Prediction process(const Document& d, bool reveal);

  const ModelState& state() const { return state_; }
  ModelState& mutable_state() { return state_; }
  const LabelCooc& label_cooc() const { return lc_; }
  std::size_t clusters_with_label(LabelId l) const;
  std::vector<ModelEvent> drain_events();

 private:
  LabelId fallback_label() const;
  double new_score(const DocView& v, const Prediction& pred) const;

  ModelState state_;
  LabelCooc lc_;
  std::uint64_t seed_;
  bool initialized_ = false;
  std::vector<ModelEvent> events_;
};

}  // namespace evostream
