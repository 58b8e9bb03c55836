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

#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "evostream/scoring.hpp"

namespace evostream {

struct Assignment {
  ClusterId cluster = kNoCluster;
  bool is_new = false;
  // Best existing score minus the new-cluster score (log space); -inf when
  // no existing cluster was a candidate.
  double score_margin = -std::numeric_limits<double>::infinity();
  std::size_t active_clusters = 0;
};

struct ModelEvent {
  enum class Kind { kMerge, kDelete, kInference };
  Kind kind = Kind::kDelete;
  Tick tick = 0;
  ClusterId cluster = kNoCluster;  // merged or deleted cluster
  ClusterId target = kNoCluster;   // merge destination
  std::size_t resampled = 0;
  std::size_t moved = 0;
  std::size_t clusters_before = 0;
  std::size_t clusters_after = 0;
};

/// A document that episodic inference moved; `index` is its position in the
/// assignment log.
struct Reassignment {
  std::size_t index = 0;
  ClusterId from = kNoCluster;
  ClusterId to = kNoCluster;
};

class StreamClusterer {
 public:
  virtual ~StreamClusterer() = default;

  virtual std::string_view name() const = 0;
  virtual Assignment process(const Document& d) = 0;
  virtual const ModelState& state() const = 0;

  /// Cluster chosen for each processed document, in processing order.
  const std::vector<ClusterId>& assignment_log() const { return log_; }
  std::vector<ModelEvent> drain_events();
  std::vector<Reassignment> drain_reassignments();

 protected:
  std::vector<ClusterId> log_;
  std::vector<ModelEvent> events_;
  std::vector<Reassignment> moves_;
};

using ExistingScorer = std::function<double(const DocView&, const ClusterFeature&)>;
using NewScorer = std::function<double(const DocView&, double mean_vocab)>;

struct Choice {
  ClusterId best = kNoCluster;
  double best_score = -std::numeric_limits<double>::infinity();
  double new_score = -std::numeric_limits<double>::infinity();
  bool create = false;
};

/// Scores `d` against the active clusters. With `gated`, clusters sharing no
/// term with `d` are skipped and the mean vocabulary is taken over the
/// clusters that do share one. Ties go to the lowest cluster id; a new
/// cluster wins only with a strictly greater score. Empty documents fall to
/// the cluster with most documents and never create one.
Choice choose_cluster(const ModelState& state, const DocView& d, bool gated,
                      const ExistingScorer& existing, const NewScorer& fresh);

/// Mean vocabulary size over all active clusters, or `fallback` when none.
double mean_cluster_vocab(const ModelState& state, double fallback);

/// Decays every cluster, then merges each outdated cluster into its best
/// vocabulary-sharing active cluster when that beats the cluster's
/// new-cluster score, deleting it otherwise. `retirable` limits which
/// outdated clusters are considered, `compatible` which targets they may join.
void update_active_clusters(
    ModelState& state, const ExistingScorer& existing, const NewScorer& fresh,
    std::vector<ModelEvent>& events,
    const std::function<bool(const ClusterFeature&)>& retirable = nullptr,
    const std::function<bool(const ClusterFeature&, const ClusterFeature&)>& compatible =
        nullptr);

}  // namespace evostream
