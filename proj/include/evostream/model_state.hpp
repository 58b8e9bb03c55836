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

#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "evostream/cluster_feature.hpp"

namespace evostream {

/// Hyperparameters shared by all models. Not every model reads every field.
struct ParamBlock {
  double alpha = 2e-3;            // concentration
  double beta = 4e-5;             // pseudo term weight
  double lambda = 6e-6;           // decay factor
  double gamma_recency = 10.0;    // term recency threshold, percent
  int window = 1;                 // co-occurrence window (delta)
  std::size_t buffer_size = 500;  // psi
  std::size_t infer_interval = 60;  // rho; 0 disables episodic inference
  std::size_t resample_count = 30;  // eta
  std::size_t neighbors = 15;     // k
  std::size_t min_clusters_per_label = 3;  // Z_min
  std::size_t init_docs = 600;    // D_init
  double decay_epsilon = 1e-6;    // clusters with weight below this are outdated
  double gamma_penalty = 5.0;     // percent

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Model-wide per-term bookkeeping over active clusters.
struct TermStat {
  std::uint32_t clusters = 0;  // |{z : w in V_z}|
  double freq = 0.0;           // sum_z n_z^w
  std::int64_t neighbors = 0;  // sum_z |cw_z row w|
};

/// Set of active clusters plus the model clock and active document /
/// vocabulary bookkeeping. All cluster mutations go through this class so the
/// bookkeeping stays consistent.
class ModelState {
 public:
  explicit ModelState(ParamBlock params = {}, bool track_arrivals = false);

  const ParamBlock& params() const { return params_; }
  ParamBlock& params() { return params_; }

  Tick tick() const { return tick_; }
  Tick advance() { return ++tick_; }

  const std::map<ClusterId, ClusterFeature>& clusters() const { return clusters_; }
  const ClusterFeature& cluster(ClusterId id) const;
  bool has_cluster(ClusterId id) const { return clusters_.count(id) != 0; }
  std::size_t cluster_count() const { return clusters_.size(); }

  /// D: documents held by active clusters.
  std::int64_t active_docs() const { return active_docs_; }
  std::size_t active_vocab_size() const { return terms_.size(); }
  std::uint32_t cluster_frequency(TermId w) const;
  const TermStat* term_stat(TermId w) const;
  const std::unordered_map<TermId, TermStat>& term_stats() const { return terms_; }
  std::size_t cooc_entries() const;

  ClusterId create_cluster(const Document& d, const CoocMatrix& d_cooc,
                           std::optional<LabelId> label = std::nullopt);
  /// Creates a cluster directly from a prepared feature (initialisation paths).
  ClusterId adopt_cluster(ClusterFeature z);
  void add_document(ClusterId id, const Document& d, const CoocMatrix& d_cooc);
  void remove_document(ClusterId id, const Document& d, const CoocMatrix& d_cooc);
  void delete_cluster(ClusterId id);
  /// Folds `source` into `target` and deletes `source`.
  void merge_clusters(ClusterId target, ClusterId source);
  std::vector<TermId> prune_cluster(ClusterId id, double gamma);
  /// Multiplies n_z^w of the given terms by `factor` in [0, 1].
  void scale_terms(ClusterId id, const std::vector<TermId>& terms, double factor);
  void commit_decay_all(double lambda);

  /// ln(|Z| / max(1, clusters containing w)).
  double icf(TermId w) const;

  /// Recounts everything from the clusters and throws InvariantError on any
  /// mismatch.
  void check_invariants() const;

 private:
  ClusterFeature& mut(ClusterId id);
  void retire(const ClusterFeature& z);
  void enroll(const ClusterFeature& z);
  template <typename Fn>
  void mutate(ClusterId id, const std::vector<TermId>& touched, Fn&& fn);

  ParamBlock params_;
  bool track_arrivals_;
  Tick tick_ = 0;
  ClusterId next_id_ = 0;
  std::map<ClusterId, ClusterFeature> clusters_;
  std::unordered_map<TermId, TermStat> terms_;
  std::int64_t active_docs_ = 0;
};

/// icf as a free function, for symmetry with the other cluster operations.
inline double icf(TermId w, const ModelState& state) { return state.icf(w); }

}  // namespace evostream
