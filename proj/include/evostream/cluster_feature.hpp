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
#include <unordered_map>
#include <vector>

#include "evostream/cooc.hpp"
#include "evostream/text.hpp"
#include "evostream/types.hpp"

namespace evostream {

/// Cluster-local arrival ticks of one term, with their running sum.
struct TermArrivals {
  std::vector<std::uint32_t> ticks;
  std::uint64_t sum = 0;

  bool operator==(const TermArrivals&) const = default;
};

/// Evolving micro-cluster summary.
///
/// `term_freq` holds n_z^w and `total_terms` holds n_z; they are doubles
/// because penalty updates scale counts by non-integer factors. `weight` is the
/// decay weight l_z as of tick `weight_tick`; `last_update` is u_z.
struct ClusterFeature {
  ClusterId id = kNoCluster;
  std::int64_t docs = 0;
  std::unordered_map<TermId, double> term_freq;
  double total_terms = 0.0;
  CoocMatrix cooc;
  double weight = 1.0;
  Tick weight_tick = 0;
  Tick last_update = 0;
  bool track_arrivals = false;
  std::unordered_map<TermId, TermArrivals> arrivals;
  std::optional<LabelId> label;
  // Set whenever docs or arrivals change; lets term pruning skip clusters
  // whose recency scores cannot have moved.
  bool prune_dirty = true;

  double freq(TermId w) const {
    auto it = term_freq.find(w);
    return it == term_freq.end() ? 0.0 : it->second;
  }
  bool has_term(TermId w) const { return term_freq.count(w) != 0; }
  std::size_t vocab_size() const { return term_freq.size(); }
};

/// Adds a document (with its precomputed co-occurrence) at model tick `tick`.
void cf_add(ClusterFeature& z, const Document& d, const CoocMatrix& d_cooc, Tick tick);
/// Exact inverse of cf_add on docs, term_freq, total_terms and cooc. Terms and
/// entries reaching zero are dropped. Throws InvariantError if `d` cannot be
/// part of `z`.
void cf_remove(ClusterFeature& z, const Document& d, const CoocMatrix& d_cooc);
/// Folds `source` into `target`: counts and co-occurrence add up, and the
/// source's arrival ticks are shifted by the target's pre-merge size.
void cf_merge(ClusterFeature& target, const ClusterFeature& source);

/// l_z * 2^(-lambda * (tick - anchor)), where the anchor is the tick at which
/// `weight` was last committed (u_z unless decay was committed since).
double decay_weight(const ClusterFeature& z, Tick tick, double lambda);
/// Stores decay_weight(z, tick, lambda) back into z.
void commit_decay(ClusterFeature& z, Tick tick, double lambda);

/// Triangular number (T^2 + T) / 2.
double triangular(double t);

/// 100 * sum(arrival ticks of w) / Age_z with Age_z = tri(m_z) - tri(1) + 1.
double term_recency(const ClusterFeature& z, TermId w);
/// Terms whose recency is below `gamma`, sorted.
std::vector<TermId> stale_terms(const ClusterFeature& z, double gamma);
/// Removes every term whose recency is below `gamma`; returns the removed
/// terms. Never touches docs.
std::vector<TermId> prune_terms(ClusterFeature& z, double gamma);
/// Removes a term from term_freq, cooc and arrivals.
void remove_term(ClusterFeature& z, TermId w);

}  // namespace evostream
