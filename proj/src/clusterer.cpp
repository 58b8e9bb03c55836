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

#include "evostream/clusterer.hpp"

#include <set>

namespace evostream {

std::vector<ModelEvent> StreamClusterer::drain_events() {
  std::vector<ModelEvent> out;
  out.swap(events_);
  return out;
}

std::vector<Reassignment> StreamClusterer::drain_reassignments() {
  std::vector<Reassignment> out;
  out.swap(moves_);
  return out;
}

double mean_cluster_vocab(const ModelState& state, double fallback) {
  if (state.cluster_count() == 0) return fallback;
  double total = 0.0;
  for (const auto& [id, z] : state.clusters()) total += static_cast<double>(z.vocab_size());
  return total / static_cast<double>(state.cluster_count());
}

Choice choose_cluster(const ModelState& state, const DocView& d, bool gated,
                      const ExistingScorer& existing, const NewScorer& fresh) {
  Choice c;
  if (d.empty()) {
    std::int64_t most = 0;
    for (const auto& [id, z] : state.clusters())
      if (z.docs > most) {
        most = z.docs;
        c.best = id;
      }
    return c;
  }

  double vocab_total = 0.0;
  std::size_t sharing = 0;
  for (const auto& [id, z] : state.clusters()) {
    if (gated) {
      if (!shares_vocab(d, z)) continue;
      vocab_total += static_cast<double>(z.vocab_size());
      ++sharing;
    }
    const double s = existing(d, z);
    if (c.best == kNoCluster || s > c.best_score) {
      c.best = id;
      c.best_score = s;
    }
  }
  double vbar;
  if (sharing > 0) {
    vbar = vocab_total / static_cast<double>(sharing);
  } else {
    vbar = mean_cluster_vocab(state, static_cast<double>(d.vocab_size()));
  }
  c.new_score = fresh(d, vbar);
  c.create = c.best == kNoCluster || c.new_score > c.best_score;
  return c;
}

void update_active_clusters(
    ModelState& state, const ExistingScorer& existing, const NewScorer& fresh,
    std::vector<ModelEvent>& events,
    const std::function<bool(const ClusterFeature&)>& retirable,
    const std::function<bool(const ClusterFeature&, const ClusterFeature&)>& compatible) {
  const double lambda = state.params().lambda;
  const double eps = state.params().decay_epsilon;
  state.commit_decay_all(lambda);

  std::vector<ClusterId> old;
  for (const auto& [id, z] : state.clusters())
    if (z.weight < eps) old.push_back(id);
  if (old.empty()) return;
  const std::set<ClusterId> old_set(old.begin(), old.end());

  for (ClusterId o : old) {
    if (!state.has_cluster(o)) continue;
    const ClusterFeature& oz = state.cluster(o);
    if (retirable && !retirable(oz)) continue;
    const DocView v = DocView::of(oz);

    double vocab_total = 0.0;
    std::size_t active = 0;
    ClusterId best = kNoCluster;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const auto& [id, z] : state.clusters()) {
      if (old_set.count(id)) continue;
      vocab_total += static_cast<double>(z.vocab_size());
      ++active;
      if (compatible && !compatible(oz, z)) continue;
      if (!shares_vocab(v, z)) continue;
      const double s = existing(v, z);
      if (best == kNoCluster || s > best_score) {
        best = id;
        best_score = s;
      }
    }
    const double vbar = active > 0 ? vocab_total / static_cast<double>(active)
                                   : static_cast<double>(v.vocab_size());
    ModelEvent ev;
    ev.tick = state.tick();
    ev.cluster = o;
    if (best != kNoCluster && best_score >= fresh(v, vbar)) {
      state.merge_clusters(best, o);
      ev.kind = ModelEvent::Kind::kMerge;
      ev.target = best;
    } else {
      state.delete_cluster(o);
      ev.kind = ModelEvent::Kind::kDelete;
    }
    events.push_back(ev);
  }
}

}  // namespace evostream
