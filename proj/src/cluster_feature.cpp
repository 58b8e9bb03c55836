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

#include "evostream/cluster_feature.hpp"

#include <algorithm>
#include <cmath>

namespace evostream {

void cf_add(ClusterFeature& z, const Document& d, const CoocMatrix& d_cooc, Tick tick) {
  ++z.docs;
  for (const auto& [w, n] : d.term_counts) {
    z.term_freq[w] += n;
    z.total_terms += n;
    if (z.track_arrivals) {
      auto& ta = z.arrivals[w];
      ta.ticks.push_back(static_cast<std::uint32_t>(z.docs));
      ta.sum += static_cast<std::uint64_t>(z.docs);
    }
  }
  z.cooc.add(d_cooc);
  z.weight = 1.0;
  z.weight_tick = tick;
  z.last_update = tick;
  z.prune_dirty = true;
}

void cf_remove(ClusterFeature& z, const Document& d, const CoocMatrix& d_cooc) {
  if (z.docs < 1) throw InvariantError("cf_remove: cluster is empty");
  for (const auto& [w, n] : d.term_counts) {
    if (z.freq(w) + 1e-9 < n)
      throw InvariantError("cf_remove: document term missing from cluster");
  }
  for (const auto& [i, row] : d_cooc.rows())
    for (const auto& [j, v] : row)
      if (z.cooc.raw(i, j) < v)
        throw InvariantError("cf_remove: co-occurrence entry missing from cluster");

  --z.docs;
  for (const auto& [w, n] : d.term_counts) {
    auto it = z.term_freq.find(w);
    it->second -= n;
    z.total_terms -= n;
    if (it->second <= 1e-9) {
      z.total_terms -= it->second;
      z.term_freq.erase(it);
      z.arrivals.erase(w);
    }
  }
  if (z.term_freq.empty()) z.total_terms = 0.0;
  z.cooc.subtract(d_cooc);
  z.prune_dirty = true;
}

void cf_merge(ClusterFeature& target, const ClusterFeature& source) {
  const auto shift = static_cast<std::uint32_t>(target.docs);
  target.docs += source.docs;
  for (const auto& [w, n] : source.term_freq) {
    target.term_freq[w] += n;
    target.total_terms += n;
  }
  target.cooc.add(source.cooc);
  if (target.track_arrivals) {
    for (const auto& [w, ta] : source.arrivals) {
      auto& dst = target.arrivals[w];
      for (auto t : ta.ticks) {
        dst.ticks.push_back(t + shift);
        dst.sum += static_cast<std::uint64_t>(t) + shift;
      }
      std::sort(dst.ticks.begin(), dst.ticks.end());
    }
  }
  target.prune_dirty = true;
}

double decay_weight(const ClusterFeature& z, Tick tick, double lambda) {
  if (tick <= z.weight_tick) return z.weight;
  return z.weight * std::exp2(-lambda * static_cast<double>(tick - z.weight_tick));
}

void commit_decay(ClusterFeature& z, Tick tick, double lambda) {
  z.weight = decay_weight(z, tick, lambda);
  z.weight_tick = std::max(tick, z.weight_tick);
}

double triangular(double t) { return (t * t + t) / 2.0; }

double term_recency(const ClusterFeature& z, TermId w) {
  auto it = z.arrivals.find(w);
  if (it == z.arrivals.end()) return 0.0;
  const double age = triangular(static_cast<double>(z.docs)) - triangular(1.0) + 1.0;
  return static_cast<double>(it->second.sum) * 100.0 / age;
}

void remove_term(ClusterFeature& z, TermId w) {
  auto it = z.term_freq.find(w);
  if (it != z.term_freq.end()) {
    z.total_terms -= it->second;
    z.term_freq.erase(it);
  }
  if (z.term_freq.empty()) z.total_terms = 0.0;
  z.cooc.erase_term(w);
  z.arrivals.erase(w);
}

std::vector<TermId> stale_terms(const ClusterFeature& z, double gamma) {
  std::vector<TermId> stale;
  if (!z.track_arrivals || z.docs < 1) return stale;
  const double age = triangular(static_cast<double>(z.docs)) - triangular(1.0) + 1.0;
  for (const auto& [w, ta] : z.arrivals)
    if (static_cast<double>(ta.sum) * 100.0 / age < gamma) stale.push_back(w);
  std::sort(stale.begin(), stale.end());
  return stale;
}

std::vector<TermId> prune_terms(ClusterFeature& z, double gamma) {
  std::vector<TermId> removed = stale_terms(z, gamma);
  for (TermId w : removed) remove_term(z, w);
  z.prune_dirty = false;
  return removed;
}

}  // namespace evostream
