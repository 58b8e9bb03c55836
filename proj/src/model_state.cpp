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

#include "evostream/model_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace evostream {

void ParamBlock::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0)) throw ConfigError(std::string(name) + " must be >= 0");
  };
  nonneg(alpha, "alpha");
  nonneg(beta, "beta");
  nonneg(lambda, "lambda");
  nonneg(decay_epsilon, "decay_epsilon");
  if (gamma_recency < 0 || gamma_recency > 100)
    throw ConfigError("gamma_recency must be in [0, 100]");
  if (gamma_penalty < 0 || gamma_penalty > 100)
    throw ConfigError("gamma_penalty must be in [0, 100]");
  if (window < 0) throw ConfigError("window must be >= 0");
  if (buffer_size < resample_count)
    throw ConfigError("buffer_size (psi) must be >= resample_count (eta)");
}

ModelState::ModelState(ParamBlock params, bool track_arrivals)
    : params_(params), track_arrivals_(track_arrivals) {}

const ClusterFeature& ModelState::cluster(ClusterId id) const {
  auto it = clusters_.find(id);
  if (it == clusters_.end())
    throw InvariantError("unknown cluster " + std::to_string(id));
  return it->second;
}

ClusterFeature& ModelState::mut(ClusterId id) {
  auto it = clusters_.find(id);
  if (it == clusters_.end())
    throw InvariantError("unknown cluster " + std::to_string(id));
  return it->second;
}

std::uint32_t ModelState::cluster_frequency(TermId w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second.clusters;
}

const TermStat* ModelState::term_stat(TermId w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? nullptr : &it->second;
}

std::size_t ModelState::cooc_entries() const {
  std::size_t n = 0;
  for (const auto& [id, z] : clusters_) n += z.cooc.entry_count();
  return n;
}

double ModelState::icf(TermId w) const {
  const double zs = static_cast<double>(clusters_.size());
  const double in = std::max<double>(1.0, cluster_frequency(w));
  return std::log(zs / in);
}

void ModelState::enroll(const ClusterFeature& z) {
  active_docs_ += z.docs;
  for (const auto& [w, n] : z.term_freq) {
    auto& st = terms_[w];
    ++st.clusters;
    st.freq += n;
    st.neighbors += static_cast<std::int64_t>(z.cooc.neighbor_count(w));
  }
}

void ModelState::retire(const ClusterFeature& z) {
  active_docs_ -= z.docs;
  for (const auto& [w, n] : z.term_freq) {
    auto it = terms_.find(w);
    if (it == terms_.end()) throw InvariantError("term bookkeeping out of sync");
    auto& st = it->second;
    --st.clusters;
    st.freq -= n;
    st.neighbors -= static_cast<std::int64_t>(z.cooc.neighbor_count(w));
    if (st.clusters == 0) terms_.erase(it);
  }
}

template <typename Fn>
void ModelState::mutate(ClusterId id, const std::vector<TermId>& touched_in, Fn&& fn) {
  ClusterFeature& z = mut(id);
  std::vector<TermId> touched = touched_in;
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  struct Snap {
    bool present;
    double freq;
    std::int64_t neighbors;
  };
  std::vector<Snap> before;
  before.reserve(touched.size());
  for (TermId w : touched)
    before.push_back({z.has_term(w), z.freq(w),
                      static_cast<std::int64_t>(z.cooc.neighbor_count(w))});
  const auto docs_before = z.docs;

  fn(z);

  active_docs_ += z.docs - docs_before;
  for (std::size_t k = 0; k < touched.size(); ++k) {
    const TermId w = touched[k];
    const bool present = z.has_term(w);
    const auto& b = before[k];
    const double dfreq = z.freq(w) - b.freq;
    const auto dnb = static_cast<std::int64_t>(z.cooc.neighbor_count(w)) - b.neighbors;
    if (!b.present && !present && dnb == 0) continue;
    auto& st = terms_[w];
    if (present && !b.present) ++st.clusters;
    if (!present && b.present) --st.clusters;
    st.freq += dfreq;
    st.neighbors += dnb;
    if (st.clusters == 0) terms_.erase(w);
  }
}

ClusterId ModelState::create_cluster(const Document& d, const CoocMatrix& d_cooc,
                                     std::optional<LabelId> label) {
  ClusterFeature z;
  z.track_arrivals = track_arrivals_;
  z.label = label;
  cf_add(z, d, d_cooc, tick_);
  return adopt_cluster(std::move(z));
}

ClusterId ModelState::adopt_cluster(ClusterFeature z) {
  const ClusterId id = next_id_++;
  z.id = id;
  enroll(z);
  clusters_.emplace(id, std::move(z));
  return id;
}

void ModelState::add_document(ClusterId id, const Document& d, const CoocMatrix& d_cooc) {
  std::vector<TermId> touched;
  touched.reserve(d.term_counts.size());
  for (const auto& [w, n] : d.term_counts) touched.push_back(w);
  mutate(id, touched, [&](ClusterFeature& z) { cf_add(z, d, d_cooc, tick_); });
}

void ModelState::remove_document(ClusterId id, const Document& d, const CoocMatrix& d_cooc) {
  std::vector<TermId> touched;
  for (const auto& [w, n] : d.term_counts) touched.push_back(w);
  mutate(id, touched, [&](ClusterFeature& z) { cf_remove(z, d, d_cooc); });
}

void ModelState::delete_cluster(ClusterId id) {
  auto it = clusters_.find(id);
  if (it == clusters_.end())
    throw InvariantError("unknown cluster " + std::to_string(id));
  retire(it->second);
  clusters_.erase(it);
}

void ModelState::merge_clusters(ClusterId target, ClusterId source) {
  if (target == source) throw InvariantError("cannot merge a cluster into itself");
  auto src_it = clusters_.find(source);
  if (src_it == clusters_.end())
    throw InvariantError("unknown cluster " + std::to_string(source));
  ClusterFeature src = std::move(src_it->second);
  retire(src);
  clusters_.erase(src_it);
  std::vector<TermId> touched;
  touched.reserve(src.term_freq.size());
  for (const auto& [w, n] : src.term_freq) touched.push_back(w);
  mutate(target, touched, [&](ClusterFeature& z) { cf_merge(z, src); });
}

std::vector<TermId> ModelState::prune_cluster(ClusterId id, double gamma) {
  ClusterFeature& z = mut(id);
  if (!z.prune_dirty) return {};
  std::vector<TermId> stale = stale_terms(z, gamma);
  if (stale.empty()) {
    z.prune_dirty = false;
    return stale;
  }
  std::vector<TermId> touched = stale;
  for (TermId w : stale)
    if (const auto* row = z.cooc.row(w))
      for (const auto& [j, v] : *row) touched.push_back(j);
  mutate(id, touched, [&](ClusterFeature& c) {
    for (TermId w : stale) remove_term(c, w);
    c.prune_dirty = false;
  });
  return stale;
}

void ModelState::scale_terms(ClusterId id, const std::vector<TermId>& terms, double factor) {
  if (factor < 0.0 || factor > 1.0) throw InvariantError("scale factor outside [0, 1]");
  ClusterFeature& z = mut(id);
  std::vector<TermId> touched = terms;
  for (TermId w : terms)
    if (const auto* row = z.cooc.row(w))
      for (const auto& [j, v] : *row) touched.push_back(j);
  mutate(id, touched, [&](ClusterFeature& c) {
    for (TermId w : terms) {
      auto it = c.term_freq.find(w);
      if (it == c.term_freq.end()) continue;
      it->second *= factor;
      if (it->second <= 1e-12) remove_term(c, w);
    }
    double total = 0.0;
    for (const auto& [w, n] : c.term_freq) total += n;
    c.total_terms = total;
  });
}

void ModelState::commit_decay_all(double lambda) {
  for (auto& [id, z] : clusters_) commit_decay(z, tick_, lambda);
}

void ModelState::check_invariants() const {
  std::int64_t docs = 0;
  std::unordered_map<TermId, TermStat> recount;
  for (const auto& [id, z] : clusters_) {
    if (z.id != id) throw InvariantError("cluster id mismatch");
    if (z.docs < 1) throw InvariantError("active cluster with no documents");
    if (!(z.weight > 0.0 && z.weight <= 1.0)) throw InvariantError("weight outside (0, 1]");
    docs += z.docs;
    double total = 0.0;
    for (const auto& [w, n] : z.term_freq) {
      total += n;
      auto& st = recount[w];
      ++st.clusters;
      st.freq += n;
      st.neighbors += static_cast<std::int64_t>(z.cooc.neighbor_count(w));
    }
    if (std::abs(total - z.total_terms) > 1e-6 * std::max(1.0, total))
      throw InvariantError("n_z != sum of n_z^w in cluster " + std::to_string(id));
    for (const auto& [i, row] : z.cooc.rows()) {
      if (!z.has_term(i)) throw InvariantError("co-occurrence row for absent term");
      for (const auto& [j, v] : row)
        if (!z.has_term(j)) throw InvariantError("co-occurrence column for absent term");
    }
    if (z.track_arrivals) {
      for (const auto& [w, ta] : z.arrivals) {
        if (!z.has_term(w)) throw InvariantError("arrivals for absent term");
        if (!std::is_sorted(ta.ticks.begin(), ta.ticks.end()))
          throw InvariantError("arrival ticks not sorted");
        if (!ta.ticks.empty() && ta.ticks.back() > z.docs)
          throw InvariantError("arrival tick beyond cluster size");
      }
    }
  }
  if (docs != active_docs_) throw InvariantError("D != sum of m_z");
  if (recount.size() != terms_.size()) throw InvariantError("active vocabulary out of sync");
  for (const auto& [w, st] : recount) {
    auto it = terms_.find(w);
    if (it == terms_.end() || it->second.clusters != st.clusters ||
        it->second.neighbors != st.neighbors ||
        std::abs(it->second.freq - st.freq) > 1e-6 * std::max(1.0, st.freq))
      throw InvariantError("term statistics out of sync for term " + std::to_string(w));
  }
}

}  // namespace evostream
