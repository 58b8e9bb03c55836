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

#include "evostream/eindm.hpp"

#include <algorithm>
#include <numeric>

namespace evostream {

ParamBlock eindm_defaults() {
  ParamBlock p;
  p.alpha = 0.04;
  p.beta = 5e-4;
  p.lambda = 6e-6;
  p.infer_interval = 60;
  p.window = 1;
  p.buffer_size = 500;
  p.resample_count = 30;
  return p;
}

EindmModel::EindmModel(ParamBlock params, std::uint64_t seed)
    : state_(params, false), rng_(seed) {
  params.validate();
}

std::vector<std::string> EindmModel::buffered_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : buffer_) ids.push_back(e.doc.id);
  return ids;
}

ClusterId EindmModel::resolve(ClusterId id) const {
  for (auto it = redirect_.find(id); it != redirect_.end(); it = redirect_.find(id))
    id = it->second;
  return id;
}

ClusterId EindmModel::current_cluster(std::size_t index) const {
  if (index >= log_.size() || log_[index] == kNoCluster) return kNoCluster;
  const ClusterId id = resolve(log_[index]);
  return state_.has_cluster(id) ? id : kNoCluster;
}

Choice EindmModel::choose(const DocView& v) {
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs() + 1);
  return choose_cluster(
      state_, v, true,
      [&](const DocView& x, const ClusterFeature& z) {
        return eindm::score_existing(x, z, state_, in);
      },
      [&](const DocView& x, double vbar) {
        ScoreInputs nin = in;
        nin.mean_vocab = vbar;
        return eindm::score_new(x, state_, nin);
      });
}

ClusterId EindmModel::place(const Document& d, const CoocMatrix& dc, const Choice& c) {
  if (!d.empty() && c.create) return state_.create_cluster(d, dc);
  if (c.best != kNoCluster) state_.add_document(c.best, d, dc);
  return c.best;
}

void EindmModel::update_active() {
  const std::size_t first = events_.size();
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs());
  update_active_clusters(
      state_,
      [&](const DocView& x, const ClusterFeature& z) {
        return eindm::score_existing(x, z, state_, in);
      },
      [&](const DocView& x, double vbar) {
        ScoreInputs nin = in;
        nin.mean_vocab = vbar;
        return eindm::score_new(x, state_, nin);
      },
      events_);
  for (std::size_t i = first; i < events_.size(); ++i)
    if (events_[i].kind == ModelEvent::Kind::kMerge)
      redirect_[events_[i].cluster] = events_[i].target;
}

Assignment EindmModel::process(const Document& d) {
  state_.advance();
  const auto& p = state_.params();
  const CoocMatrix dc = doc_cooc(d, {CoocMode::kWindow, p.window});
  const DocView v = DocView::of(d, dc);
  const Choice c = choose(v);

  Assignment a;
  a.cluster = place(d, dc, c);
  a.is_new = !d.empty() && c.create;
  a.score_margin = c.best_score - c.new_score;
  log_.push_back(a.cluster);

  if (p.buffer_size > 0) {
    if (buffer_.size() >= p.buffer_size) buffer_.pop_front();
    buffer_.push_back({d, dc, log_.size() - 1});
  }
  update_active();
  if (p.infer_interval > 0 && state_.tick() % p.infer_interval == 0) episodic_infer();
  a.active_clusters = state_.cluster_count();
  return a;
}

void EindmModel::episodic_infer() {
  const std::size_t eta = std::min(state_.params().resample_count, buffer_.size());
  ModelEvent ev;
  ev.kind = ModelEvent::Kind::kInference;
  ev.tick = state_.tick();
  ev.clusters_before = state_.cluster_count();
  if (eta > 0) {
    // partial Fisher-Yates: the first eta slots are a uniform sample
    std::vector<std::size_t> slots(buffer_.size());
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    for (std::size_t i = 0; i < eta; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, slots.size() - 1);
      std::swap(slots[i], slots[pick(rng_)]);
    }
    for (std::size_t s = 0; s < eta; ++s) {
      const Entry& e = buffer_[slots[s]];
      const ClusterId cur = current_cluster(e.index);
      if (cur == kNoCluster) continue;
      state_.remove_document(cur, e.doc, e.cooc);
      if (state_.cluster(cur).docs == 0) state_.delete_cluster(cur);
      const Choice c = choose(DocView::of(e.doc, e.cooc));
      const ClusterId next = place(e.doc, e.cooc, c);
      ++ev.resampled;
      if (next != cur) {
        ++ev.moved;
        moves_.push_back({e.index, log_[e.index], next});
      }
      log_[e.index] = next;
    }
  }
  ev.clusters_after = state_.cluster_count();
  events_.push_back(ev);
}

}  // namespace evostream
