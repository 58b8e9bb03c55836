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

#include "evostream/osdm.hpp"

namespace evostream {

ParamBlock osdm_defaults() {
  ParamBlock p;
  p.alpha = 2e-3;
  p.beta = 4e-5;
  p.lambda = 6e-6;
  return p;
}

OsdmModel::OsdmModel(ParamBlock params) : state_(params, false) { params.validate(); }

Assignment OsdmModel::process(const Document& d) {
  state_.advance();
  const double lambda = state_.params().lambda;
  const double eps = state_.params().decay_epsilon;
  std::vector<ClusterId> old;
  for (const auto& [id, z] : state_.clusters())
    if (decay_weight(z, state_.tick(), lambda) < eps) old.push_back(id);
  for (ClusterId id : old) {
    state_.delete_cluster(id);
    ModelEvent ev;
    ev.kind = ModelEvent::Kind::kDelete;
    ev.tick = state_.tick();
    ev.cluster = id;
    events_.push_back(ev);
  }
  state_.commit_decay_all(lambda);

  const CoocMatrix dc = doc_cooc(d, {CoocMode::kFull, 1});
  const DocView v = DocView::of(d, dc);
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs() + 1);
  in.vocab = static_cast<double>(state_.active_vocab_size() + unseen_terms(v, state_));

  const Choice c = choose_cluster(
      state_, v, false,
      [&](const DocView& x, const ClusterFeature& z) {
        return osdm::score_existing(x, z, state_, in);
      },
      [&](const DocView& x, double) { return osdm::score_new(x, state_, in); });

  Assignment a;
  if (!d.empty() && c.create) {
    a.cluster = state_.create_cluster(d, dc);
    a.is_new = true;
  } else if (c.best != kNoCluster) {
    state_.add_document(c.best, d, dc);
    a.cluster = c.best;
  }
  a.score_margin = c.best_score - c.new_score;
  a.active_clusters = state_.cluster_count();
  log_.push_back(a.cluster);
  return a;
}

}  // namespace evostream
