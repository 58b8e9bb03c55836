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

#include "evostream/osgm.hpp"

namespace evostream {

ParamBlock osgm_defaults(osgm::Variant variant) {
  ParamBlock p;
  p.alpha = variant == osgm::Variant::kEs ? 0.09 : 0.05;
  p.beta = variant == osgm::Variant::kEs ? 0.006 : 0.004;
  p.gamma_recency = 10.0;
  p.lambda = 1e-6;
  return p;
}

OsgmModel::OsgmModel(osgm::Variant variant) : OsgmModel(osgm_defaults(variant), variant) {}

OsgmModel::OsgmModel(ParamBlock params, osgm::Variant variant)
    : state_(params, true), variant_(variant) {
  params.validate();
}

void OsgmModel::update_active() {
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs());
  update_active_clusters(
      state_,
      [&](const DocView& x, const ClusterFeature& z) {
        return osgm::score_existing(x, z, state_, in, variant_);
      },
      [&](const DocView& x, double vbar) {
        ScoreInputs nin = in;
        nin.mean_vocab = vbar;
        return osgm::score_new(x, state_, nin);
      },
      events_);
}

Assignment OsgmModel::process(const Document& d) {
  state_.advance();
  update_active();
  std::vector<ClusterId> ids;
  for (const auto& [id, z] : state_.clusters()) ids.push_back(id);
  for (ClusterId id : ids) state_.prune_cluster(id, state_.params().gamma_recency);

  const CoocMatrix dc = doc_cooc(d, {CoocMode::kFull, 1});
  const DocView v = DocView::of(d, dc);
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs() + 1);

  const Choice c = choose_cluster(
      state_, v, true,
      [&](const DocView& x, const ClusterFeature& z) {
        return osgm::score_existing(x, z, state_, in, variant_);
      },
      [&](const DocView& x, double vbar) {
        ScoreInputs nin = in;
        nin.mean_vocab = vbar;
        return osgm::score_new(x, state_, nin);
      });

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
