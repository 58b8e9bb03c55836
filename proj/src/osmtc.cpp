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

#include "evostream/osmtc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace evostream {

void LabelCooc::grow(LabelId l) {
  if (l < counts_.size()) return;
  counts_.resize(l + 1, 0);
  pairs_.resize(l + 1);
  for (auto& row : pairs_) row.resize(l + 1, 0);
}

void LabelCooc::add(const std::vector<LabelId>& labels) {
  for (LabelId a : labels) grow(a);
  for (LabelId a : labels) {
    ++counts_[a];
    for (LabelId b : labels) ++pairs_[a][b];
  }
}

std::int64_t LabelCooc::count(LabelId a) const { return a < counts_.size() ? counts_[a] : 0; }

double LabelCooc::at(LabelId a, LabelId b) const {
  if (a >= counts_.size() || b >= counts_.size() || counts_[a] == 0) return 0.0;
  return static_cast<double>(pairs_[a][b]) / static_cast<double>(counts_[a]);
}

ParamBlock osmtc_defaults() {
  ParamBlock p;
  p.alpha = 1e-4;
  p.beta = 0.01;
  p.gamma_recency = 5.0;
  p.gamma_penalty = 5.0;
  p.neighbors = 15;
  p.lambda = 1e-5;
  p.min_clusters_per_label = 3;
  p.init_docs = 600;
  return p;
}

std::size_t label_count(const std::vector<double>& log_scores) {
  if (log_scores.empty()) return 0;
  const double top = *std::max_element(log_scores.begin(), log_scores.end());
  std::vector<double> prob;
  double total = 0.0;
  for (double s : log_scores) {
    prob.push_back(std::exp(s - top));
    total += prob.back();
  }
  const double mean = 1.0 / static_cast<double>(log_scores.size());
  std::size_t n = 0;
  for (double p : prob)
    if (p / total > mean) ++n;
  return n;
}

std::vector<std::size_t> dmm_partition(const std::vector<const Document*>& docs,
                                       std::size_t k, std::uint64_t seed, int sweeps,
                                       double alpha, double beta) {
  std::vector<std::size_t> z(docs.size(), 0);
  if (k <= 1 || docs.empty()) return z;
  std::mt19937_64 rng(seed);
  std::unordered_set<TermId> vocab;
  for (const auto* d : docs)
    for (const auto& [w, n] : d->term_counts) vocab.insert(w);
  const double vbeta = static_cast<double>(vocab.size()) * beta;

  std::vector<double> m(k, 0.0), len(k, 0.0);
  std::vector<std::unordered_map<TermId, double>> nw(k);
  auto move = [&](std::size_t i, std::size_t c, double sign) {
    m[c] += sign;
    len[c] += sign * static_cast<double>(docs[i]->length());
    for (const auto& [w, n] : docs[i]->term_counts) nw[c][w] += sign * n;
  };
  std::uniform_int_distribution<std::size_t> init(0, k - 1);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    z[i] = init(rng);
    move(i, z[i], 1.0);
  }

  std::vector<double> logp(k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      move(i, z[i], -1.0);
      for (std::size_t c = 0; c < k; ++c) {
        double lp = std::log(m[c] + alpha);
        for (const auto& [w, n] : docs[i]->term_counts) {
          auto it = nw[c].find(w);
          const double base = (it == nw[c].end() ? 0.0 : it->second) + beta;
          lp += log_rising(base, n);
        }
        lp -= log_rising(len[c] + vbeta, static_cast<double>(docs[i]->length()));
        logp[c] = lp;
      }
      const double top = *std::max_element(logp.begin(), logp.end());
      double total = 0.0;
      for (double& v : logp) total += (v = std::exp(v - top));
      double u = unit(rng) * total;
      std::size_t pick = k - 1;
      for (std::size_t c = 0; c < k; ++c) {
        if (u < logp[c]) {
          pick = c;
          break;
        }
        u -= logp[c];
      }
      z[i] = pick;
      move(i, pick, 1.0);
    }
  }

  if (docs.size() >= k) {
    for (std::size_t c = 0; c < k; ++c) {
      if (m[c] > 0) continue;
      const auto big = static_cast<std::size_t>(
          std::max_element(m.begin(), m.end()) - m.begin());
      for (std::size_t i = docs.size(); i-- > 0;) {
        if (z[i] != big) continue;
        move(i, big, -1.0);
        z[i] = c;
        move(i, c, 1.0);
        break;
      }
    }
  }
  return z;
}

OsmtcModel::OsmtcModel(ParamBlock params, std::uint64_t seed)
    : state_(params, true), seed_(seed) {
  params.validate();
}

void OsmtcModel::initialize(const std::vector<Document>& warmup,
                            const std::vector<std::string>& label_names) {
  const auto& p = state_.params();
  std::set<LabelId> labels;
  for (const auto& d : warmup) {
    lc_.add(d.labels);
    labels.insert(d.labels.begin(), d.labels.end());
  }
  if (labels.empty()) throw ConfigError("warmup contains no labelled documents");
  const std::size_t per_label = std::max<std::size_t>(1, warmup.size() / labels.size());
  const std::size_t zmin = std::max<std::size_t>(1, p.min_clusters_per_label);

  std::map<LabelId, std::vector<const Document*>> members;
  for (const auto& d : warmup)
    for (LabelId l : d.labels)
      if (members[l].size() < per_label) members[l].push_back(&d);

  for (const auto& [l, docs] : members) {
    if (docs.size() < zmin) {
      const std::string name = l < label_names.size() ? label_names[l] : std::to_string(l);
      throw ConfigError("label '" + name + "' has " + std::to_string(docs.size()) +
                        " warmup documents, needs at least " + std::to_string(zmin));
    }
    const auto part = dmm_partition(docs, zmin, seed_ + l);
    std::vector<ClusterId> ids(zmin, kNoCluster);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const Document& d = *docs[i];
      const CoocMatrix dc = doc_cooc(d, {CoocMode::kFull, 1});
      ClusterId& id = ids[part[i]];
      if (id == kNoCluster) {
        id = state_.create_cluster(d, dc, l);
      } else {
        state_.add_document(id, d, dc);
      }
    }
  }
  initialized_ = true;
}

std::size_t OsmtcModel::clusters_with_label(LabelId l) const {
  std::size_t n = 0;
  for (const auto& [id, z] : state_.clusters())
    if (z.label && *z.label == l) ++n;
  return n;
}

std::vector<ModelEvent> OsmtcModel::drain_events() {
  std::vector<ModelEvent> out;
  out.swap(events_);
  return out;
}

void OsmtcModel::maintain() {
  state_.advance();
  const std::size_t zmin = state_.params().min_clusters_per_label;
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs());
  update_active_clusters(
      state_,
      [&](const DocView& x, const ClusterFeature& z) {
        return osmtc::score_existing(x, z, state_, in);
      },
      [&](const DocView& x, double vbar) {
        ScoreInputs nin = in;
        nin.mean_vocab = vbar;
        return osmtc::score_new(x, state_, nin);
      },
      events_,
      [&](const ClusterFeature& z) { return clusters_with_label(*z.label) > zmin; },
      [](const ClusterFeature& a, const ClusterFeature& b) { return a.label == b.label; });
  std::vector<ClusterId> ids;
  for (const auto& [id, z] : state_.clusters()) ids.push_back(id);
  for (ClusterId id : ids) state_.prune_cluster(id, state_.params().gamma_recency);
}

LabelId OsmtcModel::fallback_label() const {
  std::map<LabelId, std::int64_t> mass;
  for (const auto& [id, z] : state_.clusters())
    if (z.label) mass[*z.label] += z.docs;
  LabelId best = 0;
  std::int64_t most = -1;
  for (const auto& [l, m] : mass)
    if (m > most) {
      most = m;
      best = l;
    }
  return best;
}

Prediction OsmtcModel::predict(const Document& d) const {
  Prediction pred;
  pred.doc_id = d.id;
  const CoocMatrix dc = doc_cooc(d, {CoocMode::kFull, 1});
  const DocView v = DocView::of(d, dc);
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs() + 1);
  if (!v.empty()) {
    for (const auto& [id, z] : state_.clusters()) {
      if (!shares_vocab(v, z)) continue;
      pred.scored.emplace_back(id, osmtc::score_existing(v, z, state_, in));
    }
  }
  std::stable_sort(pred.scored.begin(), pred.scored.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (pred.scored.empty()) {
    pred.fallback = true;
    pred.labels = {fallback_label()};
    pred.l_count = 1;
    return pred;
  }

  const std::size_t k = std::max<std::size_t>(1, state_.params().neighbors);
  pred.neighbors = std::min(k, pred.scored.size());
  std::vector<double> top_scores;
  for (std::size_t i = 0; i < pred.neighbors; ++i) top_scores.push_back(pred.scored[i].second);
  pred.l_count = label_count(top_scores);

  std::map<LabelId, std::size_t> votes;
  for (std::size_t i = 0; i < pred.neighbors; ++i) {
    const auto& z = state_.cluster(pred.scored[i].first);
    if (z.label) ++votes[*z.label];
  }
  std::size_t most = 0;
  for (const auto& [l, c] : votes) most = std::max(most, c);
  std::vector<LabelId> y;
  for (const auto& [l, c] : votes)
    if (c == most) y.push_back(l);

  if (y.size() > 1) {
    std::vector<std::pair<double, LabelId>> ranked;
    for (LabelId l : y) {
      double dep = 0.0;
      for (std::size_t i = 0; i < pred.neighbors; ++i)
        dep += lc_.at(l, *state_.cluster(pred.scored[i].first).label);
      ranked.emplace_back(dep, l);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t keep = std::max<std::size_t>(1, std::min(pred.l_count, y.size()));
    y.clear();
    for (std::size_t i = 0; i < keep; ++i) y.push_back(ranked[i].second);
    std::sort(y.begin(), y.end());
  }
  pred.labels = y;
  return pred;
}

double OsmtcModel::new_score(const DocView& v, const Prediction& pred) const {
  ScoreInputs in;
  in.docs = static_cast<double>(state_.active_docs() + 1);
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& [id, s] : pred.scored) {
    if (!state_.has_cluster(id)) continue;
    total += static_cast<double>(state_.cluster(id).vocab_size());
    ++n;
  }
  in.mean_vocab = n > 0 ? total / static_cast<double>(n)
                        : mean_cluster_vocab(state_, static_cast<double>(v.vocab_size()));
  return osmtc::score_new(v, state_, in);
}

void OsmtcModel::update(const Document& d, const Prediction& pred,
                        const std::vector<LabelId>* truth) {
  std::vector<LabelId> y = pred.labels;
  if (truth) {
    const double factor = 1.0 - state_.params().gamma_penalty / 100.0;
    for (LabelId l : pred.labels) {
      if (std::binary_search(truth->begin(), truth->end(), l)) continue;
      for (const auto& [id, s] : pred.scored) {
        const auto& z = state_.cluster(id);
        if (!z.label || *z.label != l) continue;
        std::vector<TermId> shared;
        for (const auto& [w, n] : d.term_counts)
          if (z.has_term(w)) shared.push_back(w);
        state_.scale_terms(id, shared, factor);
        break;
      }
    }
    y = *truth;
  }
  if (d.empty()) return;

  const CoocMatrix dc = doc_cooc(d, {CoocMode::kFull, 1});
  const DocView v = DocView::of(d, dc);
  const double fresh = new_score(v, pred);
  for (LabelId l : y) {
    ClusterId best = kNoCluster;
    double best_score = 0.0;
    for (const auto& [id, s] : pred.scored) {
      const auto& z = state_.cluster(id);
      if (z.label && *z.label == l) {
        best = id;
        best_score = s;
        break;
      }
    }
    if (best != kNoCluster && best_score > fresh) {
      state_.add_document(best, d, dc);
    } else {
      state_.create_cluster(d, dc, l);
    }
  }
}

Prediction OsmtcModel::process(const Document& d, bool reveal) {
  maintain();
  Prediction pred = predict(d);
  update(d, pred, reveal ? &d.labels : nullptr);
  return pred;
}

}  // namespace evostream
