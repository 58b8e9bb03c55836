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

#include "evostream/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace evostream {

void ContingencyTable::add(std::int64_t cls, std::int64_t cluster, std::int64_t count) {
  if (count < 0) throw std::invalid_argument("negative count");
  if (count == 0) return;
  cells_[{cls, cluster}] += count;
  classes_[cls] += count;
  clusters_[cluster] += count;
  total_ += count;
}

void ContingencyTable::remove(std::int64_t cls, std::int64_t cluster, std::int64_t count) {
  auto it = cells_.find({cls, cluster});
  if (it == cells_.end() || it->second < count)
    throw InvariantError("contingency cell would go negative");
  auto drop = [&](auto& m, std::int64_t key) {
    auto j = m.find(key);
    if ((j->second -= count) == 0) m.erase(j);
  };
  if ((it->second -= count) == 0) cells_.erase(it);
  drop(classes_, cls);
  drop(clusters_, cluster);
  total_ -= count;
}

void ContingencyTable::merge(const ContingencyTable& other) {
  for (const auto& [key, n] : other.cells_) add(key.first, key.second, n);
}

std::int64_t ContingencyTable::at(std::int64_t cls, std::int64_t cluster) const {
  auto it = cells_.find({cls, cluster});
  return it == cells_.end() ? 0 : it->second;
}

ContingencyTable ContingencyTable::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  ContingencyTable t;
  for (std::size_t c = 0; c < rows.size(); ++c)
    for (std::size_t z = 0; z < rows[c].size(); ++z)
      t.add(static_cast<std::int64_t>(c), static_cast<std::int64_t>(z), rows[c][z]);
  return t;
}

namespace {

double entropy(const std::map<std::int64_t, std::int64_t>& marginal, double n) {
  double h = 0.0;
  for (const auto& [k, c] : marginal) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

ClusteringScores clustering_metrics(const ContingencyTable& t) {
  if (t.total() <= 0) throw std::invalid_argument("empty contingency table");
  const double n = static_cast<double>(t.total());
  const double hc = entropy(t.class_totals(), n);
  const double hz = entropy(t.cluster_totals(), n);

  double mi = 0.0;
  double h_c_given_z = 0.0;
  double h_z_given_c = 0.0;
  std::map<std::int64_t, std::int64_t> best;
  for (const auto& [key, c] : t.cells()) {
    const double nc = static_cast<double>(t.class_totals().at(key.first));
    const double nz = static_cast<double>(t.cluster_totals().at(key.second));
    const double v = static_cast<double>(c);
    mi += v / n * std::log(n * v / (nc * nz));
    h_c_given_z -= v / n * std::log(v / nz);
    h_z_given_c -= v / n * std::log(v / nc);
    auto& b = best[key.second];
    b = std::max(b, c);
  }

  ClusteringScores s;
  std::int64_t hits = 0;
  for (const auto& [z, b] : best) hits += b;
  s.purity = static_cast<double>(hits) / n;
  s.homogeneity = hc > 0.0 ? std::clamp(1.0 - h_c_given_z / hc, 0.0, 1.0) : 1.0;
  s.completeness = hz > 0.0 ? std::clamp(1.0 - h_z_given_c / hz, 0.0, 1.0) : 1.0;
  const double hv = s.homogeneity + s.completeness;
  s.v_measure = hv > 0.0 ? 2.0 * s.homogeneity * s.completeness / hv : 0.0;
  if (hc > 0.0 && hz > 0.0) {
    s.nmi = std::clamp(mi / std::sqrt(hc * hz), 0.0, 1.0);
  } else if (hc == 0.0 && hz == 0.0) {
    s.nmi = 1.0;
  } else {
    s.nmi = 0.0;
  }
  return s;
}

MultiLabelTally::Row MultiLabelTally::compare(const std::vector<LabelId>& truth,
                                              const std::vector<LabelId>& predicted) {
  std::vector<LabelId> inter, uni, diff;
  std::set_intersection(truth.begin(), truth.end(), predicted.begin(), predicted.end(),
                        std::back_inserter(inter));
  std::set_union(truth.begin(), truth.end(), predicted.begin(), predicted.end(),
                 std::back_inserter(uni));
  Row r;
  r.inter = inter.size();
  r.uni = uni.size();
  r.sym_diff = uni.size() - inter.size();
  r.predicted = predicted.size();
  r.truth = truth.size();
  return r;
}

void MultiLabelTally::add(const std::vector<LabelId>& truth,
                          const std::vector<LabelId>& predicted) {
  if (predicted.empty()) throw std::invalid_argument("empty prediction");
  const Row r = compare(truth, predicted);
  ++docs_;
  sym_diff_ += r.sym_diff;
  jaccard_sum_ += r.uni > 0 ? static_cast<double>(r.inter) / static_cast<double>(r.uni) : 1.0;
  precision_sum_ += static_cast<double>(r.inter) / static_cast<double>(r.predicted);
  inter_ += r.inter;
  truth_ += r.truth;
}

void MultiLabelTally::merge(const MultiLabelTally& o) {
  m_ = std::max(m_, o.m_);
  docs_ += o.docs_;
  sym_diff_ += o.sym_diff_;
  jaccard_sum_ += o.jaccard_sum_;
  precision_sum_ += o.precision_sum_;
  inter_ += o.inter_;
  truth_ += o.truth_;
}

MultiLabelScores multilabel_metrics(const MultiLabelTally& t) {
  if (t.m_ == 0) throw std::invalid_argument("label space is empty");
  if (t.docs_ == 0) throw std::invalid_argument("no documents tallied");
  const double docs = static_cast<double>(t.docs_);
  MultiLabelScores s;
  s.hamming_loss = static_cast<double>(t.sym_diff_) / (docs * static_cast<double>(t.m_));
  s.example_accuracy = t.jaccard_sum_ / docs;
  s.micro_recall = t.truth_ > 0
                       ? static_cast<double>(t.inter_) / static_cast<double>(t.truth_)
                       : 1.0;
  s.micro_recall_paper_variant = t.precision_sum_ / docs;
  return s;
}

}  // namespace evostream
