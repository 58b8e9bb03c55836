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
#include <map>
#include <utility>
#include <vector>

#include "evostream/types.hpp"

namespace evostream {

/// Sparse class x cluster counts.
class ContingencyTable {
 public:
  void add(std::int64_t cls, std::int64_t cluster, std::int64_t count = 1);
  /// Throws InvariantError when the cell would go negative.
  void remove(std::int64_t cls, std::int64_t cluster, std::int64_t count = 1);
  void merge(const ContingencyTable& other);

  std::int64_t at(std::int64_t cls, std::int64_t cluster) const;
  std::int64_t total() const { return total_; }
  const std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>& cells() const {
    return cells_;
  }
  const std::map<std::int64_t, std::int64_t>& class_totals() const { return classes_; }
  const std::map<std::int64_t, std::int64_t>& cluster_totals() const { return clusters_; }

  static ContingencyTable from_dense(const std::vector<std::vector<std::int64_t>>& rows);

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> cells_;
  std::map<std::int64_t, std::int64_t> classes_;
  std::map<std::int64_t, std::int64_t> clusters_;
  std::int64_t total_ = 0;
};

struct ClusteringScores {
  double purity = 0.0;
  double homogeneity = 0.0;
  double completeness = 0.0;
  double v_measure = 0.0;
  double nmi = 0.0;
};

/// Throws std::invalid_argument on an empty table.
ClusteringScores clustering_metrics(const ContingencyTable& t);

struct MultiLabelScores {
  double hamming_loss = 0.0;
  double example_accuracy = 0.0;
  double micro_recall = 0.0;
  double micro_recall_paper_variant = 0.0;
};

class MultiLabelTally {
 public:
  explicit MultiLabelTally(std::size_t label_space = 0) : m_(label_space) {}

  /// `truth` and `predicted` are sorted label sets. Rejects empty predictions.
  void add(const std::vector<LabelId>& truth, const std::vector<LabelId>& predicted);
  void merge(const MultiLabelTally& other);
  void set_label_space(std::size_t m) { m_ = m; }

  std::size_t label_space() const { return m_; }
  std::size_t documents() const { return docs_; }

  struct Row {
    std::size_t sym_diff = 0, inter = 0, uni = 0, predicted = 0, truth = 0;
  };
  static Row compare(const std::vector<LabelId>& truth, const std::vector<LabelId>& predicted);

 private:
  friend MultiLabelScores multilabel_metrics(const MultiLabelTally& t);
  std::size_t m_;
  std::size_t docs_ = 0;
  std::size_t sym_diff_ = 0;
  double jaccard_sum_ = 0.0;
  double precision_sum_ = 0.0;
  std::size_t inter_ = 0;
  std::size_t truth_ = 0;
};

/// Throws std::invalid_argument when the label space is 0 or no document was
/// tallied.
MultiLabelScores multilabel_metrics(const MultiLabelTally& t);

}  // namespace evostream
