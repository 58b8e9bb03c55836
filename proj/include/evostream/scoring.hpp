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

#include <utility>
#include <vector>

#include "evostream/model_state.hpp"

namespace evostream {

/// What the scoring formulas see of a document: term counts, length and its
/// co-occurrence matrix. A cluster can stand in for a document (merging).
struct DocView {
  std::vector<std::pair<TermId, double>> counts;  // sorted by term
  double length = 0.0;
  const CoocMatrix* cooc = nullptr;

  static DocView of(const Document& d, const CoocMatrix& d_cooc);
  static DocView of(const ClusterFeature& z);

  std::size_t vocab_size() const { return counts.size(); }
  bool empty() const { return counts.empty(); }
};

/// Scalars a score needs besides the document and the cluster.
struct ScoreInputs {
  double docs = 0.0;        // D, including the incoming document when scoring one
  double vocab = 0.0;       // V, global vocabulary size (osdm)
  double mean_vocab = 0.0;  // mean vocabulary of the relevant active clusters
};

/// ln prod_{j=1}^{n} (a + j - 1). Exact term-by-term sum for small integral n,
/// lgamma difference otherwise. n = 0 yields 0.
double log_rising(double a, double n);

/// ln(m_z / (D - 1 + alpha D)) and ln(alpha D / (D - 1 + alpha D)).
double log_crp_existing(double cluster_docs, double docs, double alpha);
double log_crp_new(double docs, double alpha);

/// Sum of the cluster's co-occurrence scores over entries present in both
/// matrices.
double semantic_sum(const CoocMatrix& doc, const CoocMatrix& cluster);

bool shares_vocab(const DocView& d, const ClusterFeature& z);
std::size_t union_vocab(const DocView& d, const ClusterFeature& z);
/// Number of document terms absent from every active cluster.
std::size_t unseen_terms(const DocView& d, const ModelState& state);

/// Shared Dirichlet new-cluster score:
/// ln[(alpha D / (D-1+alpha D)) * prod_w prod_j (beta+j-1) / prod_i (Vbar beta + i - 1)].
double log_new_cluster(const DocView& d, double docs, double vbar, double alpha, double beta);

/// Word specificity 1 + tanh(r (r - (2 delta + 1))) + delta with
/// r = neighbours / frequency; 1 + delta for unseen terms.
double word_specificity(const TermStat* stat, int delta);
double word_specificity(double neighbors, double freq, int delta);

namespace osdm {
double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in);
double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in);
}  // namespace osdm

namespace osgm {
enum class Variant { kWithIcf, kEs };
double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in,
                      Variant variant = Variant::kWithIcf);
double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in);
}  // namespace osgm

namespace eindm {
double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in);
double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in);
}  // namespace eindm

namespace osmtc {
/// -infinity when the document shares no term with the cluster.
double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in);
double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in);
}  // namespace osmtc

}  // namespace evostream
