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

#include "evostream/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evostream {

DocView DocView::of(const Document& d, const CoocMatrix& d_cooc) {
  DocView v;
  v.counts.reserve(d.term_counts.size());
  for (const auto& [w, n] : d.term_counts) v.counts.emplace_back(w, n);
  v.length = static_cast<double>(d.length());
  v.cooc = &d_cooc;
  return v;
}

DocView DocView::of(const ClusterFeature& z) {
  DocView v;
  v.counts.assign(z.term_freq.begin(), z.term_freq.end());
  std::sort(v.counts.begin(), v.counts.end());
  v.length = z.total_terms;
  v.cooc = &z.cooc;
  return v;
}

double log_rising(double a, double n) {
  if (n <= 0.0) return 0.0;
  const double whole = std::round(n);
  if (std::abs(n - whole) < 1e-12 && whole <= 64.0) {
    double s = 0.0;
    const int count = static_cast<int>(whole);
    for (int j = 1; j <= count; ++j) s += std::log(a + j - 1);
    return s;
  }
  if (a <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::lgamma(a + n) - std::lgamma(a);
}

double log_crp_existing(double cluster_docs, double docs, double alpha) {
  return std::log(cluster_docs) - std::log(docs - 1.0 + alpha * docs);
}

double log_crp_new(double docs, double alpha) {
  return std::log(alpha * docs) - std::log(docs - 1.0 + alpha * docs);
}

double semantic_sum(const CoocMatrix& doc, const CoocMatrix& cluster) {
  std::int64_t units = 0;
  if (doc.entry_count() <= cluster.entry_count()) {
    for (const auto& [i, row] : doc.rows()) {
      const auto* crow = cluster.row(i);
      if (!crow) continue;
      for (const auto& [j, v] : row) {
        (void)v;
        auto it = crow->find(j);
        if (it != crow->end()) units += it->second;
      }
    }
  } else {
    for (const auto& [i, crow] : cluster.rows()) {
      const auto* drow = doc.row(i);
      if (!drow) continue;
      for (const auto& [j, v] : crow)
        if (drow->count(j)) units += v;
    }
  }
  return static_cast<double>(units) / static_cast<double>(CoocMatrix::kScale);
}

bool shares_vocab(const DocView& d, const ClusterFeature& z) {
  for (const auto& [w, n] : d.counts)
    if (z.has_term(w)) return true;
  return false;
}

std::size_t union_vocab(const DocView& d, const ClusterFeature& z) {
  std::size_t extra = 0;
  for (const auto& [w, n] : d.counts)
    if (!z.has_term(w)) ++extra;
  return z.vocab_size() + extra;
}

std::size_t unseen_terms(const DocView& d, const ModelState& state) {
  std::size_t n = 0;
  for (const auto& [w, c] : d.counts)
    if (state.cluster_frequency(w) == 0) ++n;
  return n;
}

double log_new_cluster(const DocView& d, double docs, double vbar, double alpha,
                       double beta) {
  double s = log_crp_new(docs, alpha);
  for (const auto& [w, n] : d.counts) s += log_rising(beta, n);
  s -= log_rising(vbar * beta, d.length);
  return s;
}

double word_specificity(double neighbors, double freq, int delta) {
  if (!(freq > 0.0)) return 1.0 + delta;
  const double r = neighbors / freq;
  const double g = r * (r - (2.0 * delta + 1.0));
  return 1.0 + std::tanh(g) + delta;
}

double word_specificity(const TermStat* stat, int delta) {
  if (!stat) return 1.0 + delta;
  return word_specificity(static_cast<double>(stat->neighbors), stat->freq, delta);
}

namespace {

// Shared body of the multinomial scores with per-term weight `weight(w, n_zw)`.
template <typename Weight>
double dirichlet_existing(const DocView& d, const ClusterFeature& z, double docs,
                          double alpha, double beta, double vocab_beta, Weight&& weight) {
  double s = log_crp_existing(static_cast<double>(z.docs), docs, alpha);
  for (const auto& [w, n] : d.counts) s += log_rising(weight(w, z.freq(w)) + beta, n);
  s -= log_rising(z.total_terms + vocab_beta, d.length);
  if (d.cooc) s += std::log1p(semantic_sum(*d.cooc, z.cooc));
  return s;
}

}  // namespace

namespace osdm {

double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in) {
  const auto& p = state.params();
  return dirichlet_existing(d, z, in.docs, p.alpha, p.beta, in.vocab * p.beta,
                            [&](TermId w, double nzw) { return nzw * state.icf(w); });
}

double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in) {
  const auto& p = state.params();
  return log_new_cluster(d, in.docs, in.vocab, p.alpha, p.beta);
}

}  // namespace osdm

namespace osgm {

double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in, Variant variant) {
  const auto& p = state.params();
  const double v = static_cast<double>(union_vocab(d, z));
  if (variant == Variant::kEs)
    return dirichlet_existing(d, z, in.docs, p.alpha, p.beta, v * p.beta,
                              [](TermId, double nzw) { return nzw; });
  return dirichlet_existing(d, z, in.docs, p.alpha, p.beta, v * p.beta,
                            [&](TermId w, double nzw) { return nzw * state.icf(w); });
}

double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in) {
  const auto& p = state.params();
  return log_new_cluster(d, in.docs, in.mean_vocab, p.alpha, p.beta);
}

}  // namespace osgm

namespace eindm {

double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in) {
  const auto& p = state.params();
  const double v = static_cast<double>(union_vocab(d, z));
  return dirichlet_existing(d, z, in.docs, p.alpha, p.beta, v * p.beta,
                            [&](TermId w, double nzw) {
                              if (nzw == 0.0) return 0.0;
                              return nzw * state.icf(w) *
                                     word_specificity(state.term_stat(w), p.window);
                            });
}

double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in) {
  return osgm::score_new(d, state, in);
}

}  // namespace eindm

namespace osmtc {

double score_existing(const DocView& d, const ClusterFeature& z,
                      const ModelState& state, const ScoreInputs& in) {
  const auto& p = state.params();
  double numer = 0.0;
  std::size_t shared = 0;
  for (const auto& [w, n] : d.counts) {
    const double nzw = z.freq(w);
    if (nzw == 0.0 && !z.has_term(w)) continue;
    ++shared;
    // prod_{j=1}^{N} (x + beta + j) == rising factorial starting at x + beta + 1
    numer += log_rising(nzw * state.icf(w) + p.beta + 1.0, n);
  }
  if (shared == 0) return -std::numeric_limits<double>::infinity();
  const double vd = static_cast<double>(d.vocab_size());
  const double outside = vd - static_cast<double>(shared);
  const double exponent = std::max(outside / vd, 1.0 / vd);
  const double v = static_cast<double>(union_vocab(d, z));
  double s = log_crp_existing(static_cast<double>(z.docs), in.docs, p.alpha);
  s += exponent * numer;
  s -= log_rising(z.total_terms + v * p.beta + 1.0, d.length);
  if (d.cooc) s += std::log1p(semantic_sum(*d.cooc, z.cooc));
  return s;
}

double score_new(const DocView& d, const ModelState& state, const ScoreInputs& in) {
  return osgm::score_new(d, state, in);
}

}  // namespace osmtc

}  // namespace evostream
