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

// Random small models built twice: once through the library, once as plain
// reference clusters.
#pragma once

#include <random>

#include "evostream/model_state.hpp"
#include "evostream/scoring.hpp"
#include "reference.hpp"

namespace evostream::testing {

struct Fixture {
  ModelState state;
  std::vector<ClusterId> ids;
  std::vector<reference::Cluster> ref;
  Document doc;
  CoocMatrix doc_cooc_matrix;
  reference::Doc ref_doc{{}};

  Fixture(ParamBlock p) : state(p) {}
  DocView view() const { return DocView::of(doc, doc_cooc_matrix); }
};

inline std::vector<TermId> random_tokens(std::mt19937_64& rng, int vocab, int max_len) {
  std::vector<TermId> t;
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_len));
  for (int i = 0; i < n; ++i) t.push_back(static_cast<TermId>(rng() % static_cast<unsigned>(vocab)));
  return t;
}

/// Up to five clusters of up to four documents over a small vocabulary, and an
/// incoming document of at most six tokens.
inline Fixture make_fixture(std::mt19937_64& rng, ParamBlock p, bool window) {
  Fixture f(p);
  const CoocOptions opts{window ? CoocMode::kWindow : CoocMode::kFull, p.window};
  const int vocab = 4 + static_cast<int>(rng() % 10);
  const int clusters = 1 + static_cast<int>(rng() % 5);
  for (int c = 0; c < clusters; ++c) {
    reference::Cluster rz;
    ClusterId id = kNoCluster;
    const int docs = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < docs; ++k) {
      auto toks = random_tokens(rng, vocab, 6);
      Document d = Document::from_tokens("f", toks);
      CoocMatrix dc = doc_cooc(d, opts);
      if (id == kNoCluster)
        id = f.state.create_cluster(d, dc);
      else
        f.state.add_document(id, d, dc);
      rz.add(reference::Doc(toks), window, p.window);
    }
    f.ids.push_back(id);
    f.ref.push_back(rz);
  }
  auto toks = random_tokens(rng, vocab + 3, 6);
  f.doc = Document::from_tokens("x", toks);
  f.doc_cooc_matrix = doc_cooc(f.doc, opts);
  f.ref_doc = reference::Doc(toks);
  return f;
}

inline ParamBlock random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ParamBlock p;
  p.alpha = std::pow(10.0, -4.0 + 4.0 * u(rng));
  p.beta = std::pow(10.0, -5.0 + 4.0 * u(rng));
  p.window = 1 + static_cast<int>(rng() % 2);
  return p;
}

inline bool close_log(double got, long double want, double rel = 1e-9) {
  const long double tol = rel * std::max<long double>(1.0L, std::fabs(want));
  return std::fabs(static_cast<long double>(got) - want) <= tol;
}

}  // namespace evostream::testing
