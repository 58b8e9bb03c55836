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

#include <doctest.h>

#include <random>
#include <set>

#include "evostream/cooc.hpp"

using namespace evostream;

TEST_CASE("full-document ratios") {
  // w1:3 w2:2 w3:3
  Document d = Document::from_counts("d", {{1, 3}, {2, 2}, {3, 3}});
  CoocMatrix m = doc_cooc(d, {});
  CHECK(m.get(1, 2) == 0.6);
  CHECK(m.get(2, 1) == 0.4);
  CHECK(m.get(1, 3) == 0.5);
  CHECK(m.get(2, 3) == 0.4);
  CHECK(m.get(3, 2) == 0.6);
  CHECK(m.entry_count() == 6);
  CHECK_FALSE(m.contains(1, 1));
}

TEST_CASE("single-term documents have no pairs") {
  Document d = Document::from_counts("d", {{4, 5}});
  CHECK(doc_cooc(d, {}).empty());
  CHECK(doc_cooc(d, {CoocMode::kWindow, 3}).empty());
  CHECK(doc_cooc(Document{}, {}).empty());
}

TEST_CASE("window pairs adjacent tokens only") {
  Document d = Document::from_tokens("d", {0, 1, 2, 3});
  CoocMatrix m = doc_cooc(d, {CoocMode::kWindow, 1});
  std::set<std::pair<TermId, TermId>> got;
  for (const auto& [i, row] : m.rows())
    for (const auto& [j, v] : row) got.insert({i, j});
  std::set<std::pair<TermId, TermId>> want = {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}};
  CHECK(got == want);
  CHECK(m.get(0, 1) == 0.5);
}

TEST_CASE("window of zero is empty") {
  Document d = Document::from_tokens("d", {0, 1, 2});
  CHECK(doc_cooc(d, {CoocMode::kWindow, 0}).empty());
}

TEST_CASE("window uses whole-document counts") {
  // a a b: only a-b adjacent, ratio 2/3
  Document d = Document::from_tokens("d", {0, 0, 1});
  CoocMatrix m = doc_cooc(d, {CoocMode::kWindow, 1});
  CHECK(m.get(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m.raw(0, 1) + m.raw(1, 0) == CoocMatrix::kScale);
}

TEST_CASE("pair directions sum to one") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TermId> toks;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) toks.push_back(rng() % 6);
    Document d = Document::from_tokens("d", toks);
    const int delta = static_cast<int>(rng() % 3);
    for (auto opts : {CoocOptions{}, CoocOptions{CoocMode::kWindow, delta}}) {
      CoocMatrix m = doc_cooc(d, opts);
      for (const auto& [i, row] : m.rows())
        for (const auto& [j, v] : row) CHECK(v + m.raw(j, i) == CoocMatrix::kScale);
      if (opts.mode == CoocMode::kWindow)
        CHECK(m.entry_count() <= static_cast<std::size_t>(2 * delta * n));
    }
  }
}

TEST_CASE("add and subtract are exact inverses") {
  Document a = Document::from_counts("a", {{0, 3}, {1, 2}, {2, 7}});
  Document b = Document::from_counts("b", {{1, 1}, {2, 4}, {5, 2}});
  CoocMatrix ma = doc_cooc(a, {}), mb = doc_cooc(b, {});
  CoocMatrix sum = ma;
  sum.add(mb);
  CHECK(sum.get(1, 2) == doctest::Approx(2.0 / 9.0 + 1.0 / 5.0));
  sum.subtract(mb);
  CHECK(sum == ma);
  sum.subtract(ma);
  CHECK(sum.empty());
}

TEST_CASE("erase term removes row and column") {
  Document a = Document::from_counts("a", {{0, 1}, {1, 1}, {2, 1}});
  CoocMatrix m = doc_cooc(a, {});
  m.erase_term(1);
  CHECK_FALSE(m.contains(0, 1));
  CHECK_FALSE(m.contains(1, 2));
  CHECK(m.entry_count() == 2);
  CHECK(m.neighbor_count(0) == 1);
}

TEST_CASE("ratio units") {
  CHECK(cooc_ratio_units(3, 2) == CoocMatrix::kScale / 5 * 3);
  CHECK(cooc_ratio_units(1, 1) == CoocMatrix::kScale / 2);
}
