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

#include "evostream/osgm.hpp"

using namespace evostream;

namespace {

Document doc(const std::string& id, std::vector<std::pair<TermId, int>> c) {
  return Document::from_counts(id, std::move(c));
}

std::vector<Document> topic_stream(std::uint64_t seed, std::size_t n, bool common = false) {
  std::mt19937_64 rng(seed);
  std::vector<Document> out;
  for (std::size_t i = 0; i < n; ++i) {
    const TermId base = static_cast<TermId>(i % 3) * 20;
    std::vector<TermId> toks;
    for (int k = 0; k < 6; ++k) toks.push_back(base + rng() % 8);
    if (common) toks.push_back(999);
    out.push_back(Document::from_tokens("d" + std::to_string(i), toks, i));
  }
  return out;
}

}  // namespace

TEST_CASE("disjoint vocabulary opens a new cluster") {
  OsgmModel m;
  m.process(doc("a", {{1, 2}, {2, 1}}));
  Assignment b = m.process(doc("b", {{7, 1}, {8, 1}}));
  CHECK(b.is_new);
  CHECK(b.score_margin == -INFINITY);
  CHECK(m.state().cluster_count() == 2);
}

TEST_CASE("variant names") {
  CHECK(OsgmModel(osgm::Variant::kWithIcf).name() == "osgm");
  CHECK(OsgmModel(osgm::Variant::kEs).name() == "osgm-es");
  CHECK(osgm_defaults(osgm::Variant::kEs).alpha == 0.09);
  CHECK(osgm_defaults().beta == 0.004);
}

TEST_CASE("variants agree when every weight is zero") {
  // With alpha = 0 and a term shared by every document no second cluster
  // opens, so every term has zero icf.
  ParamBlock p = osgm_defaults();
  p.alpha = 0;
  OsgmModel icf(p, osgm::Variant::kWithIcf), es(p, osgm::Variant::kEs);
  for (const auto& d : topic_stream(3, 200, true)) {
    icf.process(d);
    es.process(d);
  }
  CHECK(icf.state().cluster_count() == 1);
  CHECK(icf.assignment_log() == es.assignment_log());
}

TEST_CASE("outdated clone merges into its twin") {
  ParamBlock p = osgm_defaults();
  p.lambda = 1.0;
  OsgmModel m(p, osgm::Variant::kWithIcf);
  auto& s = m.mutable_state();
  Document a = doc("a", {{1, 2}, {2, 1}, {3, 1}});
  Document other = doc("o", {{7, 1}, {8, 1}});
  CoocMatrix ac = doc_cooc(a, {}), oc = doc_cooc(other, {});
  s.advance();
  ClusterId keep = s.create_cluster(a, ac);
  ClusterId clone = s.create_cluster(a, ac);
  ClusterId unrelated = s.create_cluster(other, oc);
  for (int i = 0; i < 30; ++i) s.advance();
  s.add_document(keep, a, ac);
  s.add_document(keep, a, ac);
  s.add_document(unrelated, other, oc);
  m.update_active();
  CHECK_FALSE(s.has_cluster(clone));
  CHECK(s.cluster(keep).docs == 4);
  CHECK(s.cluster(keep).freq(1) == 8);
  CHECK(s.cluster(keep).total_terms == 16);
  auto ev = m.drain_events();
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].kind == ModelEvent::Kind::kMerge);
  CHECK(ev[0].cluster == clone);
  CHECK(ev[0].target == keep);
  s.check_invariants();
}

TEST_CASE("outdated cluster with no overlap is deleted") {
  ParamBlock p = osgm_defaults();
  p.lambda = 1.0;
  OsgmModel m(p, osgm::Variant::kWithIcf);
  auto& s = m.mutable_state();
  Document a = doc("a", {{1, 1}, {2, 1}});
  Document b = doc("b", {{8, 1}, {9, 1}});
  s.advance();
  ClusterId za = s.create_cluster(a, doc_cooc(a, {}));
  ClusterId zb = s.create_cluster(b, doc_cooc(b, {}));
  for (int i = 0; i < 30; ++i) s.advance();
  s.add_document(za, a, doc_cooc(a, {}));
  m.update_active();
  CHECK_FALSE(s.has_cluster(zb));
  CHECK(s.active_docs() == 2);
  auto ev = m.drain_events();
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].kind == ModelEvent::Kind::kDelete);
}

TEST_CASE("fresh clusters are left alone") {
  OsgmModel m;
  for (const auto& d : topic_stream(5, 50)) m.process(d);
  const auto before = m.state().cluster_count();
  m.update_active();
  CHECK(m.state().cluster_count() == before);
  CHECK(m.drain_events().empty());
}

TEST_CASE("stale terms are pruned from growing clusters") {
  ParamBlock p = osgm_defaults();
  p.alpha = 0;
  OsgmModel m(p, osgm::Variant::kWithIcf);
  m.process(doc("first", {{1, 1}, {99, 1}}));
  for (int i = 0; i < 60; ++i) m.process(doc("next", {{1, 1}, {2, 1}}));
  const auto& z = m.state().cluster(0);
  CHECK_FALSE(z.has_term(99));
  CHECK(z.has_term(1));
  CHECK(z.docs == 61);
  m.state().check_invariants();
}

TEST_CASE("conservation over a stream") {
  OsgmModel m(osgm::Variant::kEs);
  for (const auto& d : topic_stream(8, 300)) {
    m.process(d);
    std::int64_t sum = 0;
    for (const auto& [id, z] : m.state().clusters()) sum += z.docs;
    REQUIRE(sum == m.state().active_docs());
  }
  m.state().check_invariants();
}
