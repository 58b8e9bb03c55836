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

#include "evostream/eindm.hpp"
#include "evostream/osdm.hpp"
#include "evostream/prequential.hpp"
#include "evostream/synthetic.hpp"
#include "evostream/app.hpp"

using namespace evostream;

namespace {

LoadedStream small_stream(std::size_t docs_per_topic = 60) {
  SynthSpec s;
  s.n_topics = 4;
  s.vocab_size = 300;
  s.core_terms_per_topic = 15;
  s.docs_per_topic = docs_per_topic;
  s.seed = 21;
  return load_documents(generate_synthetic(s).records);
}

ContingencyTable offline(const std::vector<ClusterId>& log, const std::vector<std::int64_t>& cls) {
  ContingencyTable t;
  for (std::size_t i = 0; i < log.size(); ++i)
    t.add(cls[i], log[i] == kNoCluster ? -1 : static_cast<std::int64_t>(log[i]));
  return t;
}

class Faulty : public StreamClusterer {
 public:
  Faulty(std::size_t at, bool invariant) : at_(at), invariant_(invariant) {}
  std::string_view name() const override { return "faulty"; }
  Assignment process(const Document&) override {
    if (log_.size() == at_) {
      if (invariant_) throw InvariantError("broken");
      throw std::runtime_error("boom");
    }
    log_.push_back(0);
    return {0, false, 0.0, 1};
  }
  const ModelState& state() const override { return state_; }

 private:
  std::size_t at_;
  bool invariant_;
  ModelState state_;
};

}  // namespace

TEST_CASE("final metrics equal the offline computation") {
  auto s = small_stream();
  OsdmModel m;
  RunOptions opts;
  opts.window = 50;
  RunReport r = run_clustering(m, s.docs, s.classes, opts);
  auto want = clustering_metrics(offline(m.assignment_log(), s.classes));
  CHECK(r.final_metrics["nmi"].get<double>() == want.nmi);
  CHECK(r.final_metrics["homogeneity"].get<double>() == want.homogeneity);
  CHECK(r.documents == 240);
  REQUIRE(r.series.size() == 5);
  CHECK(r.series[0].at_doc == 50);
  CHECK(r.series.back().at_doc == 240);
  CHECK(r.perf.peak_clusters >= m.state().cluster_count());
  CHECK(r.perf.peak_vocab > 0);
}

TEST_CASE("inference moves are reflected in the metrics") {
  auto s = small_stream();
  ParamBlock p = eindm_defaults();
  p.infer_interval = 10;
  p.buffer_size = 40;
  p.resample_count = 20;
  EindmModel m(p, 2);
  RunReport r = run_clustering(m, s.docs, s.classes, {});
  auto want = clustering_metrics(offline(m.assignment_log(), s.classes));
  CHECK(r.final_metrics["nmi"].get<double>() == doctest::Approx(want.nmi).epsilon(1e-12));
}

TEST_CASE("a window longer than the stream gives one report") {
  auto s = small_stream(10);
  OsdmModel m;
  RunOptions opts;
  opts.window = 100000;
  RunReport r = run_clustering(m, s.docs, s.classes, opts);
  REQUIRE(r.series.size() == 1);
  CHECK(r.series[0].at_doc == 40);
}

TEST_CASE("report json and csv") {
  auto s = small_stream(10);
  OsdmModel m;
  RunReport r = run_clustering(m, s.docs, s.classes, {});
  Json timed = r.to_json(false), fixed = r.to_json(true);
  CHECK(timed["perf"].contains("docs_per_sec"));
  CHECK(timed["perf"].contains("peak_clusters"));
  CHECK_FALSE(fixed["perf"].contains("docs_per_sec"));
  CHECK_FALSE(fixed["perf"].contains("seconds"));
  CHECK(fixed["final"].contains("purity"));
  CHECK(fixed["series"][0]["at_doc"] == 40);
  const std::string csv = r.to_csv();
  CHECK(csv.find("at_doc") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("rows and events reach their sinks") {
  auto s = small_stream(10);
  OsdmModel m;
  std::vector<Json> rows;
  RunOptions opts;
  opts.on_row = [&](const Json& j) { rows.push_back(j); };
  run_clustering(m, s.docs, s.classes, opts);
  REQUIRE(rows.size() == 40);
  CHECK(rows[0]["doc_id"] == "d0");
  CHECK(rows[0]["is_new"] == true);
  CHECK(rows[0]["score_margin"].is_null());
  CHECK(rows[0].contains("n_active_clusters"));
}

TEST_CASE("model errors carry the stream position") {
  auto s = small_stream(10);
  for (bool inv : {false, true}) {
    Faulty f(7, inv);
    try {
      run_clustering(f, s.docs, s.classes, {});
      FAIL("expected StreamError");
    } catch (const StreamError& e) {
      CHECK(e.position() == 7);
      CHECK(e.invariant_breach() == inv);
    }
  }
}

TEST_CASE("multi-label runs predict before they learn") {
  SynthSpec spec;
  spec.n_topics = 5;
  spec.vocab_size = 400;
  spec.core_terms_per_topic = 15;
  spec.label_mode = LabelMode::kMulti;
  spec.cardinality = 2;
  spec.reveal_ratio = 0.3;
  spec.n_docs = 900;
  spec.seed = 8;
  LoadedStream s = load_documents(generate_synthetic(spec).records);
  ParamBlock p = osmtc_defaults();
  p.init_docs = 200;
  p.neighbors = 5;
  OsmtcModel m(p, 1);
  std::vector<Json> rows;
  RunOptions opts;
  opts.window = 250;
  opts.check_invariants = true;
  opts.on_row = [&](const Json& j) { rows.push_back(j); };
  RunReport r = run_osmtc(m, s.docs, s.reveal, s.labels.size(), opts, s.label_names());
  CHECK(rows.size() == 700);
  for (const auto& row : rows) {
    CHECK(row["predicted"].size() >= 1);
    CHECK(row["predicted"].size() <= 5);
  }
  CHECK(r.series.size() == 3);
  CHECK(r.final_metrics["hamming_loss"].get<double>() < 0.4);
  CHECK(r.final_metrics.contains("micro_recall_paper_variant"));
}
