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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits 0 unless
// something crashes, so honest failures stay visible without breaking ctest.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "evostream/app.hpp"
#include "evostream/cluster_feature.hpp"
#include "evostream/eindm.hpp"
#include "evostream/metrics.hpp"
#include "evostream/osdm.hpp"
#include "evostream/osgm.hpp"
#include "evostream/osmtc.hpp"
#include "evostream/prequential.hpp"
#include "evostream/scoring.hpp"
#include "evostream/stream_io.hpp"
#include "evostream/synthetic.hpp"
#include "fixture.hpp"
#include "metric_oracle.hpp"

using namespace evostream;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string data_dir() {
  const char* d = std::getenv("EVOSTREAM_DATA");
  return d ? d : EVOSTREAM_DATA_DIR;
}

LoadedStream spec_stream(const std::string& name, SynthStream* raw = nullptr) {
  SynthStream s = generate_synthetic(load_synth_spec(data_dir() + "/specs/" + name));
  LoadedStream out = load_documents(s.records);
  if (raw) *raw = std::move(s);
  return out;
}

Outcome formula_oracles() {
  std::mt19937_64 rng(77);
  std::size_t checked = 0, bad = 0;
  for (int trial = 0; trial < 250; ++trial) {
    ParamBlock p = testing::random_params(rng);
    for (bool window : {false, true}) {
      auto f = testing::make_fixture(rng, p, window);
      const DocView v = f.view();
      const double D = static_cast<double>(f.state.active_docs() + 1);
      const double V = static_cast<double>(f.state.active_vocab_size() + unseen_terms(v, f.state));
      auto expect = [&](double got, long double want) {
        ++checked;
        if (want == 0 ? got != -INFINITY : !testing::close_log(got, std::log(want))) ++bad;
      };
      for (std::size_t k = 0; k < f.ids.size(); ++k) {
        const auto& z = f.state.cluster(f.ids[k]);
        if (window) {
          expect(eindm::score_existing(v, z, f.state, {D, 0, 0}),
                 reference::eindm(f.ref_doc, f.ref, k, D, p.alpha, p.beta, p.window));
          continue;
        }
        expect(osdm::score_existing(v, z, f.state, {D, V, 0}),
               reference::osdm(f.ref_doc, f.ref, k, D, V, p.alpha, p.beta));
        for (bool es : {false, true})
          expect(osgm::score_existing(v, z, f.state, {D, 0, 0},
                                      es ? osgm::Variant::kEs : osgm::Variant::kWithIcf),
                 reference::osgm(f.ref_doc, f.ref, k, D, p.alpha, p.beta, es));
        expect(osmtc::score_existing(v, z, f.state, {D, 0, 0}),
               reference::osmtc(f.ref_doc, f.ref, k, D, p.alpha, p.beta));
      }
      const double vbar = 1.0 + static_cast<double>(rng() % 20);
      expect(osgm::score_new(v, f.state, {D, 0, vbar}),
             reference::fresh(f.ref_doc, D, vbar, p.alpha, p.beta));
      expect(osdm::score_new(v, f.state, {D, V, 0}),
             reference::fresh(f.ref_doc, D, V, p.alpha, p.beta));
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) +
                        " scores within 1e-9 over 500 fixtures"};
}

Outcome worked_examples() {
  bool ok = true;
  CoocMatrix m = doc_cooc(Document::from_counts("d", {{1, 3}, {2, 2}, {3, 3}}), {});
  ok &= m.get(1, 2) == 0.6 && m.get(2, 1) == 0.4 && m.get(1, 3) == 0.5 && m.get(2, 3) == 0.4;

  ClusterFeature z;
  auto add = [&](const Document& d, Tick t) { cf_add(z, d, doc_cooc(d, {}), t); };
  add(Document::from_counts("d1", {{1, 3}, {2, 2}}), 1);
  add(Document::from_counts("d2", {{1, 1}, {3, 1}, {4, 1}}), 2);
  ok &= z.docs == 2 && z.total_terms == 8 && z.cooc.get(2, 1) == 0.4;
  add(Document::from_counts("d", {{1, 1}, {2, 1}}), 3);
  ok &= z.docs == 3 && z.total_terms == 10 && z.cooc.get(2, 1) == 0.9;
  return {ok, "co-occurrence table and cluster add trace"};
}

Outcome metric_oracle() {
  std::mt19937_64 rng(5);
  std::size_t bad = 0;
  for (int t = 0; t < 100; ++t) {
    const int classes = 1 + static_cast<int>(rng() % 6), clusters = 1 + static_cast<int>(rng() % 6);
    std::vector<std::pair<long, long>> docs;
    ContingencyTable table;
    const int n = 1 + static_cast<int>(rng() % 200);
    for (int i = 0; i < n; ++i) {
      const long c = static_cast<long>(rng() % classes), k = static_cast<long>(rng() % clusters);
      docs.emplace_back(c, k);
      table.add(c, k);
    }
    const auto got = clustering_metrics(table);
    const auto want = reference::brute_metrics(docs);
    auto near = [](double g, long double w) { return std::fabs(g - static_cast<double>(w)) <= 1e-9; };
    if (!(near(got.purity, want.purity) && near(got.homogeneity, want.homogeneity) &&
          near(got.completeness, want.completeness) && near(got.v_measure, want.v_measure) &&
          near(got.nmi, want.nmi)))
      ++bad;
  }
  const auto perfect = clustering_metrics(ContingencyTable::from_dense({{4, 0, 0}, {0, 3, 0}, {0, 0, 5}}));
  const bool ones = perfect.purity == 1 && perfect.homogeneity == 1 && perfect.completeness == 1 &&
                    perfect.v_measure == 1 && perfect.nmi == 1;
  const auto lumped = clustering_metrics(ContingencyTable::from_dense({{5}, {5}}));
  const bool zeros = lumped.homogeneity == 0 && lumped.nmi == 0 && lumped.v_measure == 0;
  return {bad == 0 && ones && zeros, std::to_string(100 - bad) + "/100 tables match; exact 1 and 0 cases " +
                                         ((ones && zeros) ? "hold" : "broken")};
}

Outcome synthetic_quality() {
  const auto t0 = std::chrono::steady_clock::now();
  LoadedStream s = spec_stream("topics10.toml");
  OsdmModel m;
  RunOptions opts;
  opts.window = s.docs.size();
  RunReport r = run_clustering(m, s.docs, s.classes, opts);
  const double secs = seconds_since(t0);
  const double h = r.final_metrics["homogeneity"], nmi = r.final_metrics["nmi"];
  return {h >= 0.9 && nmi >= 0.8 && secs < 30.0,
          "homogeneity " + fmt(h) + ", NMI " + fmt(nmi) + ", " + fmt(secs) + " s"};
}

Outcome drift_tracking() {
  SynthStream raw;
  LoadedStream s = spec_stream("drift5.toml", &raw);
  const auto spec = load_synth_spec(data_dir() + "/specs/drift5.toml");
  const auto& dp = spec.drift_points.at(0);
  OsgmModel m;
  run_clustering(m, s.docs, s.classes, {});

  std::set<TermId> retired;
  for (const auto& w : raw.retired_terms[dp.topic])
    if (auto id = s.vocab.find(w)) retired.insert(*id);
  std::set<ClusterId> post;
  for (std::size_t i = dp.position; i < s.docs.size(); ++i)
    if (s.classes[i] == dp.topic && m.state().has_cluster(m.assignment_log()[i]))
      post.insert(m.assignment_log()[i]);
  double old_mass = 0, mass = 0;
  for (ClusterId id : post)
    for (const auto& [w, n] : m.state().cluster(id).term_freq) {
      mass += n;
      if (retired.count(w)) old_mass += n;
    }
  const double share = mass > 0 ? old_mass / mass : 0.0;
  const std::size_t clusters = m.state().cluster_count();
  return {clusters <= 2 * spec.n_topics && share < 0.10,
          std::to_string(clusters) + " active clusters (limit " + std::to_string(2 * spec.n_topics) +
              "), retired core share " + fmt(share) + " in " + std::to_string(post.size()) +
              " post-drift clusters"};
}

Document random_doc(std::mt19937_64& rng, int vocab) {
  std::vector<TermId> toks;
  const int n = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < n; ++i) toks.push_back(static_cast<TermId>(rng() % vocab));
  return Document::from_tokens("r", toks);
}

Outcome conservation() {
  std::mt19937_64 rng(31);
  std::size_t failures = 0;

  for (int t = 0; t < 200; ++t) {
    ClusterFeature z;
    std::vector<Document> held;
    for (int i = 0; i < 4; ++i) {
      held.push_back(random_doc(rng, 12));
      cf_add(z, held.back(), doc_cooc(held.back(), {}), i + 1);
    }
    const ClusterFeature before = z;
    Document d = random_doc(rng, 15);
    cf_add(z, d, doc_cooc(d, {}), 9);
    cf_remove(z, d, doc_cooc(d, {}));
    if (!(z.docs == before.docs && z.term_freq == before.term_freq &&
          z.total_terms == before.total_terms && z.cooc == before.cooc))
      ++failures;
  }

  std::vector<Document> stream;
  for (int i = 0; i < 1500; ++i) {
    const int topic = static_cast<int>(rng() % 5);
    std::vector<TermId> toks;
    for (int k = 0; k < 7; ++k)
      toks.push_back(static_cast<TermId>(rng() % 3 == 0 ? 500 + rng() % 200 : topic * 20 + rng() % 20));
    stream.push_back(Document::from_tokens("s" + std::to_string(i), toks));
  }
  auto sum_docs = [](const ModelState& st) {
    std::int64_t n = 0;
    for (const auto& [id, z] : st.clusters()) n += z.docs;
    return n;
  };
  auto exercise = [&](StreamClusterer& m, bool keeps_all) {
    std::int64_t seen = 0;
    for (const auto& d : stream) {
      m.process(d);
      ++seen;
      const auto n = sum_docs(m.state());
      if (n != m.state().active_docs() || (keeps_all && n != seen)) ++failures;
      try {
        m.state().check_invariants();
      } catch (const InvariantError&) {
        ++failures;
      }
    }
  };
  ParamBlock keep = osdm_defaults();
  keep.lambda = 0;
  OsdmModel osdm(keep);
  exercise(osdm, true);
  ParamBlock g = osgm_defaults();
  g.lambda = 0;
  OsgmModel osgm(g, osgm::Variant::kWithIcf);
  exercise(osgm, true);
  ParamBlock e = eindm_defaults();
  e.lambda = 0;
  e.infer_interval = 25;
  e.resample_count = 20;
  EindmModel eindm(e, 4);
  exercise(eindm, true);
  const auto before = eindm.state().active_docs();
  eindm.episodic_infer();
  if (eindm.state().active_docs() != before) ++failures;

  return {failures == 0, std::to_string(failures) + " violations over 200 round trips and 4500 steps"};
}

Outcome log_space_argmax() {
  std::mt19937_64 rng(99);
  int agree = 0, cases = 0;
  while (cases < 1000) {
    ParamBlock p = testing::random_params(rng);
    auto f = testing::make_fixture(rng, p, false);
    const DocView v = f.view();
    const double D = static_cast<double>(f.state.active_docs() + 1);
    const double V = static_cast<double>(f.state.active_vocab_size() + unseen_terms(v, f.state));
    std::vector<double> logs;
    std::vector<long double> direct;
    for (std::size_t k = 0; k < f.ids.size(); ++k) {
      logs.push_back(osdm::score_existing(v, f.state.cluster(f.ids[k]), f.state, {D, V, 0}));
      direct.push_back(reference::osdm(f.ref_doc, f.ref, k, D, V, p.alpha, p.beta));
    }
    logs.push_back(osdm::score_new(v, f.state, {D, V, 0}));
    direct.push_back(reference::fresh(f.ref_doc, D, V, p.alpha, p.beta));
    const auto a = std::max_element(logs.begin(), logs.end()) - logs.begin();
    const auto b = std::max_element(direct.begin(), direct.end()) - direct.begin();
    // Exact ties (identical clusters) may resolve either way.
    if (a == b || std::fabs(direct[a] - direct[b]) <= 1e-15L * direct[b]) ++agree;
    ++cases;
  }
  return {agree == cases, std::to_string(agree) + "/" + std::to_string(cases) + " argmax agree"};
}

// Each topic speaks two vocabularies in turn, sharing a few anchor terms.
LoadedStream fragment_stream(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> order;
  for (int frag = 0; frag < 2; ++frag) {
    std::vector<std::pair<int, int>> block;
    for (int t = 0; t < 5; ++t)
      for (int i = 0; i < 200; ++i) block.emplace_back(t, frag);
    std::shuffle(block.begin(), block.end(), rng);
    order.insert(order.end(), block.begin(), block.end());
  }
  std::vector<RawRecord> recs;
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [t, frag] = order[i];
    std::string text;
    for (int k = 0; k < 8; ++k) {
      std::string w;
      if (u(rng) < 0.2) {
        w = "bg" + std::to_string(rng() % 300);
      } else {
        const auto c = rng() % 16;
        w = c < 4 ? "t" + std::to_string(t) + "s" + std::to_string(c)
                  : "t" + std::to_string(t) + "f" + std::to_string(frag) + "_" + std::to_string(c);
      }
      text += (k ? " " : "") + w;
    }
    RawRecord r;
    r.id = "d" + std::to_string(i);
    r.text = text;
    r.topic = t;
    recs.push_back(r);
  }
  return load_documents(recs);
}

Outcome inference_effect() {
  LoadedStream s = fragment_stream(1);
  auto run = [&](double rho) {
    ParamBlock p = eindm_defaults();
    p.infer_interval = static_cast<std::size_t>(rho);
    EindmModel m(p, 0);
    RunReport r = run_clustering(m, s.docs, s.classes, {});
    return std::make_pair(m.state().cluster_count(), r.final_metrics["nmi"].get<double>());
  };
  const auto [with_c, with_nmi] = run(60);
  const auto [without_c, without_nmi] = run(0);
  return {with_c < without_c && with_nmi >= without_nmi - 0.02,
          "clusters " + std::to_string(with_c) + " vs " + std::to_string(without_c) + " without inference, NMI " +
              fmt(with_nmi) + " vs " + fmt(without_nmi)};
}

Outcome multilabel() {
  LoadedStream s = spec_stream("multilabel15.toml");
  ParamBlock p = osmtc_defaults();
  OsmtcModel m(p, 0);
  std::vector<std::set<std::string>> truth, predicted;
  RunOptions opts;
  opts.window = s.docs.size();
  opts.on_row = [&](const Json& row) {
    truth.emplace_back(row["truth"].begin(), row["truth"].end());
    predicted.emplace_back(row["predicted"].begin(), row["predicted"].end());
  };
  RunReport r = run_osmtc(m, s.docs, s.reveal, s.labels.size(), opts, s.label_names());

  std::size_t bad_sizes = 0;
  for (const auto& y : predicted)
    if (y.empty() || y.size() > p.neighbors) ++bad_sizes;

  std::map<std::string, std::size_t> freq;
  for (const auto& y : truth)
    for (const auto& l : y) ++freq[l];
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& [l, n] : freq) ranked.emplace_back(n, l);
  std::sort(ranked.rbegin(), ranked.rend());
  const std::set<std::string> top2 = {ranked.at(0).second, ranked.at(1).second};
  double ham = 0, acc = 0;
  const double L = static_cast<double>(s.labels.size());
  for (const auto& y : truth) {
    std::size_t inter = 0;
    for (const auto& l : y) inter += top2.count(l);
    const double uni = static_cast<double>(y.size() + top2.size() - inter);
    ham += (uni - static_cast<double>(inter)) / L;
    acc += static_cast<double>(inter) / uni;
  }
  ham /= static_cast<double>(truth.size());
  acc /= static_cast<double>(truth.size());

  const double h = r.final_metrics["hamming_loss"], a = r.final_metrics["example_accuracy"];
  return {h < ham && a >= 1.2 * acc && bad_sizes == 0 && !truth.empty(),
          "hamming " + fmt(h) + " vs baseline " + fmt(ham) + ", accuracy " + fmt(a) + " vs " + fmt(acc) +
              ", " + std::to_string(bad_sizes) + " out-of-range prediction sizes"};
}

Outcome alpha_stability() {
  LoadedStream s = spec_stream("topics10.toml");
  double lo = 1, hi = 0;
  for (double alpha : {9e-3, 3e-2, 9e-2, 3e-1, 9e-1}) {
    ParamBlock p = osdm_defaults();
    p.alpha = alpha;
    OsdmModel m(p);
    const double nmi = run_clustering(m, s.docs, s.classes, {}).final_metrics["nmi"];
    lo = std::min(lo, nmi);
    hi = std::max(hi, nmi);
  }
  return {hi - lo <= 0.10, "NMI " + fmt(lo) + " to " + fmt(hi) + " for alpha in [0.009, 0.9]"};
}

std::optional<Outcome> news_corpus() {
  const char* path = std::getenv("EVOSTREAM_NEWS_JSONL");
  if (!path || !*path) return std::nullopt;
  LoadedStream s = load_documents(read_stream(path));
  OsdmModel m;
  const double nmi = run_clustering(m, s.docs, s.classes, {}).final_metrics["nmi"];
  return Outcome{std::fabs(nmi - 0.815) <= 0.05, "NMI " + fmt(nmi) + " (target 0.815 +/- 0.05)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"scoring matches direct evaluators", formula_oracles},
      {"worked examples", worked_examples},
      {"metrics match brute force", metric_oracle},
      {"osdm quality on stationary topics", synthetic_quality},
      {"osgm drift tracking", drift_tracking},
      {"inverse operations and conservation", conservation},
      {"log-space argmax", log_space_argmax},
      {"episodic inference merges fragments", inference_effect},
      {"osmtc beats top-2 baseline", multilabel},
      {"alpha stability", alpha_stability},
  };
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << n << " " << name << ": " << o.detail << std::endl;
  }
  ++n;
  try {
    if (auto o = news_corpus())
      std::cout << (o->pass ? "PASS" : "FAIL") << " " << n << " news corpus: " << o->detail << std::endl;
    else
      std::cout << "SKIP " << n << " news corpus: set EVOSTREAM_NEWS_JSONL to run" << std::endl;
  } catch (const std::exception& e) {
    std::cout << "FAIL " << n << " news corpus: threw: " << e.what() << std::endl;
  }
  return 0;
}
