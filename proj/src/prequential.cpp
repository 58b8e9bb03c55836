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

#include "evostream/prequential.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace evostream {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json clustering_json(const ContingencyTable& t) {
  if (t.total() == 0) return Json::object();
  const auto s = clustering_metrics(t);
  return Json{{"purity", s.purity},
              {"homogeneity", s.homogeneity},
              {"completeness", s.completeness},
              {"v_measure", s.v_measure},
              {"nmi", s.nmi}};
}

Json multilabel_json(const MultiLabelTally& t) {
  if (t.documents() == 0 || t.label_space() == 0) return Json::object();
  const auto s = multilabel_metrics(t);
  return Json{{"hamming_loss", s.hamming_loss},
              {"example_accuracy", s.example_accuracy},
              {"micro_recall", s.micro_recall},
              {"micro_recall_paper_variant", s.micro_recall_paper_variant}};
}

class Meter {
 public:
  void sample(const ModelState& s) {
    perf.peak_clusters = std::max(perf.peak_clusters, s.cluster_count());
    perf.peak_vocab = std::max(perf.peak_vocab, s.active_vocab_size());
  }
  SeriesPoint point(std::size_t at, Json metrics, const ModelState& s) {
    SeriesPoint p;
    p.at_doc = at;
    p.metrics = std::move(metrics);
    p.clusters = s.cluster_count();
    p.vocab = s.active_vocab_size();
    p.cooc_entries = s.cooc_entries();
    perf.peak_cooc_entries = std::max(perf.peak_cooc_entries, p.cooc_entries);
    return p;
  }
  PerfStats perf;
};

using Clock = std::chrono::steady_clock;

}  // namespace

Json event_json(const ModelEvent& ev) {
  switch (ev.kind) {
    case ModelEvent::Kind::kMerge:
      return Json{{"tick", ev.tick},
                  {"event", "merge"},
                  {"old_cluster", ev.cluster},
                  {"merged_into", ev.target}};
    case ModelEvent::Kind::kDelete:
      return Json{{"tick", ev.tick}, {"event", "delete"}, {"old_cluster", ev.cluster}};
    case ModelEvent::Kind::kInference:
      return Json{{"tick", ev.tick},
                  {"event", "inference"},
                  {"resampled", ev.resampled},
                  {"moved", ev.moved},
                  {"clusters_before", ev.clusters_before},
                  {"clusters_after", ev.clusters_after}};
  }
  return Json::object();
}

RunReport run_clustering(StreamClusterer& model, const std::vector<Document>& docs,
                         const std::vector<std::int64_t>& classes, const RunOptions& opts) {
  RunReport report;
  report.model = std::string(model.name());
  ContingencyTable table;
  Meter meter;
  const std::size_t window = std::max<std::size_t>(1, opts.window);
  const auto start = Clock::now();
  auto class_of = [&](std::size_t i) { return i < classes.size() ? classes[i] : -1; };
  auto cluster_key = [](ClusterId id) {
    return id == kNoCluster ? std::int64_t{-1} : static_cast<std::int64_t>(id);
  };

  for (std::size_t i = 0; i < docs.size(); ++i) {
    Assignment a;
    try {
      a = model.process(docs[i]);
      if (opts.check_invariants) model.state().check_invariants();
    } catch (const InvariantError& e) {
      throw StreamError(i, e.what(), true);
    } catch (const std::exception& e) {
      throw StreamError(i, e.what(), false);
    }
    if (class_of(i) >= 0) table.add(class_of(i), cluster_key(a.cluster));
    for (const auto& mv : model.drain_reassignments()) {
      if (class_of(mv.index) < 0) continue;
      table.remove(class_of(mv.index), cluster_key(mv.from));
      table.add(class_of(mv.index), cluster_key(mv.to));
    }
    for (const auto& ev : model.drain_events())
      if (opts.on_event) opts.on_event(event_json(ev));
    if (opts.on_row) {
      opts.on_row(Json{{"doc_id", docs[i].id},
                       {"cluster_id", a.cluster == kNoCluster ? Json(nullptr) : Json(a.cluster)},
                       {"is_new", a.is_new},
                       {"n_active_clusters", a.active_clusters},
                       {"score_margin", number_or_null(a.score_margin)}});
    }
    meter.sample(model.state());
    if ((i + 1) % window == 0 || i + 1 == docs.size())
      report.series.push_back(meter.point(i + 1, clustering_json(table), model.state()));
  }

  report.perf = meter.perf;
  report.perf.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report.perf.docs_per_sec =
      report.perf.seconds > 0.0 ? static_cast<double>(docs.size()) / report.perf.seconds : 0.0;
  report.documents = docs.size();
  report.final_metrics = clustering_json(table);
  return report;
}

RunReport run_osmtc(OsmtcModel& model, const std::vector<Document>& docs,
                    const std::vector<bool>& reveal, std::size_t label_space,
                    const RunOptions& opts, const std::vector<std::string>& label_names) {
  RunReport report;
  report.model = "osmtc";
  const std::size_t warm = std::min(model.state().params().init_docs, docs.size());
  const std::size_t k = std::max<std::size_t>(1, model.state().params().neighbors);
  const std::size_t window = std::max<std::size_t>(1, opts.window);
  MultiLabelTally tally(label_space);
  Meter meter;
  const auto start = Clock::now();

  if (!model.initialized()) {
    std::vector<Document> warmup(docs.begin(), docs.begin() + static_cast<std::ptrdiff_t>(warm));
    model.initialize(warmup, label_names);
  }
  auto names = [&](const std::vector<LabelId>& ls) {
    Json out = Json::array();
    for (LabelId l : ls)
      out.push_back(l < label_names.size() ? Json(label_names[l]) : Json(l));
    return out;
  };

  std::size_t scored = 0;
  for (std::size_t i = warm; i < docs.size(); ++i) {
    const Document& d = docs[i];
    Prediction pred;
    try {
      model.maintain();
      pred = model.predict(d);
      if (pred.labels.empty() || pred.labels.size() > k)
        throw InvariantError("prediction size " + std::to_string(pred.labels.size()) +
                             " outside [1, " + std::to_string(k) + "]");
      tally.add(d.labels, pred.labels);
      model.update(d, pred, i < reveal.size() && reveal[i] ? &d.labels : nullptr);
      if (opts.check_invariants) model.state().check_invariants();
    } catch (const InvariantError& e) {
      throw StreamError(i, e.what(), true);
    } catch (const std::exception& e) {
      throw StreamError(i, e.what(), false);
    }
    ++scored;
    for (const auto& ev : model.drain_events())
      if (opts.on_event) opts.on_event(event_json(ev));
    if (opts.on_row) {
      const auto row = MultiLabelTally::compare(d.labels, pred.labels);
      opts.on_row(Json{{"doc_id", d.id},
                       {"predicted", names(pred.labels)},
                       {"truth", d.labels.empty() ? Json(nullptr) : names(d.labels)},
                       {"l_count", pred.l_count},
                       {"n_clusters", model.state().cluster_count()},
                       {"hamming_contrib",
                        label_space > 0 ? static_cast<double>(row.sym_diff) /
                                              static_cast<double>(label_space)
                                        : 0.0}});
    }
    meter.sample(model.state());
    if (scored % window == 0 || i + 1 == docs.size())
      report.series.push_back(meter.point(i + 1, multilabel_json(tally), model.state()));
  }

  report.perf = meter.perf;
  report.perf.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  report.perf.docs_per_sec =
      report.perf.seconds > 0.0 ? static_cast<double>(docs.size()) / report.perf.seconds : 0.0;
  report.documents = docs.size();
  report.final_metrics = multilabel_json(tally);
  return report;
}

Json RunReport::to_json(bool deterministic) const {
  Json series_json = Json::array();
  for (const auto& p : series) {
    Json row{{"at_doc", p.at_doc}};
    for (const auto& [k, v] : p.metrics.items()) row[k] = v;
    row["clusters"] = p.clusters;
    row["vocab"] = p.vocab;
    row["cooc_entries"] = p.cooc_entries;
    series_json.push_back(std::move(row));
  }
  Json perf_json;
  if (!deterministic) {
    perf_json["seconds"] = perf.seconds;
    perf_json["docs_per_sec"] = perf.docs_per_sec;
  }
  perf_json["peak_clusters"] = perf.peak_clusters;
  perf_json["peak_vocab"] = perf.peak_vocab;
  perf_json["peak_cooc_entries"] = perf.peak_cooc_entries;
  return Json{{"model", model},
              {"documents", documents},
              {"final", final_metrics},
              {"series", std::move(series_json)},
              {"perf", std::move(perf_json)}};
}

std::string RunReport::to_csv() const {
  std::vector<std::string> keys;
  for (const auto& p : series)
    for (const auto& [k, v] : p.metrics.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::ostringstream out;
  out.precision(17);
  out << "at_doc";
  for (const auto& k : keys) out << ',' << k;
  out << ",clusters,vocab,cooc_entries\n";
  for (const auto& p : series) {
    out << p.at_doc;
    for (const auto& k : keys) {
      out << ',';
      if (p.metrics.contains(k)) out << p.metrics[k].get<double>();
    }
    out << ',' << p.clusters << ',' << p.vocab << ',' << p.cooc_entries << '\n';
  }
  return out.str();
}

}  // namespace evostream
