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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evostream/app.hpp"
#include "evostream/kv_config.hpp"
#include "evostream/porter_stemmer.hpp"
#include "evostream/synthetic.hpp"

namespace py = pybind11;
using namespace evostream;

namespace {

RawRecord record_from(const py::dict& d) {
  RawRecord r;
  r.id = py::str(d["id"]);
  r.text = d.contains("text") ? std::string(py::str(d["text"])) : std::string();
  if (d.contains("labels"))
    for (auto l : d["labels"]) r.labels.push_back(py::str(l));
  if (d.contains("reveal")) r.reveal_labels = d["reveal"].cast<bool>();
  if (d.contains("topic") && !d["topic"].is_none()) r.topic = d["topic"].cast<int>();
  return r;
}

std::vector<RawRecord> records_from(const py::iterable& rows) {
  std::vector<RawRecord> out;
  for (auto row : rows) out.push_back(record_from(row.cast<py::dict>()));
  return out;
}

std::string generate_json(const std::string& spec_text) {
  const SynthStream s = generate_synthetic(synth_spec_from_config(parse_kv_config(spec_text)));
  std::string out;
  for (const auto& r : s.records) out += format_record(r) + "\n";
  return out;
}

struct RunOutput {
  std::string report;
  std::vector<std::string> rows;
  std::vector<std::string> events;
};

RunOutput run_model(const std::string& model, const py::iterable& rows, const py::dict& params,
                    std::size_t window, std::uint64_t seed) {
  RunConfig cfg;
  cfg.model = model;
  cfg.window = window;
  cfg.seed = seed;
  cfg.deterministic = true;
  for (auto [k, v] : params) cfg.overrides.emplace_back(py::str(k), v.cast<double>());
  const LoadedStream stream = load_documents(records_from(rows));

  RunOutput out;
  ParamBlock p = defaults_for(cfg.model);
  for (const auto& [k, v] : cfg.overrides) apply_param(p, k, v);
  p.validate();
  RunOptions opts;
  opts.window = window;
  opts.deterministic = true;
  opts.on_row = [&](const Json& j) { out.rows.push_back(j.dump()); };
  opts.on_event = [&](const Json& j) { out.events.push_back(j.dump()); };
  RunReport report;
  if (model == "osmtc") {
    OsmtcModel m(p, seed);
    report = run_osmtc(m, stream.docs, stream.reveal, stream.labels.size(), opts,
                       stream.label_names());
  } else {
    auto m = make_clusterer(model, p, seed);
    report = run_clustering(*m, stream.docs, stream.classes, opts);
  }
  out.report = report.to_json(true).dump();
  return out;
}

py::dict clustering_scores(const std::vector<std::vector<std::int64_t>>& table) {
  const auto s = clustering_metrics(ContingencyTable::from_dense(table));
  py::dict d;
  d["purity"] = s.purity;
  d["homogeneity"] = s.homogeneity;
  d["completeness"] = s.completeness;
  d["v_measure"] = s.v_measure;
  d["nmi"] = s.nmi;
  return d;
}

py::dict multilabel_scores(const std::vector<std::vector<LabelId>>& truth,
                           const std::vector<std::vector<LabelId>>& predicted,
                           std::size_t label_space) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("truth and predicted differ in length");
  MultiLabelTally t(label_space);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto y = truth[i], p = predicted[i];
    std::sort(y.begin(), y.end());
    std::sort(p.begin(), p.end());
    t.add(y, p);
  }
  const auto s = multilabel_metrics(t);
  py::dict d;
  d["hamming_loss"] = s.hamming_loss;
  d["example_accuracy"] = s.example_accuracy;
  d["micro_recall"] = s.micro_recall;
  d["micro_recall_paper_variant"] = s.micro_recall_paper_variant;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "evostream native core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("porter_stem", [](const std::string& w) { return porter_stem(w); }, py::arg("word"));
  m.def("cooc_ratio",
        [](double ni, double nj) {
          return static_cast<double>(cooc_ratio_units(ni, nj)) /
                 static_cast<double>(CoocMatrix::kScale);
        },
        py::arg("n_i"), py::arg("n_j"));
  m.def("triangular", &triangular, py::arg("t"));
  m.def("word_specificity",
        py::overload_cast<double, double, int>(&word_specificity),
        py::arg("neighbors"), py::arg("freq"), py::arg("delta"));
  m.def("generate_jsonl", &generate_json, py::arg("spec"),
        "Generate a synthetic stream from a key/value spec; returns JSONL text.");
  m.def("clustering_metrics", &clustering_scores, py::arg("table"));
  m.def("multilabel_metrics", &multilabel_scores, py::arg("truth"), py::arg("predicted"),
        py::arg("label_space"));
  m.def("model_names", &model_names);

  py::class_<RunOutput>(m, "RunOutput")
      .def_readonly("report", &RunOutput::report)
      .def_readonly("rows", &RunOutput::rows)
      .def_readonly("events", &RunOutput::events);
  m.def("run_model", &run_model, py::arg("model"), py::arg("records"),
        py::arg("params") = py::dict(), py::arg("window") = 1000, py::arg("seed") = 0);
}
