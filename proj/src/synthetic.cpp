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

#include "evostream/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "evostream/kv_config.hpp"

namespace evostream {

std::string synth_term(std::size_t id) { return "w" + std::to_string(id); }

std::size_t SynthSpec::stream_length() const {
  if (label_mode == LabelMode::kMulti && n_docs) return *n_docs;
  return n_topics * docs_per_topic;
}

namespace {

std::size_t fresh_needed(const SynthSpec& s) {
  std::size_t n = 0;
  for (const auto& dp : s.drift_points)
    n += static_cast<std::size_t>(std::ceil(dp.fraction * s.core_terms_per_topic));
  return n;
}

}  // namespace

void SynthSpec::validate() const {
  if (n_topics == 0) throw ConfigError("n_topics must be positive");
  if (core_terms_per_topic == 0) throw ConfigError("core_terms_per_topic must be positive");
  if (!(mean_doc_len >= 1.0)) throw ConfigError("mean_doc_len must be at least 1");
  if (core_share < 0.0 || core_share > 1.0) throw ConfigError("core_share outside [0, 1]");
  const std::size_t reserved = n_topics * core_terms_per_topic + fresh_needed(*this);
  if (reserved > vocab_size)
    throw ConfigError("core terms x topics plus drift terms exceed vocab_size");
  if (core_share < 1.0 && reserved == vocab_size)
    throw ConfigError("no background terms left in the vocabulary");
  for (const auto& dp : drift_points) {
    if (dp.topic < 0 || static_cast<std::size_t>(dp.topic) >= n_topics)
      throw ConfigError("drift topic out of range");
    if (dp.fraction < 0.0 || dp.fraction > 1.0) throw ConfigError("drift fraction outside [0, 1]");
    if (dp.position >= stream_length()) throw ConfigError("drift position beyond stream length");
  }
  if (label_mode == LabelMode::kMulti) {
    if (cardinality < 1 || cardinality > n_topics)
      throw ConfigError("cardinality must be in [1, n_topics]");
    if (reveal_ratio < 0.0 || reveal_ratio > 1.0) throw ConfigError("reveal_ratio outside [0, 1]");
    if (!label_cooc.empty()) {
      if (label_cooc.size() != n_topics) throw ConfigError("label_cooc must be n_topics square");
      for (const auto& row : label_cooc) {
        if (row.size() != n_topics) throw ConfigError("label_cooc must be n_topics square");
        for (double v : row)
          if (v < 0.0) throw ConfigError("label_cooc entries must be non-negative");
      }
    }
  }
}

SynthStream generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const std::size_t T = spec.n_topics;
  const std::size_t C = spec.core_terms_per_topic;
  const std::size_t n = spec.stream_length();

  std::vector<std::vector<std::size_t>> core(T);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t k = 0; k < C; ++k) core[t].push_back(t * C + k);
  std::size_t next_fresh = T * C;
  const std::size_t bg_begin = T * C + fresh_needed(spec);
  const std::size_t bg_count = spec.vocab_size - bg_begin;

  // topic sequence and label sets in stream order
  std::vector<std::vector<int>> labels(n);
  if (spec.label_mode == LabelMode::kSingle) {
    std::vector<int> sorted;
    for (std::size_t t = 0; t < T; ++t)
      sorted.insert(sorted.end(), spec.docs_per_topic, static_cast<int>(t));
    const std::size_t chunks = std::min<std::size_t>(16, std::max<std::size_t>(1, n));
    std::vector<std::size_t> order(chunks);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t at = 0;
    for (std::size_t c : order) {
      const std::size_t lo = c * n / chunks, hi = (c + 1) * n / chunks;
      for (std::size_t i = lo; i < hi; ++i) labels[at++] = {sorted[i]};
    }
  } else {
    std::vector<std::vector<double>> cooc = spec.label_cooc;
    if (cooc.empty()) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      cooc.assign(T, std::vector<double>(T, 0.0));
      for (auto& row : cooc)
        for (double& v : row) v = std::pow(u(rng), 3.0);
    }
    std::vector<double> prior(T);
    for (std::size_t t = 0; t < T; ++t) prior[t] = 1.0 / std::sqrt(static_cast<double>(t + 1));
    for (std::size_t i = 0; i < n; ++i) {
      std::discrete_distribution<int> first(prior.begin(), prior.end());
      std::vector<int> set{first(rng)};
      while (set.size() < spec.cardinality) {
        std::vector<double> w(T, 0.0);
        double total = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
          if (std::find(set.begin(), set.end(), static_cast<int>(t)) != set.end()) continue;
          for (int s : set) w[t] += cooc[s][t];
          total += w[t];
        }
        if (total <= 0.0)
          for (std::size_t t = 0; t < T; ++t)
            if (std::find(set.begin(), set.end(), static_cast<int>(t)) == set.end()) w[t] = 1.0;
        std::discrete_distribution<int> next(w.begin(), w.end());
        set.push_back(next(rng));
      }
      labels[i] = set;
    }
  }

  std::vector<DriftPoint> drifts = spec.drift_points;
  std::stable_sort(drifts.begin(), drifts.end(),
                   [](const DriftPoint& a, const DriftPoint& b) { return a.position < b.position; });
  std::vector<std::vector<std::string>> retired(T);

  SynthStream out;
  out.records.reserve(n);
  out.topics.reserve(n);
  std::poisson_distribution<int> extra(spec.mean_doc_len - 1.0);
  std::bernoulli_distribution pick_core(spec.core_share);
  std::bernoulli_distribution reveal(spec.reveal_ratio);
  std::size_t next_drift = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (next_drift < drifts.size() && drifts[next_drift].position <= i) {
      const auto& dp = drifts[next_drift++];
      auto& terms = core[static_cast<std::size_t>(dp.topic)];
      const auto replace = static_cast<std::size_t>(std::ceil(dp.fraction * C));
      std::vector<std::size_t> slots(terms.size());
      std::iota(slots.begin(), slots.end(), std::size_t{0});
      std::shuffle(slots.begin(), slots.end(), rng);
      for (std::size_t k = 0; k < replace && k < slots.size(); ++k) {
        retired[static_cast<std::size_t>(dp.topic)].push_back(synth_term(terms[slots[k]]));
        terms[slots[k]] = next_fresh++;
      }
    }

    const auto& set = labels[i];
    const int len = extra(rng) + 1;
    std::string text;
    for (int j = 0; j < len; ++j) {
      std::size_t term;
      if (bg_count == 0 || pick_core(rng)) {
        std::uniform_int_distribution<std::size_t> lab(0, set.size() - 1);
        const auto& terms = core[static_cast<std::size_t>(set[lab(rng)])];
        std::uniform_int_distribution<std::size_t> k(0, terms.size() - 1);
        term = terms[k(rng)];
      } else {
        std::uniform_int_distribution<std::size_t> k(0, bg_count - 1);
        term = bg_begin + k(rng);
      }
      if (!text.empty()) text += ' ';
      text += synth_term(term);
    }

    RawRecord rec;
    rec.id = "d" + std::to_string(i);
    rec.text = std::move(text);
    rec.topic = set.front();
    if (spec.label_mode == LabelMode::kMulti) {
      std::vector<int> sorted = set;
      std::sort(sorted.begin(), sorted.end());
      for (int l : sorted) rec.labels.push_back("label" + std::to_string(l));
      rec.reveal_labels = reveal(rng);
    }
    out.topics.push_back(set.front());
    out.records.push_back(std::move(rec));
  }

  out.core_terms.resize(T);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t id : core[t]) out.core_terms[t].push_back(synth_term(id));
  out.retired_terms = std::move(retired);
  return out;
}

namespace {

std::size_t as_count(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ConfigError(key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

double as_real(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + " must be a number");
  return v.get<double>();
}

}  // namespace

SynthSpec synth_spec_from_config(const nlohmann::json& cfg) {
  SynthSpec s;
  for (const auto& [key, v] : cfg.items()) {
    if (key == "n_topics") {
      s.n_topics = as_count(v, key);
    } else if (key == "vocab_size") {
      s.vocab_size = as_count(v, key);
    } else if (key == "core_terms_per_topic") {
      s.core_terms_per_topic = as_count(v, key);
    } else if (key == "docs_per_topic") {
      s.docs_per_topic = as_count(v, key);
    } else if (key == "mean_doc_len") {
      s.mean_doc_len = as_real(v, key);
    } else if (key == "core_share") {
      s.core_share = as_real(v, key);
    } else if (key == "seed") {
      s.seed = as_count(v, key);
    } else if (key == "drift") {
      if (!v.is_array()) throw ConfigError("drift must be a list of [topic, position, fraction]");
      for (const auto& row : v) {
        if (!row.is_array() || row.size() != 3)
          throw ConfigError("drift entries must be [topic, position, fraction]");
        DriftPoint dp;
        dp.topic = static_cast<int>(as_count(row[0], "drift topic"));
        dp.position = as_count(row[1], "drift position");
        dp.fraction = as_real(row[2], "drift fraction");
        s.drift_points.push_back(dp);
      }
    } else if (key == "labels.mode") {
      if (!v.is_string()) throw ConfigError("labels.mode must be a string");
      const auto mode = v.get<std::string>();
      if (mode == "single") {
        s.label_mode = LabelMode::kSingle;
      } else if (mode == "multi") {
        s.label_mode = LabelMode::kMulti;
      } else {
        throw ConfigError("labels.mode must be single or multi");
      }
    } else if (key == "labels.cardinality") {
      s.cardinality = as_count(v, key);
    } else if (key == "labels.reveal_ratio") {
      s.reveal_ratio = as_real(v, key);
    } else if (key == "labels.n_docs") {
      s.n_docs = as_count(v, key);
    } else if (key == "labels.cooc") {
      if (!v.is_array()) throw ConfigError("labels.cooc must be a matrix");
      for (const auto& row : v) {
        if (!row.is_array()) throw ConfigError("labels.cooc must be a matrix");
        std::vector<double> r;
        for (const auto& x : row) r.push_back(as_real(x, key));
        s.label_cooc.push_back(std::move(r));
      }
    } else {
      throw ConfigError("unknown spec key '" + key + "'");
    }
  }
  s.validate();
  return s;
}

SynthSpec load_synth_spec(const std::string& path) {
  return synth_spec_from_config(load_kv_config(path));
}

}  // namespace evostream
