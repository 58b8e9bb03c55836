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

#include "evostream/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "evostream/porter_stemmer.hpp"

namespace evostream {

TermId Vocabulary::intern(std::string_view term) {
  auto it = ids_.find(std::string(term));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<TermId>(terms_.size());
  terms_.emplace_back(term);
  ids_.emplace(terms_.back(), id);
  return id;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  auto it = ids_.find(std::string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int Document::count(TermId w) const {
  auto it = std::lower_bound(
      term_counts.begin(), term_counts.end(), w,
      [](const std::pair<TermId, int>& e, TermId t) { return e.first < t; });
  return (it != term_counts.end() && it->first == w) ? it->second : 0;
}

Document Document::from_tokens(std::string id, std::vector<TermId> tokens,
                               std::size_t arrival) {
  Document d;
  d.id = std::move(id);
  d.arrival = arrival;
  std::map<TermId, int> counts;
  for (TermId t : tokens) ++counts[t];
  d.tokens = std::move(tokens);
  d.term_counts.assign(counts.begin(), counts.end());
  return d;
}

Document Document::from_counts(std::string id,
                               std::vector<std::pair<TermId, int>> counts,
                               std::size_t arrival) {
  std::vector<TermId> tokens;
  for (const auto& [w, n] : counts) {
    if (n < 0) throw std::invalid_argument("negative term count");
    tokens.insert(tokens.end(), static_cast<std::size_t>(n), w);
  }
  return from_tokens(std::move(id), std::move(tokens), arrival);
}

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",       "about",  "above",   "after",  "again",   "against", "all",
      "am",      "an",     "and",     "any",    "are",     "as",      "at",
      "be",      "because", "been",   "before", "being",   "below",   "between",
      "both",    "but",    "by",      "can",    "could",   "did",     "do",
      "does",    "doing",  "down",    "during", "each",    "few",     "for",
      "from",    "further", "had",    "has",    "have",    "having",  "he",
      "her",     "here",   "hers",    "herself", "him",    "himself", "his",
      "how",     "i",      "if",      "in",     "into",    "is",      "it",
      "its",     "itself", "just",    "me",     "more",    "most",    "my",
      "myself",  "no",     "nor",     "not",    "now",     "of",      "off",
      "on",      "once",   "only",    "or",     "other",   "our",     "ours",
      "ourselves", "out",  "over",    "own",    "same",    "she",     "should",
      "so",      "some",   "such",    "than",   "that",    "the",     "their",
      "theirs",  "them",   "themselves", "then", "there",  "these",   "they",
      "this",    "those",  "through", "to",     "too",     "under",   "until",
      "up",      "very",   "was",     "we",     "were",    "what",    "when",
      "where",   "which",  "while",   "who",    "whom",    "why",     "will",
      "with",    "would",  "you",     "your",   "yours",   "yourself",
      "yourselves", "s",   "t",       "rt",     "via",     "amp"};
  return words;
}

PreprocessConfig PreprocessConfig::defaults() {
  PreprocessConfig cfg;
  cfg.stopwords = default_stopwords();
  return cfg;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (auto& tok : tokenize(line)) {
      std::transform(tok.begin(), tok.end(), tok.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      words.insert(std::move(tok));
    }
  }
  return words;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    const bool separator = c < 0x80 && (std::isspace(c) || std::ispunct(c) ||
                                        std::iscntrl(c));
    if (separator) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Document preprocess(const RawRecord& raw, const PreprocessConfig& cfg,
                    Vocabulary& vocab, Vocabulary& labels) {
  std::vector<TermId> ids;
  for (auto& tok : tokenize(raw.text)) {
    if (cfg.lowercase) {
      std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) {
        return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
      });
    }
    if (cfg.stopwords.count(tok)) continue;
    if (cfg.stem) tok = porter_stem(tok);
    if (tok.empty()) continue;
    ids.push_back(vocab.intern(tok));
  }
  Document d = Document::from_tokens(raw.id, std::move(ids));
  for (const auto& l : raw.labels) d.labels.push_back(labels.intern(l));
  std::sort(d.labels.begin(), d.labels.end());
  d.labels.erase(std::unique(d.labels.begin(), d.labels.end()), d.labels.end());
  return d;
}

Document preprocess(const RawRecord& raw, const PreprocessConfig& cfg,
                    Vocabulary& vocab) {
  Vocabulary scratch;
  Document d = preprocess(raw, cfg, vocab, scratch);
  d.labels.clear();
  return d;
}

double tf_idf(TermId w, const Document& d, const TfIdfStats& stats) {
  if (stats.doc_frequency == 0)
    throw std::domain_error("tf_idf: document frequency is zero");
  const double tf = d.count(w);
  return tf * (1.0 + std::log(static_cast<double>(stats.documents) /
                              static_cast<double>(stats.doc_frequency)));
}

}  // namespace evostream
