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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "evostream/types.hpp"

namespace evostream {

/// One stream record as it arrives on the wire.
struct RawRecord {
  std::string id;
  std::string text;
  std::vector<std::string> labels;
  bool reveal_labels = false;
  std::optional<int> topic;  // ground truth emitted by the synthetic generator
};

/// Bidirectional string <-> dense id map. Ids are handed out from 0.
class Vocabulary {
 public:
  TermId intern(std::string_view term);
  std::optional<TermId> find(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_.at(id); }
  std::size_t size() const { return terms_.size(); }

 private:
  std::unordered_map<std::string, TermId> ids_;
  std::vector<std::string> terms_;
};

/// A preprocessed document. `term_counts` is sorted by term id.
struct Document {
  std::string id;
  std::vector<TermId> tokens;
  std::vector<std::pair<TermId, int>> term_counts;
  std::vector<LabelId> labels;  // sorted, unique
  std::size_t arrival = 0;

  bool empty() const { return tokens.empty(); }
  std::size_t length() const { return tokens.size(); }
  int count(TermId w) const;
  bool contains(TermId w) const { return count(w) > 0; }

  /// Builds a document directly from interned tokens (tests and bindings).
  static Document from_tokens(std::string id, std::vector<TermId> tokens,
                              std::size_t arrival = 0);
  /// Builds a document from explicit counts; tokens are laid out term by term.
  static Document from_counts(std::string id,
                              std::vector<std::pair<TermId, int>> counts,
                              std::size_t arrival = 0);
};

struct PreprocessConfig {
  bool lowercase = true;
  bool stem = false;
  std::unordered_set<std::string> stopwords;

  /// Lowercase on, stemming off, the bundled English stopword list.
  static PreprocessConfig defaults();
};

/// The bundled English stopword list.
const std::unordered_set<std::string>& default_stopwords();
/// Reads one stopword per line; '#' starts a comment.
std::unordered_set<std::string> load_stopwords(const std::string& path);

/// Splits on whitespace and ASCII punctuation. Non-ASCII bytes stay in tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Cleans, interns and counts the tokens of a raw record. Labels are interned
/// into `labels`.
Document preprocess(const RawRecord& raw, const PreprocessConfig& cfg,
                    Vocabulary& vocab, Vocabulary& labels);
Document preprocess(const RawRecord& raw, const PreprocessConfig& cfg,
                    Vocabulary& vocab);

struct TfIdfStats {
  std::size_t documents = 0;      // D
  std::size_t doc_frequency = 0;  // count(d|w)
};

/// count(w|d) * (1 + ln(D / df)). Throws std::domain_error when df == 0.
double tf_idf(TermId w, const Document& d, const TfIdfStats& stats);

}  // namespace evostream
