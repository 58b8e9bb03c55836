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

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "evostream/text.hpp"
#include "evostream/types.hpp"

namespace evostream {

/// Sparse term-to-term co-occurrence scores.
///
/// Scores are accumulated in fixed point with kScale units per 1.0. kScale is
/// divisible by every integer up to 16, so per-document ratios N_i/(N_i+N_j)
/// with N_i+N_j <= 16 are represented exactly, and the two directions of a pair
/// always sum to exactly one unit. Accumulating and subtracting documents is
/// therefore exact, which keeps removal the precise inverse of addition.
class CoocMatrix {
 public:
  static constexpr std::int64_t kScale = std::int64_t{720720} << 20;
  using Row = std::unordered_map<TermId, std::int64_t>;

  double get(TermId i, TermId j) const {
    return static_cast<double>(raw(i, j)) / static_cast<double>(kScale);
  }
  std::int64_t raw(TermId i, TermId j) const;
  bool contains(TermId i, TermId j) const { return raw(i, j) != 0; }

  /// Adds `units` to entry (i, j); entries reaching zero are erased.
  void add_raw(TermId i, TermId j, std::int64_t units);
  /// Entrywise sum / difference.
  void add(const CoocMatrix& other);
  void subtract(const CoocMatrix& other);
  /// Drops every entry in row w and column w.
  void erase_term(TermId w);

  const Row* row(TermId i) const;
  std::size_t neighbor_count(TermId i) const;
  std::size_t entry_count() const { return entries_; }
  bool empty() const { return entries_ == 0; }
  const std::unordered_map<TermId, Row>& rows() const { return rows_; }

  bool operator==(const CoocMatrix& o) const;

 private:
  std::unordered_map<TermId, Row> rows_;
  std::size_t entries_ = 0;
};

/// Fixed-point representation of n_i / (n_i + n_j), rounded to nearest.
std::int64_t cooc_ratio_units(double n_i, double n_j);

enum class CoocMode { kFull, kWindow };

struct CoocOptions {
  CoocMode mode = CoocMode::kFull;
  int window = 1;  // delta; 0 yields an empty matrix
};

/// Per-document co-occurrence: entry (i, j) = N_d^i / (N_d^i + N_d^j) for each
/// distinct term pair that co-occurs (anywhere for kFull, within `window`
/// token positions for kWindow).
CoocMatrix doc_cooc(const Document& d, const CoocOptions& opts);

}  // namespace evostream
