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

#include "evostream/cooc.hpp"

#include <cmath>

namespace evostream {

std::int64_t CoocMatrix::raw(TermId i, TermId j) const {
  auto r = rows_.find(i);
  if (r == rows_.end()) return 0;
  auto e = r->second.find(j);
  return e == r->second.end() ? 0 : e->second;
}

void CoocMatrix::add_raw(TermId i, TermId j, std::int64_t units) {
  if (units == 0) return;
  if (i == j) throw InvariantError("co-occurrence matrix has no diagonal");
  auto& row = rows_[i];
  auto [it, inserted] = row.try_emplace(j, 0);
  if (inserted) ++entries_;
  it->second += units;
  if (it->second < 0) throw InvariantError("negative co-occurrence score");
  if (it->second == 0) {
    row.erase(it);
    --entries_;
    if (row.empty()) rows_.erase(i);
  }
}

void CoocMatrix::add(const CoocMatrix& other) {
  for (const auto& [i, row] : other.rows_)
    for (const auto& [j, v] : row) add_raw(i, j, v);
}

void CoocMatrix::subtract(const CoocMatrix& other) {
  for (const auto& [i, row] : other.rows_)
    for (const auto& [j, v] : row) add_raw(i, j, -v);
}

void CoocMatrix::erase_term(TermId w) {
  auto r = rows_.find(w);
  if (r == rows_.end()) return;
  for (const auto& [j, v] : r->second) {
    (void)v;
    auto col = rows_.find(j);
    if (col == rows_.end()) continue;
    if (col->second.erase(w)) --entries_;
    if (col->second.empty()) rows_.erase(col);
  }
  entries_ -= r->second.size();
  rows_.erase(r);
}

const CoocMatrix::Row* CoocMatrix::row(TermId i) const {
  auto r = rows_.find(i);
  return r == rows_.end() ? nullptr : &r->second;
}

std::size_t CoocMatrix::neighbor_count(TermId i) const {
  const Row* r = row(i);
  return r ? r->size() : 0;
}

bool CoocMatrix::operator==(const CoocMatrix& o) const {
  return entries_ == o.entries_ && rows_ == o.rows_;
}

std::int64_t cooc_ratio_units(double n_i, double n_j) {
  return std::llround(static_cast<long double>(CoocMatrix::kScale) * n_i /
                      (static_cast<long double>(n_i) + n_j));
}

namespace {

void add_pair(CoocMatrix& m, TermId a, int na, TermId b, int nb) {
  if (m.contains(a, b)) return;
  const auto ab = cooc_ratio_units(na, nb);
  m.add_raw(a, b, ab);
  m.add_raw(b, a, CoocMatrix::kScale - ab);
}

}  // namespace

CoocMatrix doc_cooc(const Document& d, const CoocOptions& opts) {
  CoocMatrix m;
  const auto& tc = d.term_counts;
  if (opts.mode == CoocMode::kFull) {
    for (std::size_t x = 0; x < tc.size(); ++x)
      for (std::size_t y = x + 1; y < tc.size(); ++y)
        add_pair(m, tc[x].first, tc[x].second, tc[y].first, tc[y].second);
    return m;
  }
  if (opts.window <= 0) return m;
  const auto n = d.tokens.size();
  const auto win = static_cast<std::size_t>(opts.window);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n && q - p <= win; ++q) {
      const TermId a = d.tokens[p];
      const TermId b = d.tokens[q];
      if (a == b) continue;
      add_pair(m, a, d.count(a), b, d.count(b));
    }
  }
  return m;
}

}  // namespace evostream
