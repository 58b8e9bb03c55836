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

#include <deque>
#include <random>
#include <unordered_map>

#include "evostream/clusterer.hpp"

namespace evostream {

/// Defaults: alpha 0.04, beta 5e-4, lambda 6e-6, rho 60, delta 1, psi 500,
/// eta 30.
ParamBlock eindm_defaults();

class EindmModel : public StreamClusterer {
 public:
  explicit EindmModel(ParamBlock params = eindm_defaults(), std::uint64_t seed = 0);

  std::string_view name() const override { return "eindm"; }
  Assignment process(const Document& d) override;
  const ModelState& state() const override { return state_; }
  ModelState& mutable_state() { return state_; }

  /// Removes and re-assigns up to eta buffered documents.
  void episodic_infer();

  std::size_t buffer_size() const { return buffer_.size(); }
  /// Ids of the buffered documents, oldest first.
  std::vector<std::string> buffered_ids() const;
  /// Current cluster of a logged document, following merges; kNoCluster when
  /// its cluster is gone.
  ClusterId current_cluster(std::size_t index) const;

 private:
  struct Entry {
    Document doc;
    CoocMatrix cooc;
    std::size_t index;
  };

  Choice choose(const DocView& v);
  ClusterId place(const Document& d, const CoocMatrix& dc, const Choice& c);
  void update_active();
  ClusterId resolve(ClusterId id) const;

  ModelState state_;
  std::deque<Entry> buffer_;
  std::mt19937_64 rng_;
  std::unordered_map<ClusterId, ClusterId> redirect_;
};

}  // namespace evostream
