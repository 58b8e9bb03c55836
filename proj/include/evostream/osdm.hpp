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

#include "evostream/clusterer.hpp"

namespace evostream {

/// Defaults: alpha 2e-3, beta 4e-5, lambda 6e-6.
ParamBlock osdm_defaults();

class OsdmModel : public StreamClusterer {
 public:
  explicit OsdmModel(ParamBlock params = osdm_defaults());

  std::string_view name() const override { return "osdm"; }
  Assignment process(const Document& d) override;
  const ModelState& state() const override { return state_; }
  ModelState& mutable_state() { return state_; }

 private:
  ModelState state_;
};

}  // namespace evostream
