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

/// Defaults: alpha 0.05, beta 0.004, gamma 10, lambda 1e-6; the ES variant
/// uses alpha 0.09, beta 0.006.
ParamBlock osgm_defaults(osgm::Variant variant = osgm::Variant::kWithIcf);

class OsgmModel : public StreamClusterer {
 public:
  explicit OsgmModel(osgm::Variant variant = osgm::Variant::kWithIcf);
  OsgmModel(ParamBlock params, osgm::Variant variant);

  std::string_view name() const override {
    return variant_ == osgm::Variant::kEs ? "osgm-es" : "osgm";
  }
  Assignment process(const Document& d) override;
  const ModelState& state() const override { return state_; }
  ModelState& mutable_state() { return state_; }
  osgm::Variant variant() const { return variant_; }

  /// Decay, merge or delete outdated clusters (run at the start of each tick).
  void update_active();

 private:
  ModelState state_;
  osgm::Variant variant_;
};

}  // namespace evostream
