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
#include <limits>
#include <stdexcept>
#include <string>

namespace evostream {

using TermId = std::uint32_t;
using LabelId = std::uint32_t;
using ClusterId = std::uint32_t;
using Tick = std::uint64_t;

inline constexpr ClusterId kNoCluster = std::numeric_limits<ClusterId>::max();

/// Raised when a model or accumulator detects a broken internal invariant.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for malformed configuration or inconsistent specifications.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for file-system and stream-format failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evostream
