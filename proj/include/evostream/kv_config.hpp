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

#include <json.hpp>
#include <string>

namespace evostream {

/// Parses the small TOML subset used by spec and run-config files:
/// `key = value` lines, `[section]` headers (keys become "section.key"),
/// '#' comments, and values that are numbers, booleans, quoted strings or
/// (nested) arrays of those. Throws ConfigError with the line number.
nlohmann::json parse_kv_config(const std::string& text);
nlohmann::json load_kv_config(const std::string& path);

}  // namespace evostream
