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

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "evostream/text.hpp"

namespace evostream {

/// Malformed line at a known position in a JSONL stream.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class OnParseError { kAbort, kSkip };

/// Parses one JSONL object: {"id": str, "text": str, "labels": [str]?,
/// "reveal": bool?, "topic": int?}. Throws ParseError.
RawRecord parse_record(const std::string& line, std::size_t line_no);
std::string format_record(const RawRecord& rec);

/// Single-consumer iterator over a JSONL file. Blank lines are ignored.
class StreamReader {
 public:
  explicit StreamReader(const std::string& path,
                        OnParseError policy = OnParseError::kAbort);

  /// Next record in file order, or nullopt at end of file.
  std::optional<RawRecord> next();

  std::size_t line() const { return line_; }
  /// Messages for lines skipped under OnParseError::kSkip.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::ifstream in_;
  OnParseError policy_;
  std::size_t line_ = 0;
  std::vector<std::string> warnings_;
};

/// Reads the whole file.
std::vector<RawRecord> read_stream(const std::string& path,
                                   OnParseError policy = OnParseError::kAbort);
void write_stream(const std::string& path, const std::vector<RawRecord>& records);

}  // namespace evostream
