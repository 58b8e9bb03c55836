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

#include "evostream/stream_io.hpp"

#include <json.hpp>

namespace evostream {

using nlohmann::json;

RawRecord parse_record(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(line_no, "expected a JSON object");
  RawRecord rec;
  try {
    const auto& id = j.at("id");
    rec.id = id.is_string() ? id.get<std::string>() : id.dump();
    rec.text = j.at("text").get<std::string>();
    if (auto it = j.find("labels"); it != j.end() && !it->is_null())
      rec.labels = it->get<std::vector<std::string>>();
    if (auto it = j.find("reveal"); it != j.end() && !it->is_null())
      rec.reveal_labels = it->get<bool>();
    if (auto it = j.find("topic"); it != j.end() && !it->is_null())
      rec.topic = it->get<int>();
  } catch (const json::exception& e) {
    throw ParseError(line_no, std::string("bad field: ") + e.what());
  }
  if (rec.id.empty()) throw ParseError(line_no, "empty id");
  return rec;
}

std::string format_record(const RawRecord& rec) {
  json j;
  j["id"] = rec.id;
  j["text"] = rec.text;
  if (!rec.labels.empty()) j["labels"] = rec.labels;
  if (rec.reveal_labels) j["reveal"] = true;
  if (rec.topic) j["topic"] = *rec.topic;
  return j.dump();
}

StreamReader::StreamReader(const std::string& path, OnParseError policy)
    : in_(path), policy_(policy) {
  if (!in_) throw IoError("cannot open input stream: " + path);
}

std::optional<RawRecord> StreamReader::next() {
  std::string buf;
  while (std::getline(in_, buf)) {
    ++line_;
    if (buf.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      return parse_record(buf, line_);
    } catch (const ParseError& e) {
      if (policy_ == OnParseError::kAbort) throw;
      warnings_.emplace_back(e.what());
    }
  }
  if (in_.bad()) throw IoError("read failure at line " + std::to_string(line_));
  return std::nullopt;
}

std::vector<RawRecord> read_stream(const std::string& path, OnParseError policy) {
  StreamReader reader(path, policy);
  std::vector<RawRecord> out;
  while (auto rec = reader.next()) out.push_back(std::move(*rec));
  return out;
}

void write_stream(const std::string& path, const std::vector<RawRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  for (const auto& r : records) out << format_record(r) << '\n';
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace evostream
