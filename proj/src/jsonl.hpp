#pragma once

// Line-delimited JSON files with an optional leading {"_meta": ...} record.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace forge {

using Json = nlohmann::ordered_json;

struct JsonlFile {
  std::optional<Json> meta;   // contents of the "_meta" key, when present
  std::vector<Json> records;  // one per remaining non-empty line
};

JsonlFile read_jsonl(const std::string& path);

// Writes meta (when non-null) as {"_meta": meta} on the first line, then one
// record per line. Output is byte-deterministic for identical inputs.
void write_jsonl(const std::string& path, const std::optional<Json>& meta,
                 const std::vector<Json>& records);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// Standard artifact metadata block: tool version plus caller-provided fields.
Json make_meta(uint64_t seed, const Json& inputs);

extern const char* kToolVersion;

}  // namespace forge
