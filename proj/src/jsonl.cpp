#include "jsonl.hpp"

#include <fstream>
#include <sstream>

#include "util.hpp"

namespace forge {

const char* kToolVersion = "0.1.0";

JsonlFile read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  JsonlFile out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& e) {
      fail(ErrorKind::parse, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (j.is_object() && j.contains("_meta")) {
      out.meta = j["_meta"];
      continue;
    }
    out.records.push_back(std::move(j));
  }
  return out;
}

void write_jsonl(const std::string& path, const std::optional<Json>& meta,
                 const std::vector<Json>& records) {
  std::ostringstream os;
  if (meta) {
    Json head;
    head["_meta"] = *meta;
    os << head.dump() << '\n';
  }
  for (const auto& r : records) os << r.dump() << '\n';
  write_file(path, os.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::io, "write failed: " + path);
}

Json make_meta(uint64_t seed, const Json& inputs) {
  Json m;
  m["tool"] = "forge";
  m["version"] = kToolVersion;
  m["seed"] = seed;
  if (!inputs.is_null()) m["inputs"] = inputs;
  return m;
}

}  // namespace forge
