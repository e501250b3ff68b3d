#include "llm.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "jsonl.hpp"

namespace forge {

namespace {

// --- fallback engine ---------------------------------------------------------

const std::vector<std::string>& header_keys() {
  static const std::vector<std::string> keys = {"genres=", "top_titles=", "tags=", "fields="};
  return keys;
}

// Value of `key` on the header line: text from after the key up to the next
// known key (values may contain spaces and commas).
std::string header_value(const std::string& line, const std::string& key) {
  size_t pos = line.find(key);
  if (pos == std::string::npos) return "";
  size_t start = pos + key.size();
  size_t end = line.size();
  for (const auto& other : header_keys()) {
    size_t p = line.find(other, start);
    if (p != std::string::npos && p < end) end = p;
  }
  return trim(line.substr(start, end - start));
}

std::vector<std::string> csv_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& part : split(s, ',')) {
    std::string t = trim(part);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::string user_summary_from_header(const std::string& line) {
  std::vector<std::string> genres = csv_list(header_value(line, "genres="));
  std::vector<std::string> titles = csv_list(header_value(line, "top_titles="));
  std::vector<std::string> tags = csv_list(header_value(line, "tags="));

  const std::vector<std::string>& enjoys = genres.empty() ? tags : genres;
  std::string out;
  if (enjoys.empty()) {
    out = "The user enjoys a variety of games";
  } else {
    out = "The user enjoys " + join_natural(enjoys) + " games";
  }
  if (!titles.empty()) out += " such as " + join_natural(titles);
  out += ".";
  if (!genres.empty() && !tags.empty()) {
    out += " They favor " + join_natural(tags) + " experiences.";
  }
  return out;
}

std::string item_summary_from_header(const std::string& line) {
  std::string encoded = header_value(line, "fields=");
  std::vector<std::string> fragments;
  for (const auto& block : split(encoded, ';')) {
    if (trim(block).empty()) continue;
    std::vector<std::string> parts = split(block, '|');
    if (parts.size() < 3) continue;
    const std::string& name = parts[0];
    const std::string& kind = parts[1];
    std::vector<std::string> values(parts.begin() + 2, parts.end());
    if (kind == "c") {
      if (name == "genre") {
        fragments.push_back("in the " + join_natural(values) + " genre");
      } else {
        fragments.push_back("tagged " + join_natural(values));
      }
    } else if (kind == "n") {
      std::string unit = values.size() > 1 ? values[1] : "";
      if (name == "price" || unit == "usd") {
        fragments.push_back("priced at " + values[0] + " dollars");
      } else {
        fragments.push_back("with " + name + " of " + values[0]);
      }
    } else if (kind == "d") {
      if (name.find("release") != std::string::npos) {
        fragments.push_back("released on " + values[0]);
      } else {
        fragments.push_back("with " + name + " of " + values[0]);
      }
    } else {  // "t"
      if (name == "publisher") {
        fragments.push_back("published by " + values[0]);
      } else {
        fragments.push_back("with " + name + " " + values[0]);
      }
    }
  }
  if (fragments.empty()) return "A game.";
  return "A game " + join(fragments, ", ") + ".";
}

std::string cap_words(const std::string& text, int max_tokens) {
  if (max_tokens < 1) max_tokens = 1;
  int count = 0;
  bool in_word = false;
  for (size_t i = 0; i < text.size(); ++i) {
    bool space = std::isspace(static_cast<unsigned char>(text[i]));
    if (!space && !in_word) {
      ++count;
      if (count > max_tokens) return trim(text.substr(0, i));
    }
    in_word = !space;
  }
  return text;
}

std::string fallback_generate(const GenRequest& req) {
  std::string first_line = req.prompt.substr(0, req.prompt.find('\n'));
  std::string out;
  if (first_line.rfind("SUMMARIZE_USER", 0) == 0) {
    out = user_summary_from_header(first_line);
  } else if (first_line.rfind("SUMMARIZE_ITEM", 0) == 0) {
    out = item_summary_from_header(first_line);
  } else if (first_line.rfind("REPHRASE_TURN", 0) == 0) {
    size_t nl = req.prompt.find('\n');
    out = nl == std::string::npos ? "" : req.prompt.substr(nl + 1);
    if (out.empty()) out = req.prompt;
  } else {
    out = req.prompt;  // unknown prompts echo back
  }
  return cap_words(out, req.max_tokens);
}

// --- remote client -----------------------------------------------------------

struct ParsedEndpoint {
  std::string base;    // scheme://host[:port]
  std::string prefix;  // path prefix, possibly empty
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
  size_t scheme_end = endpoint.find("://");
  if ((endpoint.rfind("http://", 0) != 0 && endpoint.rfind("https://", 0) != 0) ||
      scheme_end == std::string::npos || scheme_end + 3 >= endpoint.size()) {
    fail(ErrorKind::config, "remote endpoint must be an absolute URL: '" + endpoint + "'");
  }
  size_t path_start = endpoint.find('/', scheme_end + 3);
  ParsedEndpoint out;
  if (path_start == std::string::npos) {
    out.base = endpoint;
  } else {
    out.base = endpoint.substr(0, path_start);
    out.prefix = endpoint.substr(path_start);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  return out;
}

// Global in-flight limiter for remote calls.
std::mutex g_inflight_mu;
std::condition_variable g_inflight_cv;
int g_inflight = 0;

class InFlightGuard {
 public:
  explicit InFlightGuard(int cap) {
    std::unique_lock lock(g_inflight_mu);
    g_inflight_cv.wait(lock, [&] { return g_inflight < cap; });
    ++g_inflight;
  }
  ~InFlightGuard() {
    {
      std::lock_guard lock(g_inflight_mu);
      --g_inflight;
    }
    g_inflight_cv.notify_one();
  }
};

std::string remote_generate(const RemoteBackend& backend, const GenRequest& req) {
  ParsedEndpoint ep = parse_endpoint(backend.endpoint);

  const char* token = backend.auth_env.empty() ? nullptr : std::getenv(backend.auth_env.c_str());
  if (!token || !*token) {
    fail(ErrorKind::config, "auth env var '" + backend.auth_env + "' not set (endpoint " +
                                backend.endpoint + ")");
  }

  Json body;
  body["model"] = backend.model;
  body["messages"] = Json::array({Json{{"role", "user"}, {"content", req.prompt}}});
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_tokens;
  body["seed"] = req.seed;
  const std::string payload = body.dump();
  const std::string path = ep.prefix + "/chat/completions";

  InFlightGuard guard(std::min(backend.max_in_flight, max_jobs()));

  const int backoff_s[] = {1, 2, 4};
  std::string last_error;
  for (int attempt = 0; attempt < std::max(1, backend.max_attempts); ++attempt) {
    if (attempt > 0) {
      double secs = backoff_s[std::min(attempt - 1, 2)] * backend.backoff_scale;
      std::this_thread::sleep_for(std::chrono::duration<double>(secs));
    }
    httplib::Client client(ep.base);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    httplib::Headers headers = {{"Authorization", std::string("Bearer ") + token}};
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "network failure calling " + backend.endpoint + path + ": " +
                   httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "http status " + std::to_string(res->status) + " from " + backend.endpoint + path;
      if (res->status >= 500) continue;  // retry server errors only
      fail(ErrorKind::http_status, last_error);
    }
    Json parsed;
    try {
      parsed = Json::parse(res->body);
    } catch (const std::exception& e) {
      fail(ErrorKind::parse, "bad response from " + backend.endpoint + path + ": " + e.what());
    }
    if (!parsed.contains("choices") || parsed["choices"].empty() ||
        !parsed["choices"][0].contains("message")) {
      fail(ErrorKind::parse, "response from " + backend.endpoint + path +
                                 " lacks choices[0].message.content");
    }
    std::string content = parsed["choices"][0]["message"].value("content", "");
    if (content.empty()) {
      fail(ErrorKind::parse, "empty completion from " + backend.endpoint + path);
    }
    return content;
  }
  fail(last_error.rfind("http", 0) == 0 ? ErrorKind::http_status : ErrorKind::network, last_error);
}

// Remote output is not under our control; strip any forbidden phrases the
// contracts promise to exclude.
std::string scrub(std::string text, const std::vector<std::string>& forbidden) {
  for (const auto& phrase : forbidden) {
    if (phrase.empty()) continue;
    std::string lower_text = to_lower(text);
    std::string lower_phrase = to_lower(phrase);
    size_t pos;
    while ((pos = lower_text.find(lower_phrase)) != std::string::npos) {
      text.erase(pos, phrase.size());
      lower_text.erase(pos, phrase.size());
    }
  }
  return text;
}

}  // namespace

std::string generate(const GenBackend& backend, const GenRequest& req) {
  if (req.prompt.empty()) fail(ErrorKind::invalid_argument, "generate: empty prompt");
  if (req.max_tokens < 1) fail(ErrorKind::invalid_argument, "generate: max_tokens must be >= 1");
  if (const auto* remote = std::get_if<RemoteBackend>(&backend)) {
    return remote_generate(*remote, req);
  }
  return fallback_generate(req);
}

namespace {

// Category values of `field` ranked by frequency (desc), then value (asc).
std::vector<std::string> top_values(const std::vector<Item>& history, std::string_view field,
                                    size_t limit) {
  std::map<std::string, size_t> freq;
  for (const auto& item : history) {
    if (const auto* c = item.categories(field)) {
      for (const auto& v : c->values) ++freq[v];
    }
  }
  std::vector<std::pair<std::string, size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (const auto& [v, n] : ranked) {
    if (out.size() == limit) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string build_user_prompt(const std::vector<Item>& history) {
  std::vector<std::string> genres = top_values(history, "genre", 3);
  std::vector<std::string> tags = top_values(history, "tags", 2);
  std::vector<std::string> titles;
  for (const auto& item : history) {
    titles.push_back(item.title);
    if (titles.size() == 3) break;
  }
  std::string header = "SUMMARIZE_USER";
  if (!genres.empty()) header += " genres=" + join(genres, ",");
  if (!titles.empty()) header += " top_titles=" + join(titles, ",");
  if (!tags.empty()) header += " tags=" + join(tags, ",");
  return header +
         "\nWrite one to three sentences describing this user's gaming preferences. "
         "Do not mention any item ids.";
}

std::string summarize_user(const std::vector<Item>& history, const GenBackend& backend,
                           uint64_t seed) {
  if (history.empty()) fail(ErrorKind::invalid_argument, "summarize_user: empty history");
  GenRequest req;
  req.prompt = build_user_prompt(history);
  req.max_tokens = 120;
  req.seed = seed;
  std::string out = generate(backend, req);
  if (std::holds_alternative<RemoteBackend>(backend)) {
    std::vector<std::string> ids;
    for (const auto& item : history) ids.push_back(item.id);
    out = scrub(std::move(out), ids);
  }
  return out;
}

std::string build_item_prompt(const Item& item, const std::vector<std::string>& chosen_fields) {
  if (chosen_fields.empty()) fail(ErrorKind::invalid_argument, "summarize_item: no fields chosen");
  auto clean = [](std::string s) {
    for (char& c : s) {
      if (c == '|' || c == ';') c = '/';
    }
    return s;
  };
  std::vector<std::string> blocks;
  for (const auto& name : chosen_fields) {
    const FieldValue* v = item.find_field(name);
    if (!v) {
      fail(ErrorKind::invalid_argument, "summarize_item: item '" + item.id + "' has no field '" +
                                            name + "'");
    }
    std::string block = clean(name);
    if (const auto* t = std::get_if<TextValue>(v)) {
      block += "|t|" + clean(to_lower(t->value));
    } else if (const auto* n = std::get_if<NumberValue>(v)) {
      block += "|n|" + format_number(n->value);
      if (!n->unit.empty()) block += "|" + to_lower(n->unit);
    } else if (const auto* d = std::get_if<DateValue>(v)) {
      block += "|d|" + format_long_date(d->days);
    } else {
      const auto& c = std::get<CategoriesValue>(*v);
      for (const auto& val : c.values) block += (block.find('|') == std::string::npos ? "|c|" : "|") + clean(val);
    }
    blocks.push_back(std::move(block));
  }
  return "SUMMARIZE_ITEM fields=" + join(blocks, ";") +
         "\nWrite one fluent sentence describing an item with exactly these attributes. "
         "Do not mention the item's name.";
}

std::string summarize_item(const Item& item, const std::vector<std::string>& chosen_fields,
                           const GenBackend& backend, uint64_t seed) {
  GenRequest req;
  req.prompt = build_item_prompt(item, chosen_fields);
  req.max_tokens = 80;
  req.seed = seed;
  std::string out = generate(backend, req);
  if (std::holds_alternative<RemoteBackend>(backend)) {
    out = scrub(std::move(out), {item.title, item.id});
  }
  return out;
}

std::string rephrase_turn(const std::string& draft, const GenBackend& backend, uint64_t seed) {
  if (std::holds_alternative<FallbackBackend>(backend)) return draft;
  GenRequest req;
  req.prompt = "REPHRASE_TURN rewrite this dialogue turn in your own words, keeping every fact:\n" +
               draft;
  req.max_tokens = 120;
  req.seed = seed;
  return generate(backend, req);
}

}  // namespace forge
