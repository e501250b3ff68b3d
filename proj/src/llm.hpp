#pragma once

// Pluggable text generation: an OpenAI-compatible remote client plus a
// deterministic offline fallback, so the whole pipeline runs with no network.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "catalog.hpp"

namespace forge {

struct GenRequest {
  std::string prompt;
  int max_tokens = 256;
  double temperature = 0.0;
  uint64_t seed = 0;
};

struct RemoteBackend {
  std::string endpoint;   // absolute URL, e.g. "http://localhost:8080/v1"
  std::string model;      // model name sent in the request body
  std::string auth_env;   // env var holding the bearer token
  int max_in_flight = 4;
  int max_attempts = 3;   // retried with 1s/2s/4s backoff
  // Test hook: scales the backoff delays (1.0 = real seconds).
  double backoff_scale = 1.0;
};

struct FallbackBackend {};

using GenBackend = std::variant<FallbackBackend, RemoteBackend>;

inline GenBackend fallback_backend() { return FallbackBackend{}; }

// Returns non-empty text. The fallback is a pure function of the request:
// it dispatches on the first line's structured header (SUMMARIZE_USER,
// SUMMARIZE_ITEM, REPHRASE_TURN) and echoes unknown prompts back verbatim.
// Remote errors carry the endpoint; the fallback never errors.
std::string generate(const GenBackend& backend, const GenRequest& req);

// One-to-three-sentence user profile built from the history's most frequent
// genres/tags and a couple of recent titles. Never mentions item ids.
std::string summarize_user(const std::vector<Item>& history, const GenBackend& backend,
                           uint64_t seed);

// Fluent single-sentence item description covering exactly the chosen fields,
// never the title. chosen_fields must be a non-empty subset of item.fields.
std::string summarize_item(const Item& item, const std::vector<std::string>& chosen_fields,
                           const GenBackend& backend, uint64_t seed);

// Dialogue helper: fallback returns the drafted turn unchanged, remote may
// rephrase it. Used by conversation synthesis.
std::string rephrase_turn(const std::string& draft, const GenBackend& backend, uint64_t seed);

// Exposed for tests: the prompt builders behind the two summarizers.
std::string build_user_prompt(const std::vector<Item>& history);
std::string build_item_prompt(const Item& item, const std::vector<std::string>& chosen_fields);

}  // namespace forge
