#pragma once

// Scripted recommender-agent conversations: replay, retrieval scoring from
// raw transcript text, and deterministic synthesis of a conversation suite.

#include "retrieval.hpp"

namespace forge {

enum class Role { user, assistant };

struct Turn {
  Role role = Role::user;
  std::string text;
};

struct Conversation {
  std::string conv_id;
  std::vector<Turn> turns;  // at least one user turn
  std::string target;       // item id, must resolve in the catalog
  ConditionPtr condition;   // optional; target satisfies it when present
};

// Whole transcript in order, each turn prefixed "user: " or "assistant: ",
// newline-joined. No summarization.
std::string context_to_query(const Conversation& conv);

// Same, restricted to user turns (ablation mode).
std::string context_to_query_user_only(const Conversation& conv);

// Hit@k averaged over conversations; one retrieval per conversation using
// the accumulated context.
EvalReport eval_conversations(const std::vector<Conversation>& convs, const Catalog& catalog,
                              const EncoderModel& model, size_t k = 5,
                              bool user_turns_only = false, const std::string& label = "");

// Template dialogues embedding each target's true attributes over 2-3 user
// turns with distractor assistant turns. Deterministic under the fallback
// backend; a remote backend may rephrase turns.
std::vector<Conversation> synth_conversations(const Catalog& catalog,
                                              const InteractionLog& interactions, size_t n,
                                              uint64_t seed, const GenBackend& backend);

std::vector<Conversation> load_conversations(const std::string& path, const Catalog& catalog);
void save_conversations(const std::vector<Conversation>& convs, const std::string& path,
                        uint64_t seed = 0);

}  // namespace forge
