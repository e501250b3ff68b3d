#include "agent.hpp"

#include <algorithm>

namespace forge {

std::string context_to_query(const Conversation& conv) {
  std::vector<std::string> lines;
  lines.reserve(conv.turns.size());
  for (const auto& t : conv.turns) {
    lines.push_back((t.role == Role::user ? "user: " : "assistant: ") + t.text);
  }
  return join(lines, "\n");
}

std::string context_to_query_user_only(const Conversation& conv) {
  std::vector<std::string> lines;
  for (const auto& t : conv.turns) {
    if (t.role == Role::user) lines.push_back("user: " + t.text);
  }
  return join(lines, "\n");
}

EvalReport eval_conversations(const std::vector<Conversation>& convs, const Catalog& catalog,
                              const EncoderModel& model, size_t k, bool user_turns_only,
                              const std::string& label) {
  if (convs.empty()) fail(ErrorKind::invalid_argument, "eval_conversations: no conversations");
  ItemIndex index = build_index(catalog, model);

  std::vector<double> values(convs.size());
  uint64_t conv_hash = fnv1a("conversations");
  for (size_t i = 0; i < convs.size(); ++i) {
    const Conversation& conv = convs[i];
    catalog.at(conv.target);  // must resolve
    std::string context = user_turns_only ? context_to_query_user_only(conv)
                                          : context_to_query(conv);
    std::vector<float> q = embed(context, model, model.tokenizer.max_query_tokens);
    std::vector<ScoredItem> top = topk(index, q, k);
    std::vector<std::string> ranked;
    for (const auto& r : top) ranked.push_back(r.item_id);
    values[i] = hit_at_k(ranked, {conv.target}, k);
    conv_hash = fnv1a(conv.conv_id, conv_hash);
    conv_hash = fnv1a(context, conv_hash);
    conv_hash = fnv1a(conv.target, conv_hash);
  }

  EvalReport report;
  report.label = label.empty() ? "model" : label;
  report.domain = catalog.name;
  report.k = k;
  report.dataset_hash = hash_hex(conv_hash);
  report.model_fingerprint = index.model_fingerprint;
  TaskResult r;
  r.metric = "hit@" + std::to_string(k);
  double sum = 0.0;
  for (double v : values) sum += v;
  r.value = sum / static_cast<double>(values.size());
  r.samples = values.size();
  report.tasks["chat"] = r;
  return report;
}

// --- synthesis ---------------------------------------------------------------------

namespace {

const char* kOpeners[] = {
    "Hey, I am looking for a recommendation for a new game. I've played {T} in the past.",
    "Hi! Can you recommend a new game? My recent plays were {T}.",
    "Hello, I need a fresh game. I've spent time on {T} lately.",
};

const char* kAskFeatures[] = {
    "Sure! What type of game or features are you looking for in your next game?",
    "Happy to help. Any particular features or genre in mind?",
    "Of course. What should the next game offer?",
};

const char* kGiveFeatures[] = {
    "I'm looking for something with {F}.",
    "Ideally something featuring {F}.",
    "I want {F} this time.",
};

const char* kAskMore[] = {
    "Great, do you prefer a singleplayer or multiplayer experience, or perhaps both?",
    "Got it. Anything else that matters, like price or release year?",
    "Understood. Any other requirements?",
};

const char* kGiveMore[] = {
    "I'd like {F}.",
    "Also, {F} would be great.",
    "Preferably {F}.",
};

std::string fill_slot(std::string tpl, std::string_view slot, const std::string& value) {
  std::string key = "{" + std::string(slot) + "}";
  size_t pos;
  while ((pos = tpl.find(key)) != std::string::npos) tpl.replace(pos, key.size(), value);
  return tpl;
}

template <size_t N>
const char* pick_line(const char* (&pool)[N], Rng& rng) {
  return pool[rng.index(N)];
}

int year_of_days(int64_t days) {
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  return y;
}

}  // namespace

std::vector<Conversation> synth_conversations(const Catalog& catalog,
                                              const InteractionLog& interactions, size_t n,
                                              uint64_t seed, const GenBackend& backend) {
  if (n < 1) fail(ErrorKind::invalid_argument, "synth_conversations: n must be >= 1");

  std::vector<const Item*> usable;
  for (const auto& item : catalog.items) {
    if (item.categories("tags") && item.categories("genre")) usable.push_back(&item);
  }
  if (usable.empty()) {
    fail(ErrorKind::insufficient_data, "synth_conversations: no items with genre and tags");
  }

  std::vector<Conversation> out;
  out.reserve(n);
  for (size_t c = 0; c < n; ++c) {
    Rng rng(mix_seed(seed, 0xC047ull, c));

    // Pick a user, then a target aligned with their dominant genre so the
    // recommendation fits both the mentioned history and the asked features.
    const UserHistory* user = nullptr;
    const Item* target = nullptr;
    if (!interactions.users.empty()) {
      user = &interactions.users[rng.index(interactions.users.size())];
      std::map<std::string, size_t> genre_freq;
      std::set<std::string> played;
      for (const auto& e : user->events) {
        played.insert(e.item_id);
        if (const auto* g = catalog.at(e.item_id).categories("genre")) {
          for (const auto& v : g->values) ++genre_freq[v];
        }
      }
      std::string top_genre;
      size_t best = 0;
      for (const auto& [g, count] : genre_freq) {
        if (count > best) {
          best = count;
          top_genre = g;
        }
      }
      std::vector<const Item*> candidates;
      for (const Item* item : usable) {
        if (played.contains(item->id)) continue;
        const auto* g = item->categories("genre");
        if (std::find(g->values.begin(), g->values.end(), top_genre) != g->values.end()) {
          candidates.push_back(item);
        }
      }
      if (!candidates.empty()) target = candidates[rng.index(candidates.size())];
    }
    if (!target) target = usable[rng.index(usable.size())];

    std::vector<std::string> titles;
    if (user) {
      for (const auto& e : user->events) {
        if (e.item_id == target->id) continue;
        titles.push_back(catalog.at(e.item_id).title);
        if (titles.size() == 4) break;
      }
    }
    while (titles.size() < 3) {
      const Item& filler = catalog.items[rng.index(catalog.items.size())];
      if (filler.id == target->id) continue;
      if (std::find(titles.begin(), titles.end(), filler.title) == titles.end()) {
        titles.push_back(filler.title);
      }
    }

    const CategoriesValue* tags = target->categories("tags");
    const CategoriesValue* genre = target->categories("genre");
    std::vector<ConditionPtr> preds;
    std::vector<std::string> features;

    std::vector<std::string> tag_pool = tags->values;
    rng.shuffle(tag_pool);
    size_t n_tags = std::min<size_t>(tag_pool.size(), rng.chance(0.5) ? 2 : 1);
    for (size_t i = 0; i < n_tags; ++i) {
      features.push_back(tag_pool[i]);
      preds.push_back(has_category("tags", tag_pool[i]));
    }
    if (rng.chance(0.7)) {
      const std::string& g = genre->values[rng.index(genre->values.size())];
      features.push_back(g + " gameplay");
      preds.push_back(has_category("genre", g));
    }
    if (features.empty()) {
      features.push_back(tag_pool[0]);
      preds.push_back(has_category("tags", tag_pool[0]));
    }

    Conversation conv;
    conv.conv_id = "conv-" + std::to_string(c);
    conv.target = target->id;

    auto add_turn = [&](Role role, std::string text) {
      conv.turns.push_back({role, rephrase_turn(text, backend, rng.next_u64())});
    };

    add_turn(Role::user, fill_slot(pick_line(kOpeners, rng), "T", join_natural(titles)));
    add_turn(Role::assistant, pick_line(kAskFeatures, rng));
    add_turn(Role::user, fill_slot(pick_line(kGiveFeatures, rng), "F", join_natural(features)));

    // Optional third user turn with a price or release-date request.
    if (rng.chance(0.6)) {
      std::string extra;
      if (rng.chance(0.5)) {
        if (const FieldValue* v = target->find_field("release date")) {
          if (const auto* d = std::get_if<DateValue>(v)) {
            int after = year_of_days(d->days) - static_cast<int>(rng.uniform(1, 3));
            extra = "something released after " + std::to_string(after);
            preds.push_back(date_cmp("release date", CmpOp::ge, days_from_civil(after + 1, 1, 1)));
          }
        }
      }
      if (extra.empty()) {
        if (const FieldValue* v = target->find_field("price")) {
          if (const auto* p = std::get_if<NumberValue>(v)) {
            double ceiling = 10.0;
            while (ceiling <= p->value) ceiling += 10.0;
            extra = "a price under " + format_number(ceiling) + " dollars";
            preds.push_back(num_cmp("price", CmpOp::lt, ceiling));
          }
        }
      }
      if (!extra.empty()) {
        add_turn(Role::assistant, pick_line(kAskMore, rng));
        add_turn(Role::user, fill_slot(pick_line(kGiveMore, rng), "F", extra));
      }
    }

    conv.condition = all_of(std::move(preds));
    out.push_back(std::move(conv));
  }
  return out;
}

// --- files ---------------------------------------------------------------------------

std::vector<Conversation> load_conversations(const std::string& path, const Catalog& catalog) {
  JsonlFile file = read_jsonl(path);
  std::vector<Conversation> out;
  size_t lineno = file.meta ? 1 : 0;
  for (const auto& rec : file.records) {
    ++lineno;
    std::string where = path + ":" + std::to_string(lineno);
    if (!rec.contains("conv_id") || !rec.contains("turns") || !rec.contains("target")) {
      fail(ErrorKind::parse, where + ": conversation needs {conv_id, turns, target}");
    }
    Conversation conv;
    conv.conv_id = rec["conv_id"].get<std::string>();
    conv.target = rec["target"].get<std::string>();
    bool has_user_turn = false;
    for (const auto& t : rec["turns"]) {
      std::string role = t["role"].get<std::string>();
      if (role != "user" && role != "assistant") {
        fail(ErrorKind::parse, where + ": bad role '" + role + "'");
      }
      Turn turn;
      turn.role = role == "user" ? Role::user : Role::assistant;
      turn.text = t["text"].get<std::string>();
      has_user_turn |= turn.role == Role::user;
      conv.turns.push_back(std::move(turn));
    }
    if (!has_user_turn) fail(ErrorKind::validation, where + ": conversation has no user turn");
    catalog.at(conv.target);
    if (rec.contains("condition") && !rec["condition"].is_null()) {
      conv.condition = condition_from_json(rec["condition"]);
    }
    out.push_back(std::move(conv));
  }
  return out;
}

void save_conversations(const std::vector<Conversation>& convs, const std::string& path,
                        uint64_t seed) {
  std::vector<Json> records;
  records.reserve(convs.size());
  for (const auto& conv : convs) {
    Json j;
    j["conv_id"] = conv.conv_id;
    Json turns = Json::array();
    for (const auto& t : conv.turns) {
      Json turn;
      turn["role"] = t.role == Role::user ? "user" : "assistant";
      turn["text"] = t.text;
      turns.push_back(std::move(turn));
    }
    j["turns"] = std::move(turns);
    j["target"] = conv.target;
    j["condition"] = conv.condition ? condition_to_json(*conv.condition) : Json(nullptr);
    records.push_back(std::move(j));
  }
  write_jsonl(path, make_meta(seed, Json()), records);
}

}  // namespace forge
