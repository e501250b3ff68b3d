#include "catalog.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace forge {

const FieldValue* Item::find_field(std::string_view name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f.value;
  }
  return nullptr;
}

const CategoriesValue* Item::categories(std::string_view name) const {
  const FieldValue* v = find_field(name);
  if (!v) return nullptr;
  return std::get_if<CategoriesValue>(v);
}

const Item* Catalog::find(std::string_view id) const {
  for (const auto& item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

const Item& Catalog::at(std::string_view id) const {
  const Item* p = find(id);
  if (!p) fail(ErrorKind::validation, "unknown item id: '" + std::string(id) + "'");
  return *p;
}

size_t Catalog::index_of(std::string_view id) const {
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return i;
  }
  fail(ErrorKind::validation, "unknown item id: '" + std::string(id) + "'");
}

size_t InteractionLog::event_count() const {
  size_t n = 0;
  for (const auto& u : users) n += u.events.size();
  return n;
}

// --- JSON forms --------------------------------------------------------------

Json item_to_json(const Item& item) {
  Json j;
  j["id"] = item.id;
  j["title"] = item.title;
  j["description"] = item.description;
  Json fields = Json::object();
  for (const auto& f : item.fields) {
    Json fv;
    if (const auto* t = std::get_if<TextValue>(&f.value)) {
      fv["type"] = "text";
      fv["value"] = t->value;
    } else if (const auto* n = std::get_if<NumberValue>(&f.value)) {
      fv["type"] = "number";
      fv["value"] = n->value;
      if (!n->unit.empty()) fv["unit"] = n->unit;
    } else if (const auto* d = std::get_if<DateValue>(&f.value)) {
      fv["type"] = "date";
      fv["value"] = format_iso_date(d->days);
    } else {
      const auto& c = std::get<CategoriesValue>(f.value);
      fv["type"] = "categories";
      fv["value"] = c.values;
    }
    fields[f.name] = std::move(fv);
  }
  j["fields"] = std::move(fields);
  return j;
}

static FieldValue field_value_from_json(const Json& fv, const std::string& where) {
  if (!fv.is_object() || !fv.contains("type") || !fv.contains("value")) {
    fail(ErrorKind::parse, where + ": field entry needs {type, value}");
  }
  std::string type = fv["type"].get<std::string>();
  const Json& val = fv["value"];
  if (type == "text") {
    if (!val.is_string()) fail(ErrorKind::parse, where + ": text value must be a string");
    return TextValue{val.get<std::string>()};
  }
  if (type == "number") {
    if (!val.is_number()) fail(ErrorKind::parse, where + ": number value must be numeric");
    NumberValue n;
    n.value = val.get<double>();
    if (!std::isfinite(n.value)) fail(ErrorKind::validation, where + ": number must be finite");
    if (fv.contains("unit")) n.unit = fv["unit"].get<std::string>();
    return n;
  }
  if (type == "date") {
    if (!val.is_string()) fail(ErrorKind::parse, where + ": date value must be \"YYYY-MM-DD\"");
    return DateValue{parse_iso_date(val.get<std::string>())};
  }
  if (type == "categories") {
    if (!val.is_array()) fail(ErrorKind::parse, where + ": categories value must be an array");
    CategoriesValue c;
    std::set<std::string> seen;
    for (const auto& e : val) {
      if (!e.is_string()) fail(ErrorKind::parse, where + ": category entries must be strings");
      std::string s = to_lower(e.get<std::string>());
      if (seen.insert(s).second) c.values.push_back(std::move(s));
    }
    if (c.values.empty()) fail(ErrorKind::validation, where + ": categories must be non-empty");
    return c;
  }
  fail(ErrorKind::parse, where + ": unknown field type tag '" + type + "'");
}

Item item_from_json(const Json& j, size_t lineno) {
  std::string where = "line " + std::to_string(lineno);
  if (!j.is_object()) fail(ErrorKind::parse, where + ": item record must be an object");
  for (const char* key : {"id", "title", "description"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      fail(ErrorKind::parse, where + ": missing string key '" + key + "'");
    }
  }
  Item item;
  item.id = j["id"].get<std::string>();
  item.title = j["title"].get<std::string>();
  item.description = j["description"].get<std::string>();
  if (item.id.empty()) fail(ErrorKind::validation, where + ": empty id");
  if (item.title.empty()) fail(ErrorKind::validation, where + ": empty title for '" + item.id + "'");
  if (j.contains("fields")) {
    if (!j["fields"].is_object()) fail(ErrorKind::parse, where + ": fields must be an object");
    std::set<std::string> seen;
    for (const auto& [name, fv] : j["fields"].items()) {
      std::string lname = to_lower(name);
      if (!seen.insert(lname).second) {
        fail(ErrorKind::validation, where + ": duplicate field '" + lname + "'");
      }
      item.fields.push_back({lname, field_value_from_json(fv, where + ", field '" + lname + "'")});
    }
  }
  return item;
}

Json user_to_json(const UserHistory& u) {
  Json j;
  j["user_id"] = u.user_id;
  Json events = Json::array();
  for (const auto& e : u.events) {
    events.push_back(Json::array({e.item_id, e.timestamp}));
  }
  j["events"] = std::move(events);
  return j;
}

static UserHistory user_from_json(const Json& j, size_t lineno) {
  std::string where = "line " + std::to_string(lineno);
  if (!j.is_object() || !j.contains("user_id") || !j.contains("events")) {
    fail(ErrorKind::parse, where + ": user record needs {user_id, events}");
  }
  UserHistory u;
  u.user_id = j["user_id"].get<std::string>();
  if (u.user_id.empty()) fail(ErrorKind::validation, where + ": empty user_id");
  if (!j["events"].is_array()) fail(ErrorKind::parse, where + ": events must be an array");
  for (const auto& e : j["events"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer()) {
      fail(ErrorKind::parse, where + ": each event must be [item_id, integer ts]");
    }
    u.events.push_back({e[0].get<std::string>(), e[1].get<int64_t>()});
  }
  u.short_history = u.events.size() < 2;
  return u;
}

// --- validation --------------------------------------------------------------

void validate_catalog(const Catalog& cat) {
  if (cat.items.empty()) fail(ErrorKind::validation, "empty catalog");
  std::unordered_set<std::string> ids;
  ids.reserve(cat.items.size());
  for (const auto& item : cat.items) {
    if (item.id.empty()) fail(ErrorKind::validation, "empty item id");
    if (!ids.insert(item.id).second) {
      fail(ErrorKind::validation, "duplicate item id '" + item.id + "'");
    }
    if (item.title.empty()) fail(ErrorKind::validation, "empty title for '" + item.id + "'");
    std::set<std::string> names;
    for (const auto& f : item.fields) {
      if (f.name != to_lower(f.name)) {
        fail(ErrorKind::validation, "field name not lowercase: '" + f.name + "'");
      }
      if (!names.insert(f.name).second) {
        fail(ErrorKind::validation, "duplicate field '" + f.name + "' on '" + item.id + "'");
      }
      if (const auto* n = std::get_if<NumberValue>(&f.value)) {
        if (!std::isfinite(n->value)) {
          fail(ErrorKind::validation, "non-finite number field '" + f.name + "' on '" + item.id + "'");
        }
      } else if (const auto* c = std::get_if<CategoriesValue>(&f.value)) {
        if (c->values.empty()) {
          fail(ErrorKind::validation, "empty categories field '" + f.name + "' on '" + item.id + "'");
        }
      }
    }
  }
}

void validate_interactions(const InteractionLog& log, const Catalog& cat) {
  std::unordered_set<std::string> ids;
  for (const auto& item : cat.items) ids.insert(item.id);
  std::unordered_set<std::string> users;
  for (const auto& u : log.users) {
    if (!users.insert(u.user_id).second) {
      fail(ErrorKind::validation, "duplicate user '" + u.user_id + "'");
    }
    int64_t prev = INT64_MIN;
    for (const auto& e : u.events) {
      if (!ids.contains(e.item_id)) {
        fail(ErrorKind::validation,
             "user '" + u.user_id + "' references unknown item '" + e.item_id + "'");
      }
      if (e.timestamp < prev) {
        fail(ErrorKind::validation, "timestamps decrease for user '" + u.user_id + "'");
      }
      prev = e.timestamp;
    }
  }
}

// --- files -------------------------------------------------------------------

Catalog load_catalog(const std::string& path) {
  JsonlFile file = read_jsonl(path);
  Catalog cat;
  if (file.meta && file.meta->contains("name")) {
    cat.name = (*file.meta)["name"].get<std::string>();
  } else {
    // fall back to the file stem as the domain label
    std::string base = path;
    if (auto pos = base.find_last_of('/'); pos != std::string::npos) base = base.substr(pos + 1);
    if (auto pos = base.find_last_of('.'); pos != std::string::npos) base = base.substr(0, pos);
    cat.name = base;
  }
  size_t lineno = file.meta ? 1 : 0;
  for (const auto& rec : file.records) {
    ++lineno;
    cat.items.push_back(item_from_json(rec, lineno));
  }
  validate_catalog(cat);
  return cat;
}

void save_catalog(const Catalog& cat, const std::string& path, uint64_t seed) {
  Json meta = make_meta(seed, Json());
  meta["name"] = cat.name;
  std::vector<Json> records;
  records.reserve(cat.items.size());
  for (const auto& item : cat.items) records.push_back(item_to_json(item));
  write_jsonl(path, meta, records);
}

InteractionLog load_interactions(const std::string& path, const Catalog& cat) {
  JsonlFile file = read_jsonl(path);
  InteractionLog log;
  size_t lineno = file.meta ? 1 : 0;
  for (const auto& rec : file.records) {
    ++lineno;
    log.users.push_back(user_from_json(rec, lineno));
  }
  validate_interactions(log, cat);
  return log;
}

void save_interactions(const InteractionLog& log, const std::string& path, uint64_t seed) {
  std::vector<Json> records;
  records.reserve(log.users.size());
  for (const auto& u : log.users) records.push_back(user_to_json(u));
  write_jsonl(path, make_meta(seed, Json()), records);
}

std::string catalog_hash(const Catalog& cat) {
  uint64_t h = fnv1a(cat.name);
  for (const auto& item : cat.items) h = fnv1a(item_to_json(item).dump(), h);
  return hash_hex(h);
}

std::string interactions_hash(const InteractionLog& log) {
  uint64_t h = fnv1a("interactions");
  for (const auto& u : log.users) h = fnv1a(user_to_json(u).dump(), h);
  return hash_hex(h);
}

// --- synthesis ---------------------------------------------------------------

namespace {

struct GenreBank {
  const char* name;
  std::vector<const char*> nouns;
  std::vector<const char*> tags;  // genre-affine tag subset
};

const std::vector<GenreBank>& genre_banks() {
  static const std::vector<GenreBank> banks = {
      {"strategy",
       {"empires", "legions", "dynasty", "command", "dominion", "tactics", "banners", "conquest",
        "stronghold", "warfront"},
       {"turn based", "real time", "base building", "tactical", "historical"}},
      {"shooter",
       {"strike", "bullet", "warzone", "siege", "recoil", "crossfire", "outpost", "vanguard",
        "barrage", "gunner"},
       {"first person", "online pvp", "competitive", "3d", "fast paced"}},
      {"rpg",
       {"quest", "legacy", "realms", "chronicle", "dungeon", "prophecy", "grimoire", "saga",
        "covenant", "relic"},
       {"story rich", "open world", "character customization", "fantasy", "loot"}},
      {"puzzle",
       {"blocks", "cipher", "labyrinth", "mosaic", "enigma", "circuits", "riddle", "gears",
        "prism", "tangle"},
       {"casual", "relaxing", "logic", "minimalist", "2d"}},
      {"racing",
       {"drift", "velocity", "circuit", "turbo", "asphalt", "rally", "nitro", "apex",
        "overdrive", "gridlock"},
       {"driving", "arcade", "time trial", "online pvp", "fast paced"}},
      {"sports",
       {"league", "champions", "arena", "kickoff", "slam", "matchday", "overtime", "penalty",
        "playoffs", "dugout"},
       {"local co-op", "competitive", "team based", "family friendly", "3d"}},
      {"adventure",
       {"voyage", "expedition", "island", "horizon", "trail", "odyssey", "compass", "jungle",
        "caverns", "lighthouse"},
       {"exploration", "story rich", "atmospheric", "point and click", "narrative"}},
      {"simulation",
       {"farm", "tycoon", "workshop", "harbor", "airfield", "bakery", "railways", "colony",
        "orchard", "depot"},
       {"management", "sandbox", "crafting", "relaxing", "building"}},
      {"platformer",
       {"jump", "springs", "rooftops", "canyon", "vines", "clockwork", "chimney", "meadow",
        "tumble", "skyline"},
       {"pixel art", "2d", "precision", "retro", "made for kids"}},
      {"horror",
       {"asylum", "shadows", "basement", "seance", "lantern", "crypt", "whispers", "mansion",
        "ritual", "hollow"},
       {"survival", "atmospheric", "dark", "not made for kids", "first person"}},
  };
  return banks;
}

const std::vector<const char*>& adjective_pool() {
  static const std::vector<const char*> pool = {
      "ancient", "broken",  "crimson",  "distant", "eternal", "fallen",  "forgotten", "frozen",
      "golden",  "hidden",  "hollow",   "iron",    "last",    "lost",    "lunar",     "mighty",
      "neon",    "noble",   "obsidian", "pale",    "phantom", "rising",  "rogue",     "royal",
      "rusty",   "savage",  "scarlet",  "secret",  "shattered", "silent", "silver",   "solar",
      "stellar", "stormy",  "sunken",   "twisted", "untamed", "wild",    "wicked",    "velvet"};
  return pool;
}

const std::vector<const char*>& global_tag_pool() {
  static const std::vector<const char*> pool = {
      "multiplayer",   "singleplayer", "co-op",        "local co-op",  "online pvp",
      "open world",    "story rich",   "pixel art",    "3d",           "2d",
      "roguelike",     "sandbox",      "survival",     "crafting",     "made for kids",
      "family friendly", "competitive", "casual",      "retro",        "high quality soundtrack",
      "controller support", "early access"};
  return pool;
}

const std::vector<const char*>& publisher_pool() {
  static const std::vector<const char*> pool = {
      "prison games",        "red canyon studio", "bluebird interactive", "night owl games",
      "pixel forge",         "iron anvil studio", "solar flare entertainment",
      "quiet lake software", "thunderhead labs",  "paper lantern games",
      "grey wolf interactive", "cosmic turtle"};
  return pool;
}

std::string title_case(std::string_view s) {
  std::string out(s);
  bool start = true;
  for (char& c : out) {
    if (start && std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    start = (c == ' ' || c == '-');
  }
  return out;
}

// Cheap-heavy price ladder, weights mirroring typical store distributions.
struct PriceStep {
  double price;
  int weight;
};
const PriceStep kPriceLadder[] = {{2.99, 1}, {4.99, 2},  {7.49, 2},  {9.99, 3},
                                  {14.99, 3}, {19.99, 2}, {24.99, 2}, {29.99, 1},
                                  {39.99, 1}, {49.99, 1}, {59.99, 1}, {69.99, 1}};

double pick_price(Rng& rng) {
  int total = 0;
  for (const auto& s : kPriceLadder) total += s.weight;
  int roll = static_cast<int>(rng.uniform(0, total - 1));
  for (const auto& s : kPriceLadder) {
    roll -= s.weight;
    if (roll < 0) return s.price;
  }
  return kPriceLadder[0].price;
}

std::string bank_tag_pick(const GenreBank& bank, Rng& rng) {
  return bank.tags[rng.index(bank.tags.size())];
}

}  // namespace

SynthResult synth_catalog(uint64_t seed, size_t n_items, size_t n_users) {
  if (n_items < 10) fail(ErrorKind::invalid_argument, "synth: n_items must be >= 10");
  if (n_users < 1) fail(ErrorKind::invalid_argument, "synth: n_users must be >= 1");

  Rng rng(mix_seed(seed, 0xCA7A106ull));
  const auto& banks = genre_banks();
  const auto& adjectives = adjective_pool();
  const auto& tags_global = global_tag_pool();

  SynthResult out;
  out.catalog.name = "synth-" + std::to_string(seed);

  std::set<std::string> used_titles;
  const int64_t date_lo = days_from_civil(2015, 1, 1);
  const int64_t date_hi = days_from_civil(2023, 12, 31);

  for (size_t i = 0; i < n_items; ++i) {
    const GenreBank& bank = banks[rng.index(banks.size())];

    std::string title;
    for (int attempt = 0;; ++attempt) {
      std::string base = std::string(rng.pick(adjectives)) + " " + rng.pick(bank.nouns);
      if (attempt > 2 || rng.chance(0.2)) {
        int num = static_cast<int>(rng.uniform(2, 9));
        base += " " + std::to_string(num);
      }
      title = title_case(base);
      if (used_titles.insert(to_lower(title)).second) break;
      if (attempt > 64) fail(ErrorKind::internal, "synth: title space exhausted");
    }

    CategoriesValue genre;
    genre.values.push_back(bank.name);
    if (rng.chance(0.25)) {
      const GenreBank& other = banks[rng.index(banks.size())];
      if (other.name != bank.name) genre.values.push_back(other.name);
    }

    CategoriesValue tags;
    {
      std::set<std::string> chosen;
      size_t n_affine = static_cast<size_t>(rng.uniform(2, 3));
      for (size_t t = 0; t < n_affine; ++t) chosen.insert(rng.pick(bank.tags));
      size_t n_global = static_cast<size_t>(rng.uniform(1, 3));
      for (size_t t = 0; t < n_global; ++t) chosen.insert(rng.pick(tags_global));
      tags.values.assign(chosen.begin(), chosen.end());
    }

    double price = pick_price(rng);
    int64_t release = rng.uniform(date_lo, date_hi);
    std::string publisher = rng.pick(publisher_pool());

    std::string description = "A " + tags.values[0] + " " + std::string(bank.name) + " game.";
    if (tags.values.size() > 1) {
      description += " Features " + join_natural({tags.values.begin() + 1, tags.values.end()}) + ".";
    }

    Item item;
    item.id = "g" + std::to_string(i + 1);
    item.title = title;
    item.description = description;
    item.fields = {
        {"genre", genre},
        {"tags", tags},
        {"price", NumberValue{price, "USD"}},
        {"release date", DateValue{release}},
        {"publisher", TextValue{publisher}},
    };
    out.catalog.items.push_back(std::move(item));
  }

  // Genre and (genre, affine tag) item pools for preference-biased histories.
  std::vector<std::vector<size_t>> by_genre(banks.size());
  std::map<std::pair<size_t, std::string>, std::vector<size_t>> by_cluster;
  for (size_t i = 0; i < out.catalog.items.size(); ++i) {
    const auto* g = out.catalog.items[i].categories("genre");
    const auto* t = out.catalog.items[i].categories("tags");
    for (size_t b = 0; b < banks.size(); ++b) {
      if (std::find(g->values.begin(), g->values.end(), banks[b].name) == g->values.end()) continue;
      by_genre[b].push_back(i);
      for (const char* tag : banks[b].tags) {
        if (std::find(t->values.begin(), t->values.end(), tag) != t->values.end()) {
          by_cluster[{b, tag}].push_back(i);
        }
      }
    }
  }

  for (size_t u = 0; u < n_users; ++u) {
    UserHistory user;
    user.user_id = "u" + std::to_string(u + 1);

    // Users orbit 1-2 tight (genre, tag) clusters so histories carry
    // learnable co-occurrence structure.
    std::vector<std::pair<size_t, std::string>> clusters;
    for (int c = 0; c < 1 + (rng.chance(0.35) ? 1 : 0); ++c) {
      size_t b = rng.index(banks.size());
      clusters.push_back({b, bank_tag_pick(banks[b], rng)});
    }

    size_t length = static_cast<size_t>(rng.uniform(5, 30));
    int64_t ts = 1000 + static_cast<int64_t>(u) * 997;
    std::set<size_t> seen;
    size_t guard = 0;
    while (user.events.size() < length && guard++ < length * 20) {
      size_t idx;
      const auto& cluster = clusters[rng.index(clusters.size())];
      auto pool_it = by_cluster.find(cluster);
      double roll = rng.real();
      if (roll < 0.85 && pool_it != by_cluster.end() && !pool_it->second.empty()) {
        idx = pool_it->second[rng.index(pool_it->second.size())];
      } else if (roll < 0.95 && !by_genre[cluster.first].empty()) {
        idx = by_genre[cluster.first][rng.index(by_genre[cluster.first].size())];
      } else {
        idx = rng.index(out.catalog.items.size());
      }
      if (!seen.insert(idx).second) continue;  // one event per item per user
      ts += rng.uniform(1, 30);
      user.events.push_back({out.catalog.items[idx].id, ts});
    }
    user.short_history = user.events.size() < 2;
    out.interactions.users.push_back(std::move(user));
  }

  validate_catalog(out.catalog);
  validate_interactions(out.interactions, out.catalog);
  return out;
}

}  // namespace forge
