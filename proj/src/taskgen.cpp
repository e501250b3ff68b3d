#include "taskgen.hpp"

#include <algorithm>
#include <cmath>

namespace forge {

// --- mix -----------------------------------------------------------------------

MixConfig MixConfig::defaults(size_t train_total) {
  MixConfig mix;
  mix.train_total = train_total;
  mix.fractions[0] = 1.0 / 3.0;  // UH2I
  mix.fractions[1] = 1.0 / 6.0;  // I2I
  for (size_t i = 2; i < kTaskCount; ++i) mix.fractions[i] = 1.0 / 16.0;
  return mix;
}

void MixConfig::validate() const {
  double sum = 0.0;
  for (double f : fractions) {
    if (f < 0.0 || !std::isfinite(f)) fail(ErrorKind::invalid_argument, "mix: bad fraction");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorKind::invalid_argument, "mix: fractions sum to " + std::to_string(sum) + ", not 1");
  }
  if (train_total == 0) fail(ErrorKind::invalid_argument, "mix: train_total must be positive");
}

size_t MixConfig::effective_test_total() const {
  return test_total ? test_total : train_total / 3;
}

std::array<size_t, kTaskCount> MixConfig::counts(size_t total) const {
  std::array<size_t, kTaskCount> base{};
  std::array<double, kTaskCount> remainder{};
  size_t assigned = 0;
  for (size_t i = 0; i < kTaskCount; ++i) {
    double target = fractions[i] * static_cast<double>(total);
    base[i] = static_cast<size_t>(std::floor(target + 1e-9));
    remainder[i] = target - static_cast<double>(base[i]);
    assigned += base[i];
  }
  size_t leftover = total > assigned ? total - assigned : 0;
  std::array<size_t, kTaskCount> order{};
  for (size_t i = 0; i < kTaskCount; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return remainder[a] > remainder[b]; });
  for (size_t i = 0; i < leftover && i < kTaskCount; ++i) ++base[order[i]];
  return base;
}

// --- misspell --------------------------------------------------------------------

std::string misspell(const std::string& name, uint64_t seed, const Catalog& catalog) {
  std::set<std::string> titles;
  for (const auto& item : catalog.items) titles.insert(to_lower(item.title));
  return misspell(name, seed, titles);
}

std::string misspell(const std::string& name, uint64_t seed,
                     const std::set<std::string>& lowercase_titles) {
  if (name.size() < 2) fail(ErrorKind::invalid_argument, "misspell: name too short");
  for (int attempt = 0; attempt < 16; ++attempt) {
    Rng rng(mix_seed(seed, 0x315Bull, static_cast<uint64_t>(attempt)));
    int edits = (name.size() >= 5 && rng.chance(0.5)) ? 2 : 1;
    std::string s = name;
    for (int e = 0; e < edits; ++e) {
      int op = static_cast<int>(rng.uniform(0, 2));
      if (op == 1 && s.size() < 2) op = 2;  // keep at least one character
      if (op == 0) {  // insert
        size_t pos = static_cast<size_t>(rng.uniform(0, static_cast<int64_t>(s.size())));
        char c = static_cast<char>('a' + rng.uniform(0, 25));
        s.insert(s.begin() + static_cast<ptrdiff_t>(pos), c);
      } else if (op == 1) {  // delete
        size_t pos = rng.index(s.size());
        s.erase(s.begin() + static_cast<ptrdiff_t>(pos));
      } else {  // replace
        size_t pos = rng.index(s.size());
        char c;
        do {
          c = static_cast<char>('a' + rng.uniform(0, 25));
        } while (c == s[pos]);
        s[pos] = c;
      }
    }
    size_t dist = levenshtein(s, name);
    if (s == name || dist < 1 || dist > 2) continue;
    if (dist == 2 && name.size() < 5) continue;
    if (lowercase_titles.contains(to_lower(s))) continue;
    return s;
  }
  fail(ErrorKind::insufficient_data,
       "misspell: 16 attempts collided with catalog titles for '" + name + "'");
}

// --- attribute sampling ------------------------------------------------------------

namespace {

bool eligible_field(const Field& f) {
  return f.name != "title" && f.name != "description";
}

AttributeDraw draw_field(const Field& f, Rng& rng) {
  AttributeDraw draw;
  draw.field = f.name;
  if (const auto* c = std::get_if<CategoriesValue>(&f.value)) {
    size_t n_draws = c->values.size() == 1 ? 1 : static_cast<size_t>(rng.uniform(1, 3));
    std::vector<std::string> picked;
    for (size_t i = 0; i < n_draws; ++i) picked.push_back(rng.pick(c->values));
    draw.rendered = join(picked, ", ");
    std::set<std::string> distinct(picked.begin(), picked.end());
    for (const auto& v : distinct) draw.predicates.push_back(has_category(f.name, v));
  } else if (const auto* n = std::get_if<NumberValue>(&f.value)) {
    draw.rendered = format_number(n->value);
    draw.predicates.push_back(num_cmp(f.name, CmpOp::eq, n->value));
  } else if (const auto* d = std::get_if<DateValue>(&f.value)) {
    draw.rendered = format_long_date(d->days);
    draw.predicates.push_back(date_cmp(f.name, CmpOp::eq, d->days));
  } else {
    const auto& t = std::get<TextValue>(f.value);
    draw.rendered = to_lower(t.value);
    draw.predicates.push_back(text_equals(f.name, t.value));
  }
  return draw;
}

}  // namespace

std::vector<AttributeDraw> sample_attributes(const Item& item, AttrMode mode, uint64_t seed) {
  std::vector<const Field*> eligible;
  for (const auto& f : item.fields) {
    if (eligible_field(f)) eligible.push_back(&f);
  }
  if (eligible.empty()) {
    fail(ErrorKind::insufficient_data,
         "sample_attributes: item '" + item.id + "' has no eligible fields");
  }
  Rng rng(mix_seed(seed, 0xA77Bull));
  std::vector<const Field*> chosen;
  if (mode == AttrMode::full) {
    chosen = eligible;
  } else {
    size_t k = static_cast<size_t>(rng.uniform(1, static_cast<int64_t>(std::min<size_t>(3, eligible.size()))));
    std::vector<const Field*> shuffled = eligible;
    rng.shuffle(shuffled);
    chosen.assign(shuffled.begin(), shuffled.begin() + static_cast<ptrdiff_t>(k));
  }
  rng.shuffle(chosen);
  std::vector<AttributeDraw> out;
  out.reserve(chosen.size());
  for (const Field* f : chosen) out.push_back(draw_field(*f, rng));
  return out;
}

std::string attrs_to_text(const std::vector<AttributeDraw>& draws) {
  std::vector<std::string> parts;
  parts.reserve(draws.size());
  for (const auto& d : draws) parts.push_back(d.field + " : " + d.rendered);
  return join(parts, ", ");
}

// --- generator -------------------------------------------------------------------

TaskGenerator::TaskGenerator(const Catalog& catalog, const InteractionLog& interactions,
                             const TemplatePool& templates, const GenBackend& backend,
                             uint64_t global_seed)
    : catalog_(&catalog),
      interactions_(&interactions),
      templates_(&templates),
      backend_(&backend),
      global_seed_(global_seed) {
  for (const auto& item : catalog.items) lowercase_titles_.insert(to_lower(item.title));

  for (const auto& u : interactions.users) {
    if (u.events.size() >= 5) train_users_.push_back(&u);
    if (u.events.size() >= 4) test_users_.push_back(&u);
  }

  // Co-occurrence counts over distinct per-user item sets.
  const size_t n = catalog.items.size();
  std::unordered_map<std::string_view, size_t> index_of;
  for (size_t i = 0; i < n; ++i) index_of[catalog.items[i].id] = i;
  std::vector<std::map<size_t, size_t>> cooc(n);
  for (const auto& u : interactions.users) {
    std::set<size_t> seen;
    for (const auto& e : u.events) seen.insert(index_of.at(e.item_id));
    for (auto a = seen.begin(); a != seen.end(); ++a) {
      for (auto b = std::next(a); b != seen.end(); ++b) {
        ++cooc[*a][*b];
        ++cooc[*b][*a];
      }
    }
  }

  i2i_positives_.resize(n);
  i2i_exclusions_.resize(n);
  std::vector<std::set<std::string>> category_sets(n);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& f : catalog.items[i].fields) {
      if (const auto* c = std::get_if<CategoriesValue>(&f.value)) {
        for (const auto& v : c->values) category_sets[i].insert(f.name + ":" + v);
      }
    }
  }

  for (size_t i = 0; i < n; ++i) {
    std::vector<std::pair<size_t, size_t>> ranked;  // (item index, count)
    for (const auto& [j, count] : cooc[i]) {
      if (count >= 2) ranked.emplace_back(j, count);
    }
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return catalog.items[a.first].id < catalog.items[b.first].id;
    });
    auto& pos = i2i_positives_[i];
    auto& excl = i2i_exclusions_[i];
    excl.push_back(catalog.items[i].id);
    for (const auto& [j, count] : ranked) {
      if (pos.size() < 10) pos.push_back(catalog.items[j].id);
      excl.push_back(catalog.items[j].id);
    }
    if (pos.empty()) {
      // No behavioral signal; fall back to attribute-Jaccard neighbors.
      std::vector<std::pair<double, size_t>> sims;
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        size_t inter = 0;
        for (const auto& key : category_sets[i]) inter += category_sets[j].contains(key);
        size_t uni = category_sets[i].size() + category_sets[j].size() - inter;
        if (uni == 0 || inter == 0) continue;
        sims.emplace_back(static_cast<double>(inter) / static_cast<double>(uni), j);
      }
      std::sort(sims.begin(), sims.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return catalog.items[a.second].id < catalog.items[b.second].id;
      });
      for (size_t r = 0; r < sims.size() && pos.size() < 5; ++r) {
        pos.push_back(catalog.items[sims[r].second].id);
        excl.push_back(catalog.items[sims[r].second].id);
      }
    }
  }

  // Per-field category value pool, ranked by how many items carry the value.
  std::map<std::string, std::map<std::string, size_t>> counts;
  for (const auto& item : catalog.items) {
    for (const auto& f : item.fields) {
      if (const auto* c = std::get_if<CategoriesValue>(&f.value)) {
        for (const auto& v : c->values) ++counts[f.name][v];
      }
      if (const auto* d = std::get_if<DateValue>(&f.value); d && f.name == "release date") {
        int y;
        unsigned m, dd;
        civil_from_days(d->days, y, m, dd);
        max_release_year_ = std::max(max_release_year_, y);
      }
    }
  }
  for (const auto& [field, values] : counts) {
    std::vector<std::pair<std::string, size_t>> ranked(values.begin(), values.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    category_pool_[field] = std::move(ranked);
  }
}

uint64_t TaskGenerator::sample_seed(Task task, size_t sample_index) const {
  return mix_seed(global_seed_, static_cast<uint64_t>(task), sample_index);
}

const Template& TaskGenerator::pick_template(Task task, Split split, Rng& rng) const {
  const auto& pool = templates_->select(task, split);
  if (pool.empty()) {
    fail(ErrorKind::validation, "no " + std::string(split_name(split)) + " templates for task " +
                                    std::string(task_name(task)));
  }
  return *pool[rng.index(pool.size())];
}

TaskGenerator::UserWindow TaskGenerator::draw_user_window(Split split, Rng& rng) const {
  const auto& pool = split == Split::train ? train_users_ : test_users_;
  if (pool.empty()) {
    fail(ErrorKind::insufficient_data, "no users with enough events for behavior tasks");
  }
  const UserHistory* user = pool[rng.index(pool.size())];
  const size_t len = user->events.size();
  UserWindow w;
  w.user = user;
  size_t h, pos_index;
  if (split == Split::train) {
    // The last event is held out of both history windows and positives.
    h = static_cast<size_t>(rng.uniform(3, static_cast<int64_t>(std::min<size_t>(10, len - 2))));
    pos_index = h;
    for (size_t i = 0; i < h; ++i) w.history.push_back(&catalog_->at(user->events[i].item_id));
  } else {
    h = static_cast<size_t>(rng.uniform(3, static_cast<int64_t>(std::min<size_t>(10, len - 1))));
    pos_index = len - 1;
    for (size_t i = len - 1 - h; i < len - 1; ++i) {
      w.history.push_back(&catalog_->at(user->events[i].item_id));
    }
  }
  w.positive = &catalog_->at(user->events[pos_index].item_id);
  return w;
}

std::vector<std::string> TaskGenerator::full_history_ids(const UserHistory& user) const {
  std::vector<std::string> ids;
  ids.reserve(user.events.size());
  for (const auto& e : user.events) ids.push_back(e.item_id);
  return ids;
}

std::string TaskGenerator::history_text(const UserWindow& w) const {
  std::vector<std::string> titles;
  titles.reserve(w.history.size());
  for (const Item* item : w.history) titles.push_back(item->title);
  return join_natural(titles);
}

const Item& TaskGenerator::random_item(Rng& rng) const {
  return catalog_->items[rng.index(catalog_->items.size())];
}

std::vector<std::string> TaskGenerator::condition_positives(const ConditionPtr& cond,
                                                            const Item& source) const {
  std::vector<std::string> out;
  out.push_back(source.id);
  for (const auto& item : catalog_->items) {
    if (out.size() >= 50) break;
    if (item.id == source.id) continue;
    if (eval(item, cond)) out.push_back(item.id);
  }
  return out;
}

size_t TaskGenerator::count_satisfiers(const ConditionPtr& cond) const {
  size_t n = 0;
  for (const auto& item : catalog_->items) n += eval(item, cond);
  return n;
}

namespace {

// Rounded price ceilings used for "under X dollars" phrasing.
const double kPriceSteps[] = {5, 10, 15, 20, 25, 30, 40, 50, 60, 70, 80};

const CategoriesValue* pick_category_field(const Item& item, Rng& rng, std::string& field_out) {
  const CategoriesValue* genre = item.categories("genre");
  const CategoriesValue* tags = item.categories("tags");
  if (genre && tags) {
    if (rng.chance(0.5)) {
      field_out = "genre";
      return genre;
    }
    field_out = "tags";
    return tags;
  }
  if (genre) {
    field_out = "genre";
    return genre;
  }
  if (tags) {
    field_out = "tags";
    return tags;
  }
  return nullptr;
}

int year_of(int64_t days) {
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  return y;
}

}  // namespace

ConditionPtr TaskGenerator::vague_condition(const Item& source, Rng& rng) const {
  std::string field;
  const CategoriesValue* cats = pick_category_field(source, rng, field);
  if (!cats) return nullptr;
  std::vector<ConditionPtr> preds;
  preds.push_back(has_category(field, rng.pick(cats->values)));

  // Vague numeric/date qualifiers are deliberately loose bounds around the
  // source item, the way people round when they half-remember a spec.
  double roll = rng.real();
  size_t extras = roll < 0.50 ? 0 : (roll < 0.85 ? 1 : 2);
  bool want_date = extras >= 1;
  bool want_price = extras >= 2;
  if (extras == 1 && rng.chance(0.5)) std::swap(want_date, want_price);

  if (want_date) {
    if (const FieldValue* v = source.find_field("release date")) {
      if (const auto* d = std::get_if<DateValue>(v)) {
        int year = year_of(d->days);
        int after;
        if (max_release_year_ > 0 && year >= max_release_year_ - 2 && rng.chance(0.4)) {
          // "recent": within the last 3 calendar years of the catalog.
          after = max_release_year_ - 3;
        } else {
          after = year - static_cast<int>(rng.uniform(2, 4));
        }
        preds.push_back(date_cmp("release date", CmpOp::ge, days_from_civil(after + 1, 1, 1)));
      }
    }
  }
  if (want_price) {
    if (const FieldValue* v = source.find_field("price")) {
      if (const auto* p = std::get_if<NumberValue>(v)) {
        std::vector<double> above;
        for (double step : kPriceSteps) {
          if (step > p->value) above.push_back(step);
        }
        if (!above.empty()) {
          size_t pick = std::min(above.size() - 1, rng.chance(0.3) ? size_t{2} : size_t{1});
          preds.push_back(num_cmp("price", CmpOp::lt, above[pick]));
        }
      }
    }
  }
  return all_of(std::move(preds));
}

ConditionPtr TaskGenerator::negated_condition(const Item& source, Rng& rng) const {
  std::string field;
  const CategoriesValue* cats = pick_category_field(source, rng, field);
  if (!cats) return nullptr;
  std::vector<ConditionPtr> preds;
  preds.push_back(has_category(field, rng.pick(cats->values)));
  if (rng.chance(0.3)) {
    std::string other = field == "genre" ? "tags" : "genre";
    if (const auto* c = source.categories(other)) {
      preds.push_back(has_category(other, rng.pick(c->values)));
    }
  }

  // Negate a common category value the source lacks, preferring values that
  // are also rare among the items matching the positive predicates (the
  // negation excludes a real cluster without gutting the satisfier set).
  std::vector<const Item*> positive_matches;
  {
    ConditionPtr positive_part = all_of(preds);
    for (const auto& item : catalog_->items) {
      if (eval(item, positive_part)) positive_matches.push_back(&item);
    }
  }
  for (const std::string neg_field : {std::string("tags"), std::string("genre")}) {
    auto pool_it = category_pool_.find(neg_field);
    if (pool_it == category_pool_.end()) continue;
    const auto* own = source.categories(neg_field);
    std::vector<std::pair<std::string, double>> candidates;  // (value, share among matches)
    for (const auto& [value, count] : pool_it->second) {
      bool has = own && std::find(own->values.begin(), own->values.end(), value) != own->values.end();
      if (has) continue;
      size_t inside = 0;
      for (const Item* m : positive_matches) {
        const auto* c = m->categories(neg_field);
        if (c && std::find(c->values.begin(), c->values.end(), value) != c->values.end()) ++inside;
      }
      double share = positive_matches.empty()
                         ? 1.0
                         : static_cast<double>(inside) / static_cast<double>(positive_matches.size());
      candidates.emplace_back(value, share);
      if (candidates.size() == 12) break;
    }
    if (candidates.empty()) continue;
    std::vector<std::string> preferred;
    for (const auto& [value, share] : candidates) {
      if (share <= 0.25) preferred.push_back(value);
    }
    std::string chosen;
    if (!preferred.empty()) {
      chosen = preferred[rng.index(preferred.size())];
    } else {
      chosen = std::min_element(candidates.begin(), candidates.end(),
                                [](const auto& a, const auto& b) { return a.second < b.second; })
                   ->first;
    }
    preds.push_back(not_of(has_category(neg_field, chosen)));
    return all_of(std::move(preds));
  }
  return nullptr;
}

ConditionPtr TaskGenerator::sparse_item_condition(const Item& source, Rng& rng) const {
  const CategoriesValue* tags = source.categories("tags");
  const CategoriesValue* genre = source.categories("genre");
  std::vector<ConditionPtr> preds;
  std::string primary;
  const CategoriesValue* first = nullptr;
  if (tags && (!genre || rng.chance(0.6))) {
    primary = "tags";
    first = tags;
  } else if (genre) {
    primary = "genre";
    first = genre;
  }
  if (!first) return nullptr;
  preds.push_back(has_category(primary, rng.pick(first->values)));
  if (rng.chance(0.3)) {
    const CategoriesValue* other = primary == "tags" ? genre : tags;
    if (other) preds.push_back(has_category(primary == "tags" ? "genre" : "tags", rng.pick(other->values)));
  }
  return all_of(std::move(preds));
}

QuerySample TaskGenerator::generate_sample(Task task, Split split, size_t sample_index) const {
  const uint64_t seed = sample_seed(task, sample_index);
  std::string last_error;
  for (int attempt = 0; attempt < 32; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<uint64_t>(attempt)));
    try {
      QuerySample s;
      s.task = task;
      s.split = split;
      s.seed = seed;
      const Template& tpl = pick_template(task, split, rng);
      s.template_id = tpl.id;

      switch (task) {
        case Task::UH2I: {
          UserWindow w = draw_user_window(split, rng);
          s.query = instantiate(tpl.pattern, {{"HISTORY", history_text(w)}});
          s.positives = {w.positive->id};
          s.negatives = mine_negatives(*catalog_, full_history_ids(*w.user), nullptr, 7,
                                       rng.next_u64());
          break;
        }
        case Task::US2I: {
          UserWindow w = draw_user_window(split, rng);
          std::vector<Item> history;
          for (const Item* item : w.history) history.push_back(*item);
          std::string summary = summarize_user(history, *backend_, rng.next_u64());
          s.query = instantiate(tpl.pattern, {{"SUMMARY", summary}});
          s.positives = {w.positive->id};
          s.negatives = mine_negatives(*catalog_, full_history_ids(*w.user), nullptr, 7,
                                       rng.next_u64());
          break;
        }
        case Task::I2I: {
          size_t idx = rng.index(catalog_->items.size());
          if (i2i_positives_[idx].empty()) {
            fail(ErrorKind::insufficient_data, "no similar items for drawn source");
          }
          const Item& source = catalog_->items[idx];
          s.query = instantiate(tpl.pattern, {{"ITEM", source.title}});
          s.positives = i2i_positives_[idx];
          s.negatives = mine_negatives(*catalog_, i2i_exclusions_[idx], nullptr, 7, rng.next_u64());
          break;
        }
        case Task::FA2I:
        case Task::SA2I: {
          const Item& source = random_item(rng);
          auto draws = sample_attributes(source, task == Task::FA2I ? AttrMode::full : AttrMode::sparse,
                                         rng.next_u64());
          std::vector<ConditionPtr> preds;
          for (const auto& d : draws) {
            preds.insert(preds.end(), d.predicates.begin(), d.predicates.end());
          }
          ConditionPtr cond = all_of(std::move(preds));
          if (catalog_->items.size() - count_satisfiers(cond) < 7) {
            fail(ErrorKind::insufficient_data, "condition satisfied by nearly all items");
          }
          s.query = instantiate(tpl.pattern, {{"ATTRS", attrs_to_text(draws)}});
          s.positives = condition_positives(cond, source);
          s.negatives = mine_negatives(*catalog_, s.positives, cond, 7, rng.next_u64());
          s.condition = cond;
          break;
        }
        case Task::AS2I: {
          const Item& source = random_item(rng);
          // People lead with genre or tags when describing a game; redraw
          // until the sparse pick carries a category field and two fields.
          auto category_draw = [](const std::vector<AttributeDraw>& ds) {
            for (const auto& d : ds) {
              for (const auto& p : d.predicates) {
                if (std::holds_alternative<HasCategory>(p->node)) return true;
              }
            }
            return false;
          };
          auto draws = sample_attributes(source, AttrMode::sparse, rng.next_u64());
          for (int redraw = 0; redraw < 8 && !(draws.size() >= 2 && category_draw(draws));
               ++redraw) {
            draws = sample_attributes(source, AttrMode::sparse, rng.next_u64());
          }
          std::vector<std::string> chosen;
          for (const auto& d : draws) chosen.push_back(d.field);
          std::string summary = summarize_item(source, chosen, *backend_, rng.next_u64());
          // Mined against the full values of the summarized fields so no
          // negative matches the description; the stored condition stays null.
          std::vector<ConditionPtr> preds;
          for (const auto& name : chosen) {
            const FieldValue* v = source.find_field(name);
            if (const auto* c = std::get_if<CategoriesValue>(v)) {
              for (const auto& val : c->values) preds.push_back(has_category(name, val));
            } else if (const auto* num = std::get_if<NumberValue>(v)) {
              preds.push_back(num_cmp(name, CmpOp::eq, num->value));
            } else if (const auto* d = std::get_if<DateValue>(v)) {
              preds.push_back(date_cmp(name, CmpOp::eq, d->days));
            } else if (const auto* t = std::get_if<TextValue>(v)) {
              preds.push_back(text_equals(name, t->value));
            }
          }
          ConditionPtr ephemeral = all_of(std::move(preds));
          s.query = instantiate(tpl.pattern, {{"SUMMARY", summary}});
          s.positives = {source.id};
          s.negatives = mine_negatives(*catalog_, s.positives, ephemeral, 7, rng.next_u64());
          break;
        }
        case Task::NM2I: {
          const Item& source = random_item(rng);
          if (source.title.size() < 2) {
            fail(ErrorKind::insufficient_data, "title too short to misspell");
          }
          std::string name = misspell(source.title, rng.next_u64(), lowercase_titles_);
          s.query = instantiate(tpl.pattern, {{"NAME", name}});
          s.positives = {source.id};
          s.negatives = mine_negatives(*catalog_, s.positives, fuzzy_title(source.title, 2), 7,
                                       rng.next_u64());
          break;
        }
        case Task::VC2I:
        case Task::NA2I: {
          const Item& source = random_item(rng);
          ConditionPtr cond = task == Task::VC2I ? vague_condition(source, rng)
                                                 : negated_condition(source, rng);
          if (!cond) fail(ErrorKind::insufficient_data, "no usable fields for condition");
          if (catalog_->items.size() - count_satisfiers(cond) < 7) {
            fail(ErrorKind::insufficient_data, "condition satisfied by nearly all items");
          }
          s.query = instantiate(
              tpl.pattern, {{"CONDITION", render(cond, default_surface_pool(), rng.next_u64())}});
          s.positives = condition_positives(cond, source);
          s.negatives = mine_negatives(*catalog_, s.positives, cond, 7, rng.next_u64());
          s.condition = cond;
          break;
        }
        case Task::UQ2I: {
          UserWindow w = draw_user_window(split, rng);
          ConditionPtr cond = sparse_item_condition(*w.positive, rng);
          if (!cond) fail(ErrorKind::insufficient_data, "held-out item has no category fields");
          s.query = instantiate(
              tpl.pattern,
              {{"HISTORY", history_text(w)},
               {"CONDITION", render(cond, default_surface_pool(), rng.next_u64())}});
          s.positives = {w.positive->id};
          s.negatives = mine_negatives(*catalog_, full_history_ids(*w.user), cond, 7,
                                       rng.next_u64());
          s.condition = cond;
          break;
        }
      }

      char id[64];
      std::snprintf(id, sizeof(id), "%s-%s-%05zu", std::string(split_name(split)).c_str(),
                    std::string(task_name(task)).c_str(), sample_index);
      s.sample_id = id;
      if (s.query.empty()) fail(ErrorKind::internal, "empty query generated");
      return s;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::insufficient_data) throw;
      last_error = e.what();
    }
  }
  fail(ErrorKind::insufficient_data,
       "generate_sample(" + std::string(task_name(task)) + ", " + std::to_string(sample_index) +
           "): 32 attempts exhausted: " + last_error);
}

std::pair<Dataset, Dataset> TaskGenerator::generate_dataset(const MixConfig& mix) const {
  mix.validate();
  templates_->require_complete();
  auto train_counts = mix.counts(mix.train_total);
  auto test_counts = mix.counts(mix.effective_test_total());

  Dataset train, test;
  train.seed = test.seed = global_seed_;
  train.catalog_hash = test.catalog_hash = catalog_hash(*catalog_);
  train.templates_hash = test.templates_hash = templates_->content_hash();

  for (size_t ti = 0; ti < kTaskCount; ++ti) {
    Task task = kAllTasks[ti];
    for (size_t i = 0; i < train_counts[ti]; ++i) {
      train.samples.push_back(generate_sample(task, Split::train, i));
    }
    for (size_t j = 0; j < test_counts[ti]; ++j) {
      test.samples.push_back(generate_sample(task, Split::test, train_counts[ti] + j));
    }
  }
  return {std::move(train), std::move(test)};
}

// --- dataset io --------------------------------------------------------------------

Json sample_to_json(const QuerySample& s) {
  Json j;
  j["sample_id"] = s.sample_id;
  j["task"] = std::string(task_name(s.task));
  j["split"] = std::string(split_name(s.split));
  j["query"] = s.query;
  j["positives"] = s.positives;
  j["negatives"] = s.negatives;
  j["condition"] = s.condition ? condition_to_json(*s.condition) : Json(nullptr);
  j["template_id"] = s.template_id;
  j["seed"] = s.seed;
  return j;
}

QuerySample sample_from_json(const Json& j, size_t lineno) {
  std::string where = "line " + std::to_string(lineno);
  for (const char* key :
       {"sample_id", "task", "split", "query", "positives", "negatives", "template_id", "seed"}) {
    if (!j.contains(key)) fail(ErrorKind::parse, where + ": sample record missing '" + key + "'");
  }
  QuerySample s;
  s.sample_id = j["sample_id"].get<std::string>();
  s.task = task_from_name(j["task"].get<std::string>());
  s.split = split_from_name(j["split"].get<std::string>());
  s.query = j["query"].get<std::string>();
  s.positives = j["positives"].get<std::vector<std::string>>();
  s.negatives = j["negatives"].get<std::vector<std::string>>();
  if (j.contains("condition") && !j["condition"].is_null()) {
    s.condition = condition_from_json(j["condition"]);
  }
  s.template_id = j["template_id"].get<std::string>();
  s.seed = j["seed"].get<uint64_t>();

  if (s.query.empty()) fail(ErrorKind::validation, where + ": empty query");
  if (s.positives.empty()) fail(ErrorKind::validation, where + ": no positives");
  if (s.negatives.size() != 7) {
    fail(ErrorKind::validation, where + ": expected exactly 7 negatives, got " +
                                    std::to_string(s.negatives.size()));
  }
  std::set<std::string> pos(s.positives.begin(), s.positives.end());
  for (const auto& n : s.negatives) {
    if (pos.contains(n)) fail(ErrorKind::validation, where + ": negative '" + n + "' is a positive");
  }
  if (is_condition_task(s.task) != static_cast<bool>(s.condition)) {
    fail(ErrorKind::validation, where + ": condition presence does not match task " +
                                    std::string(task_name(s.task)));
  }
  return s;
}

Dataset load_dataset(const std::string& path) {
  JsonlFile file = read_jsonl(path);
  Dataset ds;
  if (file.meta) {
    ds.seed = file.meta->value("seed", uint64_t{0});
    if (file.meta->contains("inputs")) {
      ds.catalog_hash = (*file.meta)["inputs"].value("catalog", "");
      ds.templates_hash = (*file.meta)["inputs"].value("templates", "");
    }
  }
  size_t lineno = file.meta ? 1 : 0;
  for (const auto& rec : file.records) {
    ++lineno;
    ds.samples.push_back(sample_from_json(rec, lineno));
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
  Json inputs;
  inputs["catalog"] = ds.catalog_hash;
  inputs["templates"] = ds.templates_hash;
  std::vector<Json> records;
  records.reserve(ds.samples.size());
  for (const auto& s : ds.samples) records.push_back(sample_to_json(s));
  write_jsonl(path, make_meta(ds.seed, inputs), records);
}

std::string dataset_hash(const Dataset& ds) {
  uint64_t h = fnv1a("dataset");
  h = fnv1a(std::to_string(ds.seed), h);
  for (const auto& s : ds.samples) h = fnv1a(sample_to_json(s).dump(), h);
  return hash_hex(h);
}

}  // namespace forge
