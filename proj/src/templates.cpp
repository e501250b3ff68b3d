#include "templates.hpp"

#include <set>

namespace forge {

const std::vector<std::string>& known_placeholders() {
  static const std::vector<std::string> all = {"{HISTORY}", "{ITEM}",      "{SUMMARY}",
                                               "{ATTRS}",   "{CONDITION}", "{NAME}"};
  return all;
}

const std::vector<std::string>& required_placeholders(Task task) {
  static const std::vector<std::string> history = {"{HISTORY}"};
  static const std::vector<std::string> item = {"{ITEM}"};
  static const std::vector<std::string> summary = {"{SUMMARY}"};
  static const std::vector<std::string> attrs = {"{ATTRS}"};
  static const std::vector<std::string> condition = {"{CONDITION}"};
  static const std::vector<std::string> name = {"{NAME}"};
  static const std::vector<std::string> hist_cond = {"{HISTORY}", "{CONDITION}"};
  switch (task) {
    case Task::UH2I: return history;
    case Task::I2I: return item;
    case Task::US2I: return summary;
    case Task::FA2I:
    case Task::SA2I: return attrs;
    case Task::AS2I: return summary;
    case Task::NM2I: return name;
    case Task::VC2I:
    case Task::NA2I: return condition;
    case Task::UQ2I: return hist_cond;
  }
  fail(ErrorKind::internal, "bad task");
}

void validate_template(const Template& t) {
  if (t.id.empty()) fail(ErrorKind::validation, "template with empty id");
  const auto& required = required_placeholders(t.task);
  for (const auto& ph : known_placeholders()) {
    bool needs = std::find(required.begin(), required.end(), ph) != required.end();
    bool has = t.pattern.find(ph) != std::string::npos;
    if (needs && !has) {
      fail(ErrorKind::validation, "template '" + t.id + "' missing placeholder " + ph);
    }
    if (!needs && has) {
      fail(ErrorKind::validation, "template '" + t.id + "' has forbidden placeholder " + ph);
    }
  }
}

TemplatePool::TemplatePool(std::vector<Template> templates) : templates_(std::move(templates)) {
  std::set<std::string> ids;
  for (const auto& t : templates_) {
    validate_template(t);
    if (!ids.insert(t.id).second) fail(ErrorKind::validation, "duplicate template id '" + t.id + "'");
    by_slot_[static_cast<size_t>(t.task)][t.split == Split::test ? 1 : 0].push_back(&t);
  }
}

const std::vector<const Template*>& TemplatePool::select(Task task, Split split) const {
  return by_slot_[static_cast<size_t>(task)][split == Split::test ? 1 : 0];
}

std::string TemplatePool::content_hash() const {
  uint64_t h = fnv1a("templates");
  for (const auto& t : templates_) {
    h = fnv1a(t.id, h);
    h = fnv1a(task_name(t.task), h);
    h = fnv1a(split_name(t.split), h);
    h = fnv1a(t.pattern, h);
  }
  return hash_hex(h);
}

void TemplatePool::require_complete() const {
  for (Task task : kAllTasks) {
    for (Split split : {Split::train, Split::test}) {
      const auto& slot = select(task, split);
      if (slot.size() != 20) {
        fail(ErrorKind::validation,
             "template pool incomplete: task " + std::string(task_name(task)) + " has " +
                 std::to_string(slot.size()) + " " + std::string(split_name(split)) +
                 " templates, expected 20");
      }
      std::set<std::string> patterns;
      for (const Template* t : slot) {
        if (!patterns.insert(t->pattern).second) {
          fail(ErrorKind::validation, "duplicate pattern in task " + std::string(task_name(task)));
        }
      }
    }
  }
}

std::string instantiate(const std::string& pattern,
                        const std::map<std::string, std::string>& slots) {
  std::string out = pattern;
  for (const auto& [name, value] : slots) {
    std::string key = "{" + name + "}";
    size_t pos;
    while ((pos = out.find(key)) != std::string::npos) out.replace(pos, key.size(), value);
  }
  return out;
}

TemplatePool load_templates(const std::string& path) {
  JsonlFile file = read_jsonl(path);
  std::vector<Template> templates;
  size_t lineno = file.meta ? 1 : 0;
  for (const auto& rec : file.records) {
    ++lineno;
    std::string where = path + ":" + std::to_string(lineno);
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("task") ||
        !rec.contains("split") || !rec.contains("pattern")) {
      fail(ErrorKind::parse, where + ": template record needs {id, task, split, pattern}");
    }
    Template t;
    t.id = rec["id"].get<std::string>();
    t.task = task_from_name(rec["task"].get<std::string>());
    t.split = split_from_name(rec["split"].get<std::string>());
    t.pattern = rec["pattern"].get<std::string>();
    templates.push_back(std::move(t));
  }
  return TemplatePool(std::move(templates));
}

void save_templates(const TemplatePool& pool, const std::string& path) {
  std::vector<Json> records;
  for (const auto& t : pool.all()) {
    Json j;
    j["id"] = t.id;
    j["task"] = std::string(task_name(t.task));
    j["split"] = std::string(split_name(t.split));
    j["pattern"] = t.pattern;
    records.push_back(std::move(j));
  }
  write_jsonl(path, make_meta(0, Json()), records);
}

}  // namespace forge
