#pragma once

// Query prompt templates: 40 per task (20 train / 20 test), with
// placeholder validation and the line-record file format.

#include <map>
#include <string>
#include <vector>

#include "jsonl.hpp"
#include "tasks.hpp"

namespace forge {

struct Template {
  std::string id;
  Task task = Task::UH2I;
  Split split = Split::train;
  std::string pattern;  // contains {HISTORY}/{ITEM}/{SUMMARY}/{ATTRS}/{CONDITION}/{NAME}
};

class TemplatePool {
 public:
  explicit TemplatePool(std::vector<Template> templates);

  const std::vector<Template>& all() const { return templates_; }
  // Templates for one (task, split); may be empty for partial pools.
  const std::vector<const Template*>& select(Task task, Split split) const;

  size_t size() const { return templates_.size(); }
  std::string content_hash() const;

  // Exactly 20 train + 20 test per task, with unique patterns.
  // Generation requires a complete pool.
  void require_complete() const;

 private:
  std::vector<Template> templates_;
  std::vector<const Template*> by_slot_[kTaskCount][2];
};

// Placeholder names a task's patterns must contain, and no other known ones.
const std::vector<std::string>& required_placeholders(Task task);
const std::vector<std::string>& known_placeholders();

// Throws Error(validation) when a pattern breaks the placeholder contract.
void validate_template(const Template& t);

std::string instantiate(const std::string& pattern,
                        const std::map<std::string, std::string>& slots);

const TemplatePool& builtin_templates();

TemplatePool load_templates(const std::string& path);
void save_templates(const TemplatePool& pool, const std::string& path);

}  // namespace forge
