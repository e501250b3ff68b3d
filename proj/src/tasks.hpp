#pragma once

// The ten query task families and their evaluation metric.

#include <array>
#include <string>
#include <string_view>

#include "util.hpp"

namespace forge {

enum class Task {
  UH2I,  // user history
  I2I,   // similar item
  US2I,  // user summary
  FA2I,  // full attributes
  SA2I,  // sparse attributes
  AS2I,  // attributes summary
  NM2I,  // misspelled name
  VC2I,  // vague condition
  NA2I,  // negated attributes
  UQ2I,  // history + query
};

inline constexpr size_t kTaskCount = 10;

inline constexpr std::array<Task, kTaskCount> kAllTasks = {
    Task::UH2I, Task::I2I,  Task::US2I, Task::FA2I, Task::SA2I,
    Task::AS2I, Task::NM2I, Task::VC2I, Task::NA2I, Task::UQ2I};

inline constexpr std::array<std::string_view, kTaskCount> kTaskNames = {
    "uh2i", "i2i", "us2i", "fa2i", "sa2i", "as2i", "nm2i", "vc2i", "na2i", "uq2i"};

inline std::string_view task_name(Task t) { return kTaskNames[static_cast<size_t>(t)]; }

inline Task task_from_name(std::string_view name) {
  std::string lower = to_lower(name);
  for (size_t i = 0; i < kTaskCount; ++i) {
    if (kTaskNames[i] == lower) return kAllTasks[i];
  }
  fail(ErrorKind::parse, "unknown task: '" + std::string(name) + "'");
}

// Coverage tasks score top-k items against the sample's condition; the rest
// are hit tasks scored against the positives list.
inline bool is_coverage_task(Task t) {
  return t == Task::FA2I || t == Task::SA2I || t == Task::VC2I || t == Task::NA2I;
}

// Condition tasks store their predicate in the sample record.
inline bool is_condition_task(Task t) { return is_coverage_task(t) || t == Task::UQ2I; }

enum class Split { train, test };

inline std::string_view split_name(Split s) { return s == Split::train ? "train" : "test"; }

inline Split split_from_name(std::string_view name) {
  std::string lower = to_lower(name);
  if (lower == "train") return Split::train;
  if (lower == "test") return Split::test;
  fail(ErrorKind::parse, "unknown split: '" + std::string(name) + "'");
}

}  // namespace forge
