#pragma once

#include <string>
#include <string_view>

namespace lgp {

enum class Task { kIris, kCartPole, kMountainCar };

/// Fixed observation/action widths for each built-in task.
struct TaskInfo {
  const char* name;
  int n_inputs;
  int n_actions;
};

const TaskInfo& task_info(Task task);

/// Parses "iris", "cart-pole" or "mountain-car"; throws std::invalid_argument
/// otherwise.
Task parse_task(std::string_view name);

std::string task_name(Task task);

}  // namespace lgp
