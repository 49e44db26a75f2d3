#include "lgp/task.hpp"

#include <stdexcept>

namespace lgp {

namespace {
constexpr TaskInfo kIrisInfo{"iris", 4, 3};
constexpr TaskInfo kCartPoleInfo{"cart-pole", 4, 2};
constexpr TaskInfo kMountainCarInfo{"mountain-car", 2, 3};
}  // namespace

const TaskInfo& task_info(Task task) {
  switch (task) {
    case Task::kIris: return kIrisInfo;
    case Task::kCartPole: return kCartPoleInfo;
    case Task::kMountainCar: return kMountainCarInfo;
  }
  throw std::logic_error("unreachable task");
}

Task parse_task(std::string_view name) {
  if (name == "iris") return Task::kIris;
  if (name == "cart-pole") return Task::kCartPole;
  if (name == "mountain-car") return Task::kMountainCar;
  throw std::invalid_argument("unknown task '" + std::string(name) +
                              "' (expected iris, cart-pole or mountain-car)");
}

std::string task_name(Task task) { return task_info(task).name; }

}  // namespace lgp
