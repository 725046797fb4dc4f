#pragma once

#include <array>
#include <string_view>

namespace sfc {

// Which drive is active. Also indexes the two value heads.
enum class TaskId : int { Extrinsic = 0, Intrinsic = 1 };

inline constexpr std::array<TaskId, 2> kAllTasks{TaskId::Extrinsic, TaskId::Intrinsic};

constexpr int index_of(TaskId t) { return static_cast<int>(t); }

constexpr char task_letter(TaskId t) { return t == TaskId::Extrinsic ? 'E' : 'I'; }

}  // namespace sfc
