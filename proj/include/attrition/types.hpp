#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attrition/error.hpp"

namespace attrition {

inline constexpr int kItemCount = 24;
inline constexpr int kActivityFeatureCount = 4;

// Deadline-ordered prediction windows. stage2_gate marks the Stage-2
// selection point after the three Stage-1 tasks.
enum class TaskWindow : int {
  Task0 = 0,
  Task1 = 1,
  Task2 = 2,
  Stage2Gate = 3,
};

inline constexpr std::array<TaskWindow, 4> kAllWindows = {
    TaskWindow::Task0, TaskWindow::Task1, TaskWindow::Task2,
    TaskWindow::Stage2Gate};

// Token used in the CSV schemas.
inline const char* window_token(TaskWindow w) {
  switch (w) {
    case TaskWindow::Task0: return "task0";
    case TaskWindow::Task1: return "task1";
    case TaskWindow::Task2: return "task2";
    case TaskWindow::Stage2Gate: return "stage2_gate";
  }
  return "?";
}

// Short name used in report tables.
inline const char* window_label(TaskWindow w) {
  return w == TaskWindow::Stage2Gate ? "stage2" : window_token(w);
}

inline std::optional<TaskWindow> parse_window(const std::string& token) {
  for (TaskWindow w : kAllWindows)
    if (token == window_token(w)) return w;
  if (token == "stage2") return TaskWindow::Stage2Gate;
  return std::nullopt;
}

// One member's 24 Likert answers (1..5), keyed to a team.
struct ParticipantResponse {
  std::string participant_id;
  std::string team_id;
  std::array<int, kItemCount> items{};

  bool operator==(const ParticipantResponse&) const = default;
};

// One member's four forum counters within one task window.
struct ActivitySnapshot {
  std::string participant_id;
  std::string team_id;
  TaskWindow window = TaskWindow::Task0;
  long topics_entered = 0;
  long posts_read = 0;
  long likes_given = 0;
  long likes_received = 0;

  bool operator==(const ActivitySnapshot&) const = default;
};

// A team's task submission outcome; absent score means never submitted.
// stage2_selected is only meaningful on stage2_gate rows.
struct SubmissionRecord {
  std::string team_id;
  TaskWindow task = TaskWindow::Task0;
  std::optional<double> score;
  std::optional<int> stage2_selected;

  bool operator==(const SubmissionRecord&) const = default;
};

struct TeamEntry {
  std::string team_id;
  std::vector<ParticipantResponse> responses;
  std::vector<ActivitySnapshot> snapshots;
  std::map<TaskWindow, int> labels;  // window -> {0,1}

  bool operator==(const TeamEntry&) const = default;
};

// Joined teams: every team carries at least one response and one snapshot.
struct Cohort {
  std::vector<TeamEntry> teams;  // sorted by team_id

  bool operator==(const Cohort&) const = default;
};

struct MergeSummary {
  std::size_t kept = 0;
  std::size_t dropped_missing_responses = 0;
  std::size_t dropped_missing_activity = 0;
  std::size_t dropped_missing_submissions = 0;

  std::size_t dropped_total() const {
    return dropped_missing_responses + dropped_missing_activity +
           dropped_missing_submissions;
  }
};

}  // namespace attrition
