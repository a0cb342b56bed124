#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrition/csv.hpp"
#include "attrition/error.hpp"
#include "attrition/types.hpp"

namespace attrition {

inline std::vector<std::string> responses_header() {
  std::vector<std::string> h = {"participant_id", "team_id"};
  for (int i = 1; i <= kItemCount; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "item_%02d", i);
    h.emplace_back(buf);
  }
  return h;
}

inline std::vector<std::string> activity_header() {
  return {"participant_id", "team_id",    "window",        "topics_entered",
          "posts_read",     "likes_given", "likes_received"};
}

inline std::vector<std::string> submissions_header() {
  return {"team_id", "task", "score", "stage2_selected"};
}

inline std::vector<ParticipantResponse> load_responses(const std::string& path) {
  csv::Reader reader(path);
  reader.expect_header(responses_header());
  std::vector<ParticipantResponse> out;
  std::set<std::string> seen;
  csv::Row row;
  while (reader.next(row)) {
    if (row.fields.size() != 2u + kItemCount)
      reader.fail_row(row, ErrorKind::Parse,
                      "expected " + std::to_string(2 + kItemCount) + " fields, got " +
                          std::to_string(row.fields.size()));
    ParticipantResponse r;
    r.participant_id = row.fields[0];
    r.team_id = row.fields[1];
    if (r.participant_id.empty())
      reader.fail_row(row, ErrorKind::Parse, "participant_id must be non-empty");
    if (r.team_id.empty())
      reader.fail_row(row, ErrorKind::Parse, "team_id must be non-empty");
    if (!seen.insert(r.participant_id).second)
      reader.fail_row(row, ErrorKind::Duplicate,
                      "duplicate participant_id `" + r.participant_id + "`");
    for (int i = 0; i < kItemCount; ++i) {
      const long v = csv::parse_count(reader, row, row.fields[2 + i],
                                      "item_" + std::to_string(i + 1));
      if (v < 1 || v > 5)
        reader.fail_row(row, ErrorKind::Range,
                        "Likert item value " + std::to_string(v) +
                            " outside 1..5 (item " + std::to_string(i + 1) + ")");
      r.items[i] = static_cast<int>(v);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ActivitySnapshot> load_activity(const std::string& path) {
  csv::Reader reader(path);
  reader.expect_header(activity_header());
  std::vector<ActivitySnapshot> out;
  std::set<std::pair<std::string, TaskWindow>> seen;
  csv::Row row;
  while (reader.next(row)) {
    if (row.fields.size() != 7)
      reader.fail_row(row, ErrorKind::Parse, "expected 7 fields, got " +
                                                 std::to_string(row.fields.size()));
    ActivitySnapshot s;
    s.participant_id = row.fields[0];
    s.team_id = row.fields[1];
    if (s.participant_id.empty() || s.team_id.empty())
      reader.fail_row(row, ErrorKind::Parse, "ids must be non-empty");
    const auto w = parse_window(row.fields[2]);
    if (!w)
      reader.fail_row(row, ErrorKind::UnknownWindow,
                      "unknown window `" + row.fields[2] + "`");
    s.window = *w;
    if (!seen.insert({s.participant_id, s.window}).second)
      reader.fail_row(row, ErrorKind::Duplicate,
                      "duplicate snapshot for participant `" + s.participant_id +
                          "` in window " + window_token(s.window));
    const char* names[4] = {"topics_entered", "posts_read", "likes_given",
                            "likes_received"};
    long* dest[4] = {&s.topics_entered, &s.posts_read, &s.likes_given,
                     &s.likes_received};
    for (int i = 0; i < 4; ++i) {
      const long v = csv::parse_count(reader, row, row.fields[3 + i], names[i]);
      if (v < 0)
        reader.fail_row(row, ErrorKind::NegativeCount,
                        std::string(names[i]) + " must be >= 0, got " +
                            std::to_string(v));
      *dest[i] = v;
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<SubmissionRecord> load_submissions(const std::string& path) {
  csv::Reader reader(path);
  reader.expect_header(submissions_header());
  std::vector<SubmissionRecord> out;
  std::set<std::pair<std::string, TaskWindow>> seen;
  csv::Row row;
  while (reader.next(row)) {
    if (row.fields.size() != 4)
      reader.fail_row(row, ErrorKind::Parse, "expected 4 fields, got " +
                                                 std::to_string(row.fields.size()));
    SubmissionRecord r;
    r.team_id = row.fields[0];
    if (r.team_id.empty())
      reader.fail_row(row, ErrorKind::Parse, "team_id must be non-empty");
    const auto w = parse_window(row.fields[1]);
    if (!w)
      reader.fail_row(row, ErrorKind::UnknownWindow,
                      "unknown task `" + row.fields[1] + "`");
    r.task = *w;
    if (!seen.insert({r.team_id, r.task}).second)
      reader.fail_row(row, ErrorKind::Duplicate,
                      "duplicate submission row for team `" + r.team_id +
                          "`, task " + window_token(r.task));
    if (!row.fields[2].empty()) {
      const double score = csv::parse_real(reader, row, row.fields[2], "score");
      if (score < 0)
        reader.fail_row(row, ErrorKind::Range,
                        "score must be >= 0 when present, got " + row.fields[2]);
      r.score = score;
    }
    const std::string& sel = row.fields[3];
    if (r.task == TaskWindow::Stage2Gate) {
      if (sel != "0" && sel != "1")
        reader.fail_row(row, ErrorKind::Parse,
                        "stage2_selected must be 0 or 1 on stage2_gate rows");
      r.stage2_selected = sel == "1" ? 1 : 0;
    } else if (!sel.empty()) {
      reader.fail_row(row, ErrorKind::Parse,
                      "stage2_selected must be empty on task rows");
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Label = 1 iff a score is present; a score of 0 still counts as submitted.
inline int encode_label(const SubmissionRecord& record) {
  return record.score.has_value() ? 1 : 0;
}

// Inner join on team_id across the three sources. A team missing a row for
// a window that appears elsewhere in the submissions file is labeled 0 for
// that window (no record = never submitted / not selected). Teams dropped by
// the join are counted once each, under the first missing source in the
// order responses > activity > submissions.
inline Cohort merge_cohort(const std::vector<ParticipantResponse>& responses,
                           const std::vector<ActivitySnapshot>& snapshots,
                           const std::vector<SubmissionRecord>& submissions,
                           MergeSummary* summary = nullptr) {
  std::map<std::string, std::vector<ParticipantResponse>> by_team_resp;
  for (const auto& r : responses) by_team_resp[r.team_id].push_back(r);
  std::map<std::string, std::vector<ActivitySnapshot>> by_team_act;
  for (const auto& s : snapshots) by_team_act[s.team_id].push_back(s);
  std::map<std::string, std::vector<SubmissionRecord>> by_team_sub;
  std::set<TaskWindow> windows;
  for (const auto& r : submissions) {
    by_team_sub[r.team_id].push_back(r);
    windows.insert(r.task);
  }

  std::set<std::string> all_teams;
  for (const auto& [id, _] : by_team_resp) all_teams.insert(id);
  for (const auto& [id, _] : by_team_act) all_teams.insert(id);
  for (const auto& [id, _] : by_team_sub) all_teams.insert(id);

  Cohort cohort;
  MergeSummary sum;
  for (const auto& id : all_teams) {
    if (!by_team_resp.count(id)) {
      ++sum.dropped_missing_responses;
      continue;
    }
    if (!by_team_act.count(id)) {
      ++sum.dropped_missing_activity;
      continue;
    }
    if (!by_team_sub.count(id)) {
      ++sum.dropped_missing_submissions;
      continue;
    }
    TeamEntry team;
    team.team_id = id;
    team.responses = by_team_resp[id];
    team.snapshots = by_team_act[id];
    for (TaskWindow w : windows) team.labels[w] = 0;
    for (const auto& rec : by_team_sub[id]) {
      team.labels[rec.task] = rec.task == TaskWindow::Stage2Gate
                                  ? rec.stage2_selected.value_or(0)
                                  : encode_label(rec);
    }
    cohort.teams.push_back(std::move(team));
  }
  sum.kept = cohort.teams.size();
  if (summary) *summary = sum;
  if (cohort.teams.empty())
    fail(ErrorKind::EmptyCohort, "no team present in all three inputs");
  return cohort;
}

// --- Cohort JSON round trip -------------------------------------------------

inline nlohmann::json cohort_to_json(const Cohort& cohort) {
  nlohmann::json teams = nlohmann::json::array();
  for (const auto& t : cohort.teams) {
    nlohmann::json jt;
    jt["team_id"] = t.team_id;
    nlohmann::json resp = nlohmann::json::array();
    for (const auto& r : t.responses)
      resp.push_back({{"participant_id", r.participant_id}, {"items", r.items}});
    jt["responses"] = std::move(resp);
    nlohmann::json snaps = nlohmann::json::array();
    for (const auto& s : t.snapshots)
      snaps.push_back({{"participant_id", s.participant_id},
                       {"window", window_token(s.window)},
                       {"topics_entered", s.topics_entered},
                       {"posts_read", s.posts_read},
                       {"likes_given", s.likes_given},
                       {"likes_received", s.likes_received}});
    jt["snapshots"] = std::move(snaps);
    nlohmann::json labels;
    for (const auto& [w, v] : t.labels) labels[window_token(w)] = v;
    jt["labels"] = std::move(labels);
    teams.push_back(std::move(jt));
  }
  return {{"teams", std::move(teams)}};
}

inline Cohort cohort_from_json(const nlohmann::json& j) {
  Cohort cohort;
  for (const auto& jt : j.at("teams")) {
    TeamEntry t;
    t.team_id = jt.at("team_id").get<std::string>();
    for (const auto& jr : jt.at("responses")) {
      ParticipantResponse r;
      r.participant_id = jr.at("participant_id").get<std::string>();
      r.team_id = t.team_id;
      const auto& items = jr.at("items");
      if (items.size() != kItemCount)
        fail(ErrorKind::Parse, "cohort JSON: response must have 24 items");
      for (int i = 0; i < kItemCount; ++i) r.items[i] = items[i].get<int>();
      t.responses.push_back(std::move(r));
    }
    for (const auto& js : jt.at("snapshots")) {
      ActivitySnapshot s;
      s.participant_id = js.at("participant_id").get<std::string>();
      s.team_id = t.team_id;
      const auto w = parse_window(js.at("window").get<std::string>());
      if (!w) fail(ErrorKind::UnknownWindow, "cohort JSON: bad window token");
      s.window = *w;
      s.topics_entered = js.at("topics_entered").get<long>();
      s.posts_read = js.at("posts_read").get<long>();
      s.likes_given = js.at("likes_given").get<long>();
      s.likes_received = js.at("likes_received").get<long>();
      t.snapshots.push_back(std::move(s));
    }
    for (const auto& [token, v] : jt.at("labels").items()) {
      const auto w = parse_window(token);
      if (!w) fail(ErrorKind::UnknownWindow, "cohort JSON: bad label window");
      t.labels[*w] = v.get<int>();
    }
    cohort.teams.push_back(std::move(t));
  }
  return cohort;
}

}  // namespace attrition
