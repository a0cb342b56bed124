#pragma once

#include <array>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrition/error.hpp"
#include "attrition/types.hpp"

namespace attrition {

inline constexpr int kSubscaleCount = 6;

// Item-to-subscale assignment for the 24-item instrument. The six item lists
// must partition 1..24 and each subscale needs at least two items.
struct SubscaleMap {
  std::array<std::string, kSubscaleCount> names;
  std::array<std::vector<int>, kSubscaleCount> items;  // 1-based item indices

  void validate() const {
    std::set<int> seen;
    for (int s = 0; s < kSubscaleCount; ++s) {
      if (items[s].size() < 2)
        fail(ErrorKind::Parse, "subscale `" + names[s] + "` needs >= 2 items");
      for (int i : items[s]) {
        if (i < 1 || i > kItemCount)
          fail(ErrorKind::Range, "item index " + std::to_string(i) + " outside 1..24");
        if (!seen.insert(i).second)
          fail(ErrorKind::Duplicate, "item " + std::to_string(i) +
                                         " assigned to two subscales");
      }
    }
    if (seen.size() != kItemCount)
      fail(ErrorKind::Parse, "subscales must cover all 24 items");
  }

  // Barnard et al. 24-item composition: 5/4/4/3/4/4.
  static SubscaleMap standard() {
    SubscaleMap m;
    m.names = {"Goal Setting",    "Environment Setting", "Task Strategies",
               "Time Management", "Help Seeking",        "Self Evaluation"};
    m.items = {std::vector<int>{1, 2, 3, 4, 5}, {6, 7, 8, 9}, {10, 11, 12, 13},
               {14, 15, 16},                    {17, 18, 19, 20}, {21, 22, 23, 24}};
    m.validate();
    return m;
  }

  static SubscaleMap from_json(const nlohmann::json& j) {
    SubscaleMap m;
    if (j.size() != kSubscaleCount)
      fail(ErrorKind::Parse, "subscale map must define exactly 6 subscales");
    int s = 0;
    for (const auto& [name, idx] : j.items()) {
      m.names[s] = name;
      for (const auto& i : idx) m.items[s].push_back(i.get<int>());
      ++s;
    }
    m.validate();
    return m;
  }

  static SubscaleMap load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      fail(ErrorKind::Parse, path + ": " + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    for (int s = 0; s < kSubscaleCount; ++s) j[names[s]] = items[s];
    return j;
  }
};

// Simple-structure loading pattern: each of `items` observed variables loads
// on exactly one of `factors` latent variables.
struct LoadingPattern {
  int items = 0;
  int factors = 0;
  std::vector<int> factor_of;  // size == items, values in [0, factors)

  static LoadingPattern from_subscales(const SubscaleMap& map) {
    map.validate();
    LoadingPattern p;
    p.items = kItemCount;
    p.factors = kSubscaleCount;
    p.factor_of.assign(kItemCount, 0);
    for (int s = 0; s < kSubscaleCount; ++s)
      for (int i : map.items[s]) p.factor_of[i - 1] = s;
    return p;
  }
};

}  // namespace attrition
