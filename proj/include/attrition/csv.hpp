#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "attrition/error.hpp"

namespace attrition::csv {

// Minimal comma-separated reader: UTF-8 lines, no quoting (the schemas here
// are identifiers and numbers). Keeps the 1-based line number for
// diagnostics.
struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

class Reader {
 public:
  explicit Reader(const std::string& path) : path_(path), in_(path) {
    if (!in_) fail(ErrorKind::Io, "cannot open " + path);
  }

  const std::string& path() const { return path_; }

  // Reads and validates the header row against the expected column names.
  void expect_header(const std::vector<std::string>& expected) {
    std::string line;
    if (!std::getline(in_, line))
      fail_at(ErrorKind::Parse, path_, 1, "missing header row");
    ++line_no_;
    const auto fields = split_line(line);
    if (fields != expected) {
      std::ostringstream want;
      for (std::size_t i = 0; i < expected.size(); ++i)
        want << (i ? "," : "") << expected[i];
      fail_at(ErrorKind::Parse, path_, 1, "header must be `" + want.str() + "`");
    }
  }

  bool next(Row& row) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.empty() || line == "\r") continue;  // tolerate blank lines
      row.fields = split_line(line);
      row.line = line_no_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail_row(const Row& row, ErrorKind kind,
                             const std::string& rule) const {
    fail_at(kind, path_, row.line, rule);
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

inline long parse_count(const Reader& r, const Row& row, const std::string& field,
                        const std::string& name) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(field, &pos);
  } catch (const std::exception&) {
    r.fail_row(row, ErrorKind::Parse, name + " must be an integer, got `" + field + "`");
  }
  if (pos != field.size())
    r.fail_row(row, ErrorKind::Parse, name + " must be an integer, got `" + field + "`");
  return v;
}

inline double parse_real(const Reader& r, const Row& row, const std::string& field,
                         const std::string& name) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    r.fail_row(row, ErrorKind::Parse, name + " must be a number, got `" + field + "`");
  }
  if (pos != field.size())
    r.fail_row(row, ErrorKind::Parse, name + " must be a number, got `" + field + "`");
  return v;
}

}  // namespace attrition::csv
