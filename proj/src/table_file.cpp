// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include "pontdm/table_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace pontdm {

namespace {

constexpr const char* kHeader = "src,dst,wavelength,timeslot";

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

int parse_label(const std::string& field, const std::string& filename,
                int line, const char* what) {
  int value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    std::ostringstream msg;
    msg << filename << ":" << line << ": bad " << what << " '" << field
        << "'";
    throw ParseError(msg.str());
  }
  return value;
}

}  // namespace

void write_table(std::ostream& out, const AssignmentTable& table) {
  std::vector<Assignment> rows = table.assignments;
  std::sort(rows.begin(), rows.end());
  out << kHeader << "\n";
  for (const Assignment& a : rows) {
    out << a.src << "," << a.dst << "," << a.wavelength << "," << a.timeslot
        << "\n";
  }
}

AssignmentTable parse_table(std::istream& in, const std::string& filename) {
  AssignmentTable table;
  std::string raw;
  int line = 0;
  bool header_seen = false;

  while (std::getline(in, raw)) {
    ++line;
    const std::string text = strip_cr(raw);
    if (text.empty()) {
      continue;
    }
    if (!header_seen) {
      if (text != kHeader) {
        std::ostringstream msg;
        msg << filename << ":" << line << ": expected header '" << kHeader
            << "'";
        throw ParseError(msg.str());
      }
      header_seen = true;
      continue;
    }

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = text.find(',', start);
      if (pos == std::string::npos) {
        fields.push_back(text.substr(start));
        break;
      }
      fields.push_back(text.substr(start, pos - start));
      start = pos + 1;
    }
    if (fields.size() != 4) {
      std::ostringstream msg;
      msg << filename << ":" << line << ": expected 4 fields, got "
          << fields.size();
      throw ParseError(msg.str());
    }
    Assignment a;
    a.src = fields[0];
    a.dst = fields[1];
    a.wavelength = parse_label(fields[2], filename, line, "wavelength");
    a.timeslot = parse_label(fields[3], filename, line, "timeslot");
    table.assignments.push_back(std::move(a));
  }

  if (!header_seen) {
    throw ParseError(filename + ": missing table header");
  }
  return table;
}

void save_table(const std::string& path, const AssignmentTable& table) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError(path + ": cannot open table file for writing");
  }
  write_table(out, table);
}

AssignmentTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path + ": cannot open table file");
  }
  return parse_table(in, path);
}

}  // namespace pontdm
