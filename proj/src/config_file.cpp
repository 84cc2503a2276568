// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include "pontdm/config_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace pontdm {

namespace {

std::string trim(const std::string& text) {
  const std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

class Parser {
 public:
  Parser(std::istream& in, const std::string& filename)
      : in_(in), filename_(filename) {}

  RunConfig run() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      const std::size_t comment = raw.find(';');
      const std::string line =
          trim(comment == std::string::npos ? raw : raw.substr(0, comment));
      if (line.empty()) {
        continue;
      }
      if (line.front() == '[') {
        enter_section(line);
        continue;
      }
      handle_key_value(line);
    }
    for (const char* key : {"cells", "racks_per_cell", "olts"}) {
      if (!seen_.count(std::string("topology.") + key)) {
        fail(0, std::string("missing required key '") + key +
                    "' in [topology]");
      }
    }
    return config_;
  }

 private:
  [[noreturn]] void fail(int line, const std::string& message) const {
    std::ostringstream out;
    out << filename_;
    if (line > 0) {
      out << ":" << line;
    }
    out << ": " << message;
    throw ParseError(out.str());
  }

  void enter_section(const std::string& line) {
    if (line.back() != ']') {
      fail(line_, "malformed section header '" + line + "'");
    }
    const std::string name = trim(line.substr(1, line.size() - 2));
    if (name != "topology" && name != "resources" && name != "demands" &&
        name != "solver") {
      fail(line_, "unknown section '[" + name + "]'");
    }
    section_ = name;
  }

  void handle_key_value(const std::string& line) {
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(line_, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      fail(line_, "empty key");
    }
    if (section_.empty()) {
      fail(line_, "key '" + key + "' appears before any section");
    }
    if (!seen_.insert(section_ + "." + key).second) {
      fail(line_, "repeated key '" + key + "' in [" + section_ + "]");
    }
    assign(key, value);
  }

  void assign(const std::string& key, const std::string& value) {
    if (section_ == "topology") {
      if (key == "cells") {
        config_.topology.cells = to_int(key, value);
      } else if (key == "racks_per_cell") {
        config_.topology.racks_per_cell = to_int(key, value);
      } else if (key == "olts") {
        config_.topology.olts = to_int(key, value);
      } else {
        unknown(key);
      }
    } else if (section_ == "resources") {
      if (key == "time_slots") {
        config_.topology.time_slots = to_int(key, value);
      } else if (key == "planes") {
        config_.topology.planes = to_int(key, value);
      } else {
        unknown(key);
      }
    } else if (section_ == "demands") {
      if (key == "include_intra_cell") {
        config_.demands.include_intra_cell = to_bool(key, value);
      } else if (key == "include_olt_pairs") {
        config_.demands.include_olt_pairs = to_bool(key, value);
      } else {
        unknown(key);
      }
    } else {  // solver
      if (key == "kind") {
        if (value == "exact") {
          config_.solver.kind = SolverKind::Exact;
        } else if (value == "greedy") {
          config_.solver.kind = SolverKind::Greedy;
        } else {
          fail(line_, "key 'kind' must be 'exact' or 'greedy', got '" +
                          value + "'");
        }
      } else if (key == "seed") {
        config_.solver.seed = static_cast<std::uint32_t>(
            to_long(key, value));
      } else if (key == "node_budget") {
        config_.solver.node_budget = to_long(key, value);
      } else {
        unknown(key);
      }
    }
  }

  [[noreturn]] void unknown(const std::string& key) const {
    fail(line_, "unknown key '" + key + "' in [" + section_ + "]");
  }

  long long to_long(const std::string& key, const std::string& value) const {
    long long parsed = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc() || ptr != end) {
      fail(line_, "key '" + key + "' expects an integer, got '" + value +
                      "'");
    }
    return parsed;
  }

  int to_int(const std::string& key, const std::string& value) const {
    return static_cast<int>(to_long(key, value));
  }

  bool to_bool(const std::string& key, const std::string& value) const {
    if (value == "true") {
      return true;
    }
    if (value == "false") {
      return false;
    }
    fail(line_, "key '" + key + "' expects true or false, got '" + value +
                    "'");
  }

  std::istream& in_;
  std::string filename_;
  int line_ = 0;
  std::string section_;
  std::set<std::string> seen_;
  RunConfig config_;
};

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& filename) {
  return Parser(in, filename).run();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path + ": cannot open config file");
  }
  return parse_config(in, path);
}

}  // namespace pontdm
