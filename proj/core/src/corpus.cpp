// Copyright 2026 The tors3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <map>
#include <sstream>

#include "tors3/curves.hpp"
#include "tors3/errors.hpp"

#ifndef TORS3_DATA_DIR
#define TORS3_DATA_DIR "data"
#endif

namespace tors3 {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

using Record = std::pair<std::string, std::map<std::string, std::string>>;

const std::string& field(const Record& r, const std::string& key) {
  auto it = r.second.find(key);
  if (it == r.second.end()) {
    throw ParseError("map " + r.first + ": missing field '" + key + "'");
  }
  return it->second;
}

DegreeThreeMap build(const Record& r) {
  DegreeThreeMap m;
  m.id = r.first;
  m.parent.label = field(r, "parent_label");
  m.parent.F = parse_bipoly(field(r, "plane_model"), "x", "y");
  m.g.num = parse_bipoly(field(r, "g_numerator"), "x", "y");
  m.g.den = parse_bipoly(field(r, "g_denominator"), "x", "y");
  m.curve_variable = field(r, "curve_variable");
  if (m.curve_variable != "x" && m.curve_variable != "y") {
    throw ParseError("map " + m.id + ": curve_variable must be x or y");
  }
  m.f = parse_bipoly(field(r, "f"), m.curve_variable, "t");
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = r.second.find(k);
    return it == r.second.end() ? nullptr : &it->second;
  };
  m.curve_id = get("curve_id") ? *get("curve_id") : m.id;
  if (get("printed_curve")) m.printed_curve = parse_poly(*get("printed_curve"), "t");
  m.printed_shift = get("printed_shift") ? Rational::parse(*get("printed_shift")) : Rational(0);
  if (get("cusps")) {
    std::stringstream ss(*get("cusps"));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) m.cusp_list.push_back(Rational::parse(item));
    }
  }
  return m;
}

}  // namespace

std::vector<DegreeThreeMap> parse_corpus(const std::string& text) {
  std::vector<Record> records;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.rfind("[map ", 0) != 0) {
        throw ParseError("line " + std::to_string(lineno) + ": bad section header");
      }
      records.push_back({trim(line.substr(5, line.size() - 6)), {}});
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos || records.empty()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    }
    records.back().second[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  std::vector<DegreeThreeMap> out;
  for (const auto& r : records) {
    try {
      out.push_back(build(r));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("map " + r.first + ": " + e.what());
    }
  }
  return out;
}

std::vector<DegreeThreeMap> load_corpus(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open corpus file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_corpus(ss.str());
}

std::string default_corpus_path() {
  return std::string(TORS3_DATA_DIR) + "/corpus.txt";
}

const DegreeThreeMap& find_map(const std::vector<DegreeThreeMap>& corpus,
                               const std::string& id) {
  for (const auto& m : corpus) {
    if (m.id == id || m.curve_id == id) return m;
  }
  throw InvalidInput("no map '" + id + "' in corpus");
}

}  // namespace tors3
