#pragma once

// The bundled knot table: one `name: braid[...]` per line, `#` comments.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kinv/diagrams.hpp"

#ifndef KINV_DEFAULT_TABLE
#define KINV_DEFAULT_TABLE "data/knots.txt"
#endif

namespace kinv {

class UnknownKnot : public std::runtime_error {
 public:
  explicit UnknownKnot(const std::string& name) : std::runtime_error("unknown knot '" + name + "'") {}
};

struct KnotEntry {
  std::string name;
  BraidWord braid;
};

class KnotTable {
 public:
  static KnotTable parse(std::istream& in) {
    KnotTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto colon = line.find(':');
      if (colon == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'name:'", 0);
      std::string name = line.substr(0, colon);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      try {
        t.entries_.push_back({name, parse_braid(line)});
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), e.position());
      }
    }
    return t;
  }

  static KnotTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open knot table " + path);
    return parse(in);
  }

  /// KINV_TABLE if set, else the table shipped with the sources.
  static std::string default_path() {
    if (const char* env = std::getenv("KINV_TABLE")) return env;
    return KINV_DEFAULT_TABLE;
  }
  static KnotTable load_default() { return load(default_path()); }

  const std::vector<KnotEntry>& entries() const { return entries_; }

  const BraidWord& lookup(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e.braid;
    throw UnknownKnot(name);
  }

  std::vector<BraidWord> presentations(const std::string& name) const {
    std::vector<BraidWord> out;
    for (const auto& e : entries_)
      if (e.name == name) out.push_back(e.braid);
    if (out.empty()) throw UnknownKnot(name);
    return out;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_)
      if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
    return out;
  }

 private:
  std::vector<KnotEntry> entries_;
};

/// Crossing number encoded in a Rolfsen-style name ("5_2" -> 5), if any.
inline std::optional<int> crossing_number_from_name(const std::string& name) {
  if (name == "unknot") return 0;
  auto us = name.find('_');
  if (us == std::string::npos || us == 0) return std::nullopt;
  for (std::size_t i = 0; i < us; ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  return std::stoi(name.substr(0, us));
}

}  // namespace kinv
