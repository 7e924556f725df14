#pragma once

// Braid words and the long knots obtained by closing every strand but the
// first. The traversal starts at the bottom of strand 1, climbs the braid,
// and each time it reaches the top at position p != 1 it follows the
// closing arc (one full turn, carrying one pivot bead) back to the bottom of
// position p. Beads are listed in traversal order; the invariant multiplies
// them right to left, so the first bead ends up rightmost.

#include <cctype>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace kinv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Thrown for braids whose closure is not a single-component long knot.
class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // +-g means sigma_g^{+-1}

  int writhe() const {
    int w = 0;
    for (int g : letters) w += g > 0 ? 1 : -1;
    return w;
  }
  bool operator==(const BraidWord&) const = default;
};

inline std::string to_string(const BraidWord& b) {
  std::string s = "braid[";
  for (std::size_t i = 0; i < b.letters.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(b.letters[i]);
  }
  return s + "]";
}

inline void validate(const BraidWord& b) {
  if (b.strands < 1) throw DiagramError("braid needs at least one strand");
  for (int g : b.letters)
    if (g == 0 || std::abs(g) > b.strands - 1)
      throw DiagramError("generator " + std::to_string(g) + " out of range for " + std::to_string(b.strands) +
                         " strands");
}

/// Parses `name: braid[1,-2,...]`, `braid[...]` or `[...]`. Without an
/// explicit strand count the smallest admissible one is used.
inline BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  if (auto colon = text.find(':'); colon != std::string_view::npos) i = colon + 1;
  skip();
  if (text.substr(i, 5) == "braid") i += 5;
  skip();
  if (i >= text.size() || text[i] != '[') throw ParseError("expected '['", i);
  ++i;
  BraidWord b;
  skip();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    for (;;) {
      skip();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      std::size_t digits = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == digits) throw ParseError("expected a signed integer", start);
      int g = std::stoi(std::string(text.substr(start, i - start)));
      if (g == 0) throw ParseError("generator 0 is not allowed", start);
      b.letters.push_back(g);
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ']') {
        ++i;
        break;
      }
      throw ParseError("expected ',' or ']'", i);
    }
  }
  skip();
  if (i != text.size()) throw ParseError("trailing characters", i);
  int needed = 1;
  for (int g : b.letters) needed = std::max(needed, std::abs(g) + 1);
  b.strands = strands.value_or(needed);
  validate(b);
  return b;
}

enum class BeadKind { ROver, RUnder, RinvOver, RinvUnder, Pivot };

inline const char* to_string(BeadKind k) {
  switch (k) {
    case BeadKind::ROver: return "R_over";
    case BeadKind::RUnder: return "R_under";
    case BeadKind::RinvOver: return "Rinv_over";
    case BeadKind::RinvUnder: return "Rinv_under";
    case BeadKind::Pivot: return "Pivot";
  }
  return "?";
}

struct BeadSlot {
  BeadKind kind;
  int crossing = -1;  // index into the braid word; -1 for pivots
  int power = 0;      // pivot exponent; 0 for crossing slots

  bool is_pivot() const { return kind == BeadKind::Pivot; }
  bool is_over() const { return kind == BeadKind::ROver || kind == BeadKind::RinvOver; }
  bool positive() const { return kind == BeadKind::ROver || kind == BeadKind::RUnder; }
  bool operator==(const BeadSlot&) const = default;
};

struct LongKnotDiagram {
  BraidWord braid;
  std::vector<int> permutation;     // bottom position -> top position (0-based)
  std::vector<BeadSlot> traversal;  // in orientation order
  int writhe = 0;
  std::vector<int> arc_rotations;   // one entry per closing arc
  int pivot_power = 1;              // calibration: pivot exponent per closing arc
};

/// Underlying permutation of a braid: position at the bottom -> at the top.
inline std::vector<int> braid_permutation(const BraidWord& b) {
  std::vector<int> at(b.strands);  // at[pos] = strand occupying pos
  for (int i = 0; i < b.strands; ++i) at[i] = i;
  for (int g : b.letters) std::swap(at[std::abs(g) - 1], at[std::abs(g)]);
  std::vector<int> perm(b.strands);
  for (int pos = 0; pos < b.strands; ++pos) perm[at[pos]] = pos;
  return perm;
}

/// Pivot exponent carried by each closing arc. Closing arcs run to the right
/// of the braid, i.e. one clockwise turn each.
inline constexpr int kPivotPerArc = 1;

inline LongKnotDiagram braid_to_long_knot(const BraidWord& b, int pivot_power = kPivotPerArc) {
  validate(b);
  LongKnotDiagram d;
  d.braid = b;
  d.permutation = braid_permutation(b);
  d.writhe = b.writhe();
  d.pivot_power = pivot_power;

  int pos = 0;
  std::vector<bool> visited(b.strands, false);
  for (int pass = 0; pass < b.strands; ++pass) {
    if (visited[pos]) throw DiagramError("braid closure has more than one component");
    visited[pos] = true;
    for (std::size_t c = 0; c < b.letters.size(); ++c) {
      int g = b.letters[c];
      int left = std::abs(g) - 1;
      if (pos != left && pos != left + 1) continue;
      bool moving_right = pos == left;
      // Positive crossing: the strand moving right is over. Negative: the
      // strand moving left is over.
      bool over = g > 0 ? moving_right : !moving_right;
      BeadKind kind = g > 0 ? (over ? BeadKind::ROver : BeadKind::RUnder)
                            : (over ? BeadKind::RinvOver : BeadKind::RinvUnder);
      d.traversal.push_back({kind, static_cast<int>(c), 0});
      pos = moving_right ? left + 1 : left;
    }
    if (pos == 0) {
      if (pass != b.strands - 1) throw DiagramError("braid closure has more than one component");
      break;
    }
    d.traversal.push_back({BeadKind::Pivot, -1, pivot_power});
    d.arc_rotations.push_back(-1);
  }
  return d;
}

inline const std::vector<BeadSlot>& bead_word(const LongKnotDiagram& d) { return d.traversal; }

inline nlohmann::json to_json(const LongKnotDiagram& d) {
  nlohmann::json beads = nlohmann::json::array();
  for (const auto& s : d.traversal) {
    nlohmann::json j;
    j["kind"] = to_string(s.kind);
    if (s.is_pivot())
      j["power"] = s.power;
    else
      j["crossing"] = s.crossing;
    beads.push_back(j);
  }
  nlohmann::json out;
  out["braid"] = to_string(d.braid);
  out["strands"] = d.braid.strands;
  out["permutation"] = d.permutation;
  out["writhe"] = d.writhe;
  out["arc_rotations"] = d.arc_rotations;
  out["pivot_power"] = d.pivot_power;
  out["beads"] = beads;
  return out;
}

/// Rebuilds a diagram from its serialized form, checking every derived field.
inline LongKnotDiagram diagram_from_json(const nlohmann::json& j) {
  BraidWord b = parse_braid(j.at("braid").get<std::string>(), j.at("strands").get<int>());
  LongKnotDiagram d = braid_to_long_knot(b, j.at("pivot_power").get<int>());
  if (to_json(d) != j) throw DiagramError("serialized diagram is inconsistent with its braid");
  return d;
}

}  // namespace kinv
