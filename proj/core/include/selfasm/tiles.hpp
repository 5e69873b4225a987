#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "selfasm/geom.hpp"

namespace selfasm {

// Sides in fixed order; opposite(side) = side ^ 2.
enum Side : int { North = 0, East = 1, South = 2, West = 3 };
inline Side opposite(Side s) { return Side((int(s) + 2) % 4); }
inline Point side_delta(Side s) {
  switch (s) {
    case North: return {0, 1};
    case East: return {1, 0};
    case South: return {0, -1};
    default: return {-1, 0};
  }
}

struct Glue {
  std::string label;
  int strength = 0;
};

constexpr int kNoGlue = -1;

struct TileType {
  std::string name;
  // Index into the glue table per side, or kNoGlue for an empty side.
  std::array<int, 4> glue{kNoGlue, kNoGlue, kNoGlue, kNoGlue};
};

// Glue table plus tile types plus a temperature. Equal labels always map to
// one table entry, so equal labels imply equal strengths.
class TileSet {
 public:
  int temperature = 2;

  int add_glue(const std::string& label, int strength);  // idempotent; strength must agree
  int glue_id(const std::string& label) const;           // -1 if absent
  const Glue& glue(int id) const { return glues_[size_t(id)]; }
  const std::vector<Glue>& glues() const { return glues_; }

  int add_tile(const std::string& name,
               const std::optional<std::string>& north,
               const std::optional<std::string>& east,
               const std::optional<std::string>& south,
               const std::optional<std::string>& west);
  int tile_id(const std::string& name) const;  // -1 if absent
  const TileType& tile(int id) const { return tiles_[size_t(id)]; }
  const std::vector<TileType>& tiles() const { return tiles_; }

  int glue_strength(int glue_idx) const {
    return glue_idx == kNoGlue ? 0 : glues_[size_t(glue_idx)].strength;
  }
  // Strength of the bond between side `s` of tile `a` and the abutting side
  // of tile `b` (equal labels with positive strength bond).
  int bond(int tile_a, Side s, int tile_b) const;

  // Line-based text format; round-trips byte-exactly.
  std::string to_text() const;
  static TileSet from_text(const std::string& text);

 private:
  std::vector<Glue> glues_;
  std::vector<TileType> tiles_;
  std::unordered_map<std::string, int> glue_by_label_;
  std::unordered_map<std::string, int> tile_by_name_;
};

// Finite positioning of tiles on the lattice: point -> tile type id.
class Assembly {
 public:
  Assembly() = default;

  bool empty() const { return cells_.empty(); }
  size_t size() const { return cells_.size(); }
  bool occupied(Point p) const { return cells_.count(p) != 0; }
  int tile_at(Point p) const;  // -1 if empty
  void place(Point p, int tile);
  void erase(Point p);

  const std::unordered_map<Point, int, PointHash>& cells() const { return cells_; }
  PointSet domain() const;

  friend bool operator==(const Assembly&, const Assembly&);

 private:
  std::unordered_map<Point, int, PointHash> cells_;
};

struct BindingEdge {
  Point a;
  Point b;
  int strength = 0;
};

// Vertices are the occupied points; edges join interacting adjacent tiles.
std::vector<BindingEdge> binding_graph(const Assembly& a, const TileSet& ts);

// True iff every cut of the binding graph has strength >= tau. Disconnected
// assemblies are unstable for tau >= 1. Exact global min cut (Stoer-Wagner).
bool is_tau_stable(const Assembly& a, const TileSet& ts, int tau);

// Exact global min cut value; disconnected graphs give 0. Single tile: +inf
// is represented as a large sentinel (no cuts exist).
int64_t min_cut_strength(const Assembly& a, const TileSet& ts);
constexpr int64_t kNoCut = INT64_MAX;

// Sum of strengths of matching glues between tile t placed at p and the
// occupied neighbors of p. Precondition: p unoccupied.
int attachment_strength(const Assembly& a, const TileSet& ts, int tile, Point p);

}  // namespace selfasm
