#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "selfasm/tiles.hpp"

namespace selfasm {

// A tau-stable assembly canonicalized so min x = min y = 0, with a cached
// content hash. Equality of supertiles is equality of canonical assemblies.
class Supertile {
 public:
  Supertile() = default;

  // Cells sorted by (y,x); parallel tile ids.
  const std::vector<Point>& cells() const { return cells_; }
  const std::vector<int>& tiles() const { return tiles_; }
  size_t size() const { return cells_.size(); }
  uint64_t hash() const { return hash_; }

  int tile_at(Point p) const;  // -1 if unoccupied
  PointSet domain() const { return PointSet(cells_); }
  Box bounding_box() const;

  Assembly to_assembly() const;

  friend bool operator==(const Supertile& a, const Supertile& b) {
    return a.hash_ == b.hash_ && a.cells_ == b.cells_ && a.tiles_ == b.tiles_;
  }
  // Deterministic total order: size, hash, then content.
  friend bool operator<(const Supertile& a, const Supertile& b);

  static Supertile canonicalize_unchecked(const Assembly& a);

 private:
  std::vector<Point> cells_;
  std::vector<int> tiles_;
  uint64_t hash_ = 0;
};

struct SupertileHash {
  size_t operator()(const Supertile& s) const { return size_t(s.hash()); }
};

// Translate to the origin corner; throws if the input is not tau-stable.
Supertile canonicalize(const Assembly& a, const TileSet& ts, int tau);

// All canonical tau-stable unions of s1 and a translate of s2 where the new
// cross-boundary bond strength is >= tau. Deterministic order.
std::vector<Supertile> combine(const Supertile& s1, const Supertile& s2, const TileSet& ts, int tau);

struct CensusOptions {
  size_t size_bound = 20;        // K: max tiles per supertile
  size_t member_budget = 2'000'000;  // max census members before truncation
  unsigned threads = 0;          // 0 = hardware concurrency
};

struct ProducibleCensus {
  // size -> canonical supertiles of that size, sorted.
  std::map<size_t, std::vector<Supertile>> by_size;
  bool truncated = false;
  size_t total() const;
};

// Least fixed point of the singleton set under combine, restricted to
// supertiles of at most size_bound tiles.
ProducibleCensus enumerate_producibles(const TileSet& ts, const CensusOptions& opt);

// One step of a merge script. References are either "t:<tile-name>" (a
// singleton) or "s:<index>" (the result of an earlier step). In 2HAM every
// supertile is available in unbounded count, so references may repeat.
struct MergeStep {
  std::string lhs;
  std::string rhs;
  int32_t dx = 0;
  int32_t dy = 0;
};

struct MergeScript {
  std::vector<MergeStep> steps;

  std::string to_text() const;
  static MergeScript from_text(const std::string& text);
};

// Executes the script; the result is the final step's supertile. Fails fast
// (std::runtime_error) on overlap, insufficient new bond strength, or an
// unknown reference. An empty script over a singleton is expressed as a
// script with zero steps plus a designated singleton: use run_script_ref.
Supertile run_script(const TileSet& ts, const MergeScript& script, int tau);

// Resolve a single reference ("t:NAME" or "s:IDX") in the context of already
// executed steps; used by run_script and by callers inspecting scripts.
Supertile resolve_ref(const TileSet& ts, const std::string& ref,
                      const std::vector<Supertile>& step_results);

// True iff no census member can attach to s at temperature tau.
bool is_terminal_bounded(const Supertile& s, const ProducibleCensus& census, const TileSet& ts,
                         int tau);

}  // namespace selfasm
