#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfasm/fractal.hpp"
#include "selfasm/tiles.hpp"

namespace selfasm {

// Seeded aTAM system. The seed defaults to a single tile; multi-tile seeds
// are accepted behind allow_multitile_seed.
struct AtamSystem {
  TileSet tiles;
  Assembly seed;
  int temperature = 2;
  bool allow_multitile_seed = false;

  void validate() const;  // throws std::invalid_argument on a bad seed
};

struct Placement {
  int tile = -1;
  Point pos;
  // Indices of earlier steps this tile binds to; -1 denotes the seed.
  std::vector<int> parents;
};

struct PlacementSequence {
  Assembly seed;
  std::vector<Placement> steps;
  bool reached_terminal = false;

  Assembly replay(size_t prefix) const;  // assembly after `prefix` steps
  Assembly result() const { return replay(steps.size()); }

  std::string to_text(const TileSet& ts) const;
  static PlacementSequence from_text(const TileSet& ts, const std::string& text);
};

struct Attachment {
  int tile = -1;
  Point pos;
};

// All (tile, point) with attachment strength >= tau at unoccupied points.
std::vector<Attachment> frontier(const Assembly& a, const AtamSystem& sys);

enum class PolicyKind { SmallestStageFirst, Lexicographic, Random };

struct Policy {
  PolicyKind kind = PolicyKind::Lexicographic;
  FractalKind fractal = FractalKind::U;  // used by SmallestStageFirst
  uint64_t seed = 0;                     // used by Random (explicit, no wall clock)
};

// Grows from the seed, one tile per step, choosing among frontier attachments
// per the policy. Ties break by stage number (when applicable), then (y,x),
// then tile name. Deterministic for the non-random policies.
PlacementSequence run_policy(const AtamSystem& sys, const Policy& policy, size_t step_limit);

// Transitive closure of parent links for step k (excludes the seed marker).
std::vector<int> ancestors(const PlacementSequence& seq, size_t k);

enum class PlacementClass { TopPlaced, MiddlePlaced, BottomPlaced, Mixed, PreBottleneck };

// Classification of placements in the left-center of stage i relative to the
// left bottleneck tiles, per ancestor sets.
std::map<size_t, PlacementClass> classify_placements(const PlacementSequence& seq,
                                                     FractalKind kind, int stage);

// Ordered fragment of the placements matching the class filter.
std::vector<Placement> extract_subsequence(const PlacementSequence& seq, FractalKind kind,
                                           int stage, PlacementClass filter);

struct ReplayRecord {
  int tile = -1;
  Point target_pos;
  bool valid = false;      // tau-stable when executed
  bool in_bounds = false;  // inside stage m of the fractal
};

struct ReplayReport {
  std::vector<ReplayRecord> records;
  std::optional<Point> first_out_of_bounds;
  Assembly final_assembly;
  size_t executed = 0;  // placements that were valid and performed
};

// Replays `fragment` translated from source_anchor to target_anchor on top of
// the prefix of base_seq that ends with the placement at target_anchor.
// Placements are executed in fragment order when tau-stable; each record keeps
// the validity bit and whether the translated point lies inside stage m.
ReplayReport splice_replay(const AtamSystem& sys, const PlacementSequence& base_seq,
                           const std::vector<Placement>& fragment, Point source_anchor,
                           Point target_anchor, FractalKind kind, int bound_stage);

struct FsaVerdict {
  Assembly assembly;
  bool positive = false;
  std::string reason;
};

struct FsaOptions {
  size_t size_bound = 5;    // K
  size_t search_bound = 5;  // M
  size_t state_budget = 200000;
};

// Bounded proxy for finite self-assembly: enumerates producible assemblies of
// at most K tiles and checks that each stays inside `target` and admits an
// in-target extension of up to M further placements (or is terminal).
// Throws std::runtime_error if the state budget is exhausted.
std::vector<FsaVerdict> check_finite_self_assembly_bounded(const AtamSystem& sys,
                                                           const PointSet& target,
                                                           const FsaOptions& opt);

// Census of distinct bottleneck 6-tuples over stages [2, max_stage] of a run:
// how many stages realize each distinct (top,middle,bottom) x (left,right)
// tile tuple. Stages whose bottleneck points are not all tiled are skipped.
std::map<std::string, std::vector<int>> bottleneck_tiling_census(const PlacementSequence& seq,
                                                                 const TileSet& ts,
                                                                 FractalKind kind, int max_stage);

}  // namespace selfasm
