#include "selfasm/atam.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace selfasm {

void AtamSystem::validate() const {
  if (seed.empty()) throw std::invalid_argument("atam: empty seed");
  if (seed.size() > 1 && !allow_multitile_seed)
    throw std::invalid_argument("atam: multi-tile seed requires allow_multitile_seed");
  if (!is_tau_stable(seed, tiles, temperature))
    throw std::invalid_argument("atam: seed is not tau-stable");
}

Assembly PlacementSequence::replay(size_t prefix) const {
  Assembly a = seed;
  for (size_t i = 0; i < prefix && i < steps.size(); ++i) a.place(steps[i].pos, steps[i].tile);
  return a;
}

std::string PlacementSequence::to_text(const TileSet& ts) const {
  std::ostringstream os;
  os << "placements v1\n";
  os << "seed " << seed.size() << '\n';
  std::vector<std::pair<Point, int>> s(seed.cells().begin(), seed.cells().end());
  std::sort(s.begin(), s.end(), [](auto& l, auto& r) { return yx_less(l.first, r.first); });
  for (auto& [p, t] : s) os << ts.tile(t).name << ' ' << p.x << ' ' << p.y << '\n';
  os << "steps " << steps.size() << '\n';
  for (size_t i = 0; i < steps.size(); ++i) {
    const Placement& pl = steps[i];
    os << i << ' ' << ts.tile(pl.tile).name << ' ' << pl.pos.x << ' ' << pl.pos.y << ' ';
    if (pl.parents.empty()) {
      os << '-';
    } else {
      for (size_t j = 0; j < pl.parents.size(); ++j) {
        if (j) os << ',';
        os << pl.parents[j];
      }
    }
    os << '\n';
  }
  return os.str();
}

PlacementSequence PlacementSequence::from_text(const TileSet& ts, const std::string& text) {
  std::istringstream is(text);
  std::string word;
  if (!(is >> word >> word) || word != "v1") throw std::invalid_argument("placements: bad header");
  size_t n;
  if (!(is >> word >> n) || word != "seed") throw std::invalid_argument("placements: bad seed");
  PlacementSequence out;
  for (size_t i = 0; i < n; ++i) {
    std::string name;
    int32_t x, y;
    if (!(is >> name >> x >> y)) throw std::invalid_argument("placements: truncated seed");
    int id = ts.tile_id(name);
    if (id < 0) throw std::invalid_argument("placements: unknown tile '" + name + "'");
    out.seed.place({x, y}, id);
  }
  if (!(is >> word >> n) || word != "steps") throw std::invalid_argument("placements: bad steps");
  for (size_t i = 0; i < n; ++i) {
    size_t idx;
    std::string name, parents;
    int32_t x, y;
    if (!(is >> idx >> name >> x >> y >> parents))
      throw std::invalid_argument("placements: truncated step");
    Placement pl;
    pl.tile = ts.tile_id(name);
    if (pl.tile < 0) throw std::invalid_argument("placements: unknown tile '" + name + "'");
    pl.pos = {x, y};
    if (parents != "-") {
      std::istringstream ps(parents);
      std::string tok;
      while (std::getline(ps, tok, ',')) pl.parents.push_back(std::stoi(tok));
    }
    out.steps.push_back(std::move(pl));
  }
  return out;
}

std::vector<Attachment> frontier(const Assembly& a, const AtamSystem& sys) {
  // Candidate positions: unoccupied neighbors of occupied cells.
  std::unordered_set<Point, PointHash> cand;
  for (const auto& [p, t] : a.cells())
    for (Side s : {North, East, South, West}) {
      Point q = p + side_delta(s);
      if (!a.occupied(q)) cand.insert(q);
    }
  std::vector<Attachment> out;
  for (Point q : cand)
    for (int t = 0; t < int(sys.tiles.tiles().size()); ++t)
      if (attachment_strength(a, sys.tiles, t, q) >= sys.temperature) out.push_back({t, q});
  std::sort(out.begin(), out.end(), [&](const Attachment& l, const Attachment& r) {
    if (!(l.pos == r.pos)) return yx_less(l.pos, r.pos);
    return sys.tiles.tile(l.tile).name < sys.tiles.tile(r.tile).name;
  });
  return out;
}

namespace {

std::vector<int> parents_of(const Assembly& before, const TileSet& ts, int tile, Point p,
                            const std::unordered_map<Point, int, PointHash>& step_of) {
  std::vector<int> parents;
  for (Side s : {North, East, South, West}) {
    Point q = p + side_delta(s);
    int u = before.tile_at(q);
    if (u < 0) continue;
    if (ts.bond(tile, s, u) > 0) {
      auto it = step_of.find(q);
      parents.push_back(it == step_of.end() ? -1 : it->second);
    }
  }
  std::sort(parents.begin(), parents.end());
  parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
  return parents;
}

}  // namespace

PlacementSequence run_policy(const AtamSystem& sys, const Policy& policy, size_t step_limit) {
  sys.validate();
  PlacementSequence seq;
  seq.seed = sys.seed;
  Assembly a = sys.seed;
  std::unordered_map<Point, int, PointHash> step_of;  // point -> step index
  std::mt19937_64 rng(policy.seed);

  for (size_t step = 0; step < step_limit; ++step) {
    std::vector<Attachment> fr = frontier(a, sys);
    if (fr.empty()) {
      seq.reached_terminal = true;
      break;
    }
    size_t pick = 0;
    if (policy.kind == PolicyKind::Random) {
      pick = std::uniform_int_distribution<size_t>(0, fr.size() - 1)(rng);
    } else if (policy.kind == PolicyKind::SmallestStageFirst) {
      // Stage number ascending, then (y,x), then tile name. Points never in
      // the fractal sort last.
      auto stage_key = [&](Point p) {
        auto s = smallest_stage_of(p, policy.fractal);
        return s ? *s : INT32_MAX;
      };
      size_t best = 0;
      int bs = stage_key(fr[0].pos);
      for (size_t i = 1; i < fr.size(); ++i) {
        int si = stage_key(fr[i].pos);
        if (si < bs) {
          best = i;
          bs = si;
        }
      }
      pick = best;  // fr is already (y,x)/name sorted, so first minimum wins
    }
    // Lexicographic: fr[0] (already sorted).
    const Attachment& at = fr[pick];
    Placement pl;
    pl.tile = at.tile;
    pl.pos = at.pos;
    pl.parents = parents_of(a, sys.tiles, at.tile, at.pos, step_of);
    a.place(at.pos, at.tile);
    step_of[at.pos] = int(seq.steps.size());
    seq.steps.push_back(std::move(pl));
  }
  if (!seq.reached_terminal && frontier(a, sys).empty()) seq.reached_terminal = true;
  return seq;
}

std::vector<int> ancestors(const PlacementSequence& seq, size_t k) {
  if (k >= seq.steps.size()) throw std::out_of_range("ancestors: step index out of range");
  std::vector<uint8_t> mark(seq.steps.size(), 0);
  std::vector<int> stack;
  for (int p : seq.steps[k].parents)
    if (p >= 0 && !mark[size_t(p)]) {
      mark[size_t(p)] = 1;
      stack.push_back(p);
    }
  std::vector<int> out;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    out.push_back(i);
    for (int p : seq.steps[size_t(i)].parents)
      if (p >= 0 && !mark[size_t(p)]) {
        mark[size_t(p)] = 1;
        stack.push_back(p);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Left-center of stage i: points of the stage strictly east of the left
// bottleneck column and strictly west of the center column.
bool in_left_center(Point p, const BottleneckSet& bn, Point center) {
  return p.x > bn.at(BottleneckRole::TopLeft).x && p.x < center.x;
}

}  // namespace

std::map<size_t, PlacementClass> classify_placements(const PlacementSequence& seq,
                                                     FractalKind kind, int stage) {
  BottleneckSet bn = bottleneck_points(kind, stage);
  Point center = center_of_stage(kind, stage);

  // Locate the steps that placed the three left bottleneck tiles.
  int top_i = -1, mid_i = -1, bot_i = -1;
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    Point p = seq.steps[i].pos;
    if (p == bn.at(BottleneckRole::TopLeft)) top_i = int(i);
    if (p == bn.at(BottleneckRole::MiddleLeft)) mid_i = int(i);
    if (p == bn.at(BottleneckRole::BottomLeft)) bot_i = int(i);
  }
  if (top_i < 0 || mid_i < 0 || bot_i < 0)
    throw std::invalid_argument("classify_placements: left bottleneck tiles never placed");

  std::map<size_t, PlacementClass> out;
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    if (!in_left_center(seq.steps[i].pos, bn, center)) continue;
    std::vector<int> anc = ancestors(seq, i);
    auto has = [&](int idx) { return std::binary_search(anc.begin(), anc.end(), idx); };
    int hits = int(has(top_i)) + int(has(mid_i)) + int(has(bot_i));
    PlacementClass cls;
    if (hits >= 2)
      cls = PlacementClass::Mixed;
    else if (has(top_i))
      cls = PlacementClass::TopPlaced;
    else if (has(mid_i))
      cls = PlacementClass::MiddlePlaced;
    else if (has(bot_i))
      cls = PlacementClass::BottomPlaced;
    else
      cls = PlacementClass::PreBottleneck;
    out.emplace(i, cls);
  }
  return out;
}

std::vector<Placement> extract_subsequence(const PlacementSequence& seq, FractalKind kind,
                                           int stage, PlacementClass filter) {
  std::map<size_t, PlacementClass> classes = classify_placements(seq, kind, stage);
  std::vector<Placement> out;
  for (const auto& [i, cls] : classes)
    if (cls == filter) out.push_back(seq.steps[i]);
  return out;
}

ReplayReport splice_replay(const AtamSystem& sys, const PlacementSequence& base_seq,
                           const std::vector<Placement>& fragment, Point source_anchor,
                           Point target_anchor, FractalKind kind, int bound_stage) {
  // Prefix of the base run up to and including the target anchor placement.
  size_t anchor_step = SIZE_MAX;
  for (size_t i = 0; i < base_seq.steps.size(); ++i)
    if (base_seq.steps[i].pos == target_anchor) {
      anchor_step = i;
      break;
    }
  if (anchor_step == SIZE_MAX && !base_seq.seed.occupied(target_anchor))
    throw std::invalid_argument("splice_replay: base sequence never places the target anchor");
  Assembly a = anchor_step == SIZE_MAX ? base_seq.seed : base_seq.replay(anchor_step + 1);

  PointGrid bounds(stage_points(kind, bound_stage));
  Point delta = target_anchor - source_anchor;

  ReplayReport rep;
  for (const Placement& pl : fragment) {
    ReplayRecord rec;
    rec.tile = pl.tile;
    rec.target_pos = pl.pos + delta;
    rec.in_bounds = bounds.contains(rec.target_pos);
    rec.valid = !a.occupied(rec.target_pos) &&
                attachment_strength(a, sys.tiles, pl.tile, rec.target_pos) >= sys.temperature;
    if (rec.valid) {
      a.place(rec.target_pos, pl.tile);
      ++rep.executed;
    }
    if (!rec.in_bounds && rec.valid && !rep.first_out_of_bounds)
      rep.first_out_of_bounds = rec.target_pos;
    rep.records.push_back(rec);
  }
  rep.final_assembly = std::move(a);
  return rep;
}

namespace {

std::string canonical_key(const Assembly& a) {
  std::vector<std::pair<Point, int>> items(a.cells().begin(), a.cells().end());
  std::sort(items.begin(), items.end(),
            [](auto& l, auto& r) { return yx_less(l.first, r.first); });
  std::ostringstream os;
  for (auto& [p, t] : items) os << p.x << ',' << p.y << ':' << t << ';';
  return os.str();
}

// Depth-bounded search for an in-target extension.
bool has_in_target_extension(const AtamSystem& sys, Assembly& a, const PointGrid& target,
                             size_t depth) {
  if (depth == 0) return true;
  std::vector<Attachment> fr = frontier(a, sys);
  if (fr.empty()) return true;  // terminal: nothing more can attach
  for (const Attachment& at : fr) {
    if (!target.contains(at.pos)) continue;
    a.place(at.pos, at.tile);
    bool ok = has_in_target_extension(sys, a, target, depth - 1);
    a.erase(at.pos);
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<FsaVerdict> check_finite_self_assembly_bounded(const AtamSystem& sys,
                                                           const PointSet& target,
                                                           const FsaOptions& opt) {
  sys.validate();
  PointGrid tgt(target);
  std::vector<FsaVerdict> out;
  std::unordered_set<std::string> seen;
  std::deque<Assembly> work;
  work.push_back(sys.seed);
  seen.insert(canonical_key(sys.seed));

  while (!work.empty()) {
    if (seen.size() > opt.state_budget)
      throw std::runtime_error("finite-self-assembly search: state budget exhausted");
    Assembly a = std::move(work.front());
    work.pop_front();

    FsaVerdict v;
    v.assembly = a;
    bool inside = true;
    for (const auto& [p, t] : a.cells())
      if (!tgt.contains(p)) {
        inside = false;
        break;
      }
    if (!inside) {
      v.positive = false;
      v.reason = "assembly leaves the target shape";
    } else {
      Assembly probe = a;
      v.positive = has_in_target_extension(sys, probe, tgt, opt.search_bound);
      v.reason = v.positive ? "in-target extension found" : "no in-target extension";
    }
    out.push_back(std::move(v));

    if (a.size() < opt.size_bound) {
      for (const Attachment& at : frontier(a, sys)) {
        Assembly b = a;
        b.place(at.pos, at.tile);
        std::string key = canonical_key(b);
        if (seen.insert(key).second) work.push_back(std::move(b));
      }
    }
  }
  return out;
}

std::map<std::string, std::vector<int>> bottleneck_tiling_census(const PlacementSequence& seq,
                                                                 const TileSet& ts,
                                                                 FractalKind kind, int max_stage) {
  Assembly a = seq.result();
  std::map<std::string, std::vector<int>> census;
  for (int i = 2; i <= max_stage; ++i) {
    BottleneckSet bn = bottleneck_points(kind, i);
    std::string key;
    bool complete = true;
    for (Point p : bn.points) {
      int t = a.tile_at(p);
      if (t < 0) {
        complete = false;
        break;
      }
      key += ts.tile(t).name;
      key += '|';
    }
    if (complete) census[key].push_back(i);
  }
  return census;
}

}  // namespace selfasm
