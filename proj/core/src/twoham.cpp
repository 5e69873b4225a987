#include "selfasm/twoham.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace selfasm {

namespace {

uint64_t fnv1a(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ull) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

int Supertile::tile_at(Point p) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), p, yx_less);
  if (it == cells_.end() || !(*it == p)) return -1;
  return tiles_[size_t(it - cells_.begin())];
}

Box Supertile::bounding_box() const {
  Box b{{0, 0}, {0, 0}};
  for (Point p : cells_) {
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

Assembly Supertile::to_assembly() const {
  Assembly a;
  for (size_t i = 0; i < cells_.size(); ++i) a.place(cells_[i], tiles_[i]);
  return a;
}

Supertile Supertile::canonicalize_unchecked(const Assembly& a) {
  Supertile s;
  if (a.empty()) return s;
  std::vector<std::pair<Point, int>> items(a.cells().begin(), a.cells().end());
  int32_t mx = items.front().first.x, my = items.front().first.y;
  for (const auto& [p, t] : items) {
    mx = std::min(mx, p.x);
    my = std::min(my, p.y);
  }
  for (auto& [p, t] : items) p = {p.x - mx, p.y - my};
  std::sort(items.begin(), items.end(),
            [](const auto& l, const auto& r) { return yx_less(l.first, r.first); });
  s.cells_.reserve(items.size());
  s.tiles_.reserve(items.size());
  uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& [p, t] : items) {
    s.cells_.push_back(p);
    s.tiles_.push_back(t);
    int32_t rec[3] = {p.x, p.y, t};
    h = fnv1a(rec, sizeof rec, h);
  }
  s.hash_ = h;
  return s;
}

bool operator<(const Supertile& a, const Supertile& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.hash() != b.hash()) return a.hash() < b.hash();
  for (size_t i = 0; i < a.cells_.size(); ++i) {
    if (!(a.cells_[i] == b.cells_[i])) return yx_less(a.cells_[i], b.cells_[i]);
    if (a.tiles_[i] != b.tiles_[i]) return a.tiles_[i] < b.tiles_[i];
  }
  return false;
}

Supertile canonicalize(const Assembly& a, const TileSet& ts, int tau) {
  if (a.empty()) throw std::invalid_argument("canonicalize: empty assembly");
  if (!is_tau_stable(a, ts, tau)) throw std::invalid_argument("canonicalize: assembly not tau-stable");
  return Supertile::canonicalize_unchecked(a);
}

namespace {

// Cross-boundary bond strength of s2 translated by d against s1; -1 on overlap.
int cross_bonds(const Supertile& s1, const Supertile& s2, Point d, const TileSet& ts) {
  int total = 0;
  const auto& cells = s2.cells();
  const auto& tiles = s2.tiles();
  for (size_t i = 0; i < cells.size(); ++i) {
    Point p = cells[i] + d;
    if (s1.tile_at(p) >= 0) return -1;
    for (Side s : {North, East, South, West}) {
      int u = s1.tile_at(p + side_delta(s));
      if (u >= 0) total += ts.bond(tiles[i], s, u);
    }
  }
  return total;
}

}  // namespace

std::vector<Supertile> combine(const Supertile& s1, const Supertile& s2, const TileSet& ts,
                               int tau) {
  // Candidate offsets come from aligning one matching glue pair; any union
  // with a bond admits at least one such pair, so this enumeration is
  // complete. All other relative positions are fruitless.
  std::vector<Point> candidates;
  const auto& c1 = s1.cells();
  const auto& t1 = s1.tiles();
  for (size_t i = 0; i < c1.size(); ++i) {
    for (Side s : {North, East, South, West}) {
      int g1 = ts.tile(t1[i]).glue[s];
      if (g1 == kNoGlue || ts.glue(g1).strength <= 0) continue;
      Point face = c1[i] + side_delta(s);
      Side os = opposite(s);
      const auto& c2 = s2.cells();
      const auto& t2 = s2.tiles();
      for (size_t j = 0; j < c2.size(); ++j) {
        if (ts.tile(t2[j]).glue[os] != g1) continue;
        candidates.push_back(face - c2[j]);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), yx_less);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<Supertile> out;
  for (Point d : candidates) {
    int bonds = cross_bonds(s1, s2, d, ts);
    if (bonds < tau) continue;
    Assembly u = s1.to_assembly();
    for (size_t j = 0; j < s2.cells().size(); ++j) u.place(s2.cells()[j] + d, s2.tiles()[j]);
    // Both halves are tau-stable and the seam is >= tau, so the union is
    // tau-stable: any cut either splits a half (>= tau there) or is the seam.
    out.push_back(Supertile::canonicalize_unchecked(u));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

size_t ProducibleCensus::total() const {
  size_t n = 0;
  for (const auto& [sz, v] : by_size) n += v.size();
  return n;
}

ProducibleCensus enumerate_producibles(const TileSet& ts, const CensusOptions& opt) {
  ProducibleCensus census;
  std::unordered_set<Supertile, SupertileHash> seen;
  std::vector<Supertile> all;  // processed + pending, index order = discovery
  std::vector<size_t> frontier;

  auto add = [&](const Supertile& s) {
    if (s.size() > opt.size_bound) return;
    if (seen.insert(s).second) {
      if (seen.size() > opt.member_budget) {
        census.truncated = true;
        seen.erase(s);
        return;
      }
      all.push_back(s);
      frontier.push_back(all.size() - 1);
    }
  };

  for (int t = 0; t < int(ts.tiles().size()); ++t) {
    Assembly a;
    a.place({0, 0}, t);
    add(Supertile::canonicalize_unchecked(a));
  }

  unsigned nthreads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());

  // Closure: repeatedly combine new members against everything found so far
  // (including themselves). Deterministic because results are canonicalized
  // and deduplicated, and the final census is sorted.
  size_t processed = 0;
  while (processed < all.size() && !census.truncated) {
    size_t lo = processed, hi = all.size();
    processed = hi;
    std::vector<std::vector<Supertile>> found(nthreads);
    std::atomic<size_t> next{lo};
    auto worker = [&](unsigned wid) {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= hi) break;
        for (size_t j = 0; j <= i; ++j) {
          if (all[i].size() + all[j].size() > opt.size_bound) continue;
          for (Supertile& r : combine(all[i], all[j], ts, ts.temperature))
            found[wid].push_back(std::move(r));
        }
      }
    };
    if (nthreads == 1 || hi - lo < 2) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(worker, w);
      for (auto& th : pool) th.join();
    }
    std::vector<Supertile> merged;
    for (auto& v : found)
      for (auto& s : v) merged.push_back(std::move(s));
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    for (const Supertile& s : merged) add(s);
  }

  for (const Supertile& s : all) census.by_size[s.size()].push_back(s);
  for (auto& [sz, v] : census.by_size) std::sort(v.begin(), v.end());
  return census;
}

std::string MergeScript::to_text() const {
  std::ostringstream os;
  os << "mergescript v1\n";
  os << "steps " << steps.size() << '\n';
  for (size_t i = 0; i < steps.size(); ++i) {
    const MergeStep& s = steps[i];
    os << i << ' ' << s.lhs << ' ' << s.rhs << ' ' << s.dx << ' ' << s.dy << '\n';
  }
  return os.str();
}

MergeScript MergeScript::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  if (!(is >> word >> word) || word != "v1") throw std::invalid_argument("mergescript: bad header");
  size_t n;
  if (!(is >> word >> n) || word != "steps") throw std::invalid_argument("mergescript: bad step count");
  MergeScript out;
  out.steps.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    size_t idx;
    MergeStep s;
    if (!(is >> idx >> s.lhs >> s.rhs >> s.dx >> s.dy))
      throw std::invalid_argument("mergescript: truncated");
    if (idx != i) throw std::invalid_argument("mergescript: step indices must be dense");
    out.steps.push_back(std::move(s));
  }
  return out;
}

Supertile resolve_ref(const TileSet& ts, const std::string& ref,
                      const std::vector<Supertile>& step_results) {
  if (ref.size() > 2 && ref[0] == 't' && ref[1] == ':') {
    std::string name = ref.substr(2);
    int id = ts.tile_id(name);
    if (id < 0) throw std::runtime_error("mergescript: unknown tile '" + name + "'");
    Assembly a;
    a.place({0, 0}, id);
    return Supertile::canonicalize_unchecked(a);
  }
  if (ref.size() > 2 && ref[0] == 's' && ref[1] == ':') {
    size_t idx = std::stoul(ref.substr(2));
    if (idx >= step_results.size())
      throw std::runtime_error("mergescript: forward reference '" + ref + "'");
    return step_results[idx];
  }
  throw std::runtime_error("mergescript: malformed reference '" + ref + "'");
}

Supertile run_script(const TileSet& ts, const MergeScript& script, int tau) {
  if (script.steps.empty()) throw std::runtime_error("mergescript: empty script");
  std::vector<Supertile> results;
  results.reserve(script.steps.size());
  for (size_t i = 0; i < script.steps.size(); ++i) {
    const MergeStep& st = script.steps[i];
    Supertile lhs = resolve_ref(ts, st.lhs, results);
    Supertile rhs = resolve_ref(ts, st.rhs, results);
    Point d{st.dx, st.dy};
    // Validate the placement directly (the offset is prescribed).
    Assembly u = lhs.to_assembly();
    int bonds = 0;
    for (size_t j = 0; j < rhs.cells().size(); ++j) {
      Point p = rhs.cells()[j] + d;
      if (lhs.tile_at(p) >= 0)
        throw std::runtime_error("mergescript: overlap at step " + std::to_string(i));
      for (Side s : {North, East, South, West}) {
        int v = lhs.tile_at(p + side_delta(s));
        if (v >= 0) bonds += ts.bond(rhs.tiles()[j], s, v);
      }
      u.place(p, rhs.tiles()[j]);
    }
    if (bonds < tau)
      throw std::runtime_error("mergescript: step " + std::to_string(i) +
                               " binds with strength " + std::to_string(bonds) + " < tau");
    results.push_back(Supertile::canonicalize_unchecked(u));
  }
  return results.back();
}

bool is_terminal_bounded(const Supertile& s, const ProducibleCensus& census, const TileSet& ts,
                         int tau) {
  for (const auto& [sz, members] : census.by_size)
    for (const Supertile& m : members)
      if (!combine(s, m, ts, tau).empty()) return false;
  return true;
}

}  // namespace selfasm
