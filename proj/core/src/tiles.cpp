#include "selfasm/tiles.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace selfasm {

int TileSet::add_glue(const std::string& label, int strength) {
  if (label.empty()) throw std::invalid_argument("glue label must be non-empty");
  if (strength < 0) throw std::invalid_argument("glue strength must be non-negative");
  auto it = glue_by_label_.find(label);
  if (it != glue_by_label_.end()) {
    if (glues_[size_t(it->second)].strength != strength)
      throw std::invalid_argument("glue '" + label + "' re-declared with different strength");
    return it->second;
  }
  glues_.push_back({label, strength});
  int id = int(glues_.size()) - 1;
  glue_by_label_.emplace(label, id);
  return id;
}

int TileSet::glue_id(const std::string& label) const {
  auto it = glue_by_label_.find(label);
  return it == glue_by_label_.end() ? -1 : it->second;
}

int TileSet::add_tile(const std::string& name,
                      const std::optional<std::string>& north,
                      const std::optional<std::string>& east,
                      const std::optional<std::string>& south,
                      const std::optional<std::string>& west) {
  if (name.empty()) throw std::invalid_argument("tile name must be non-empty");
  if (tile_by_name_.count(name)) throw std::invalid_argument("duplicate tile name '" + name + "'");
  auto resolve = [&](const std::optional<std::string>& lbl) {
    if (!lbl) return kNoGlue;
    int id = glue_id(*lbl);
    if (id < 0) throw std::invalid_argument("tile '" + name + "' references unknown glue '" + *lbl + "'");
    return id;
  };
  TileType t;
  t.name = name;
  t.glue[North] = resolve(north);
  t.glue[East] = resolve(east);
  t.glue[South] = resolve(south);
  t.glue[West] = resolve(west);
  tiles_.push_back(std::move(t));
  int id = int(tiles_.size()) - 1;
  tile_by_name_.emplace(name, id);
  return id;
}

int TileSet::tile_id(const std::string& name) const {
  auto it = tile_by_name_.find(name);
  return it == tile_by_name_.end() ? -1 : it->second;
}

int TileSet::bond(int tile_a, Side s, int tile_b) const {
  int ga = tiles_[size_t(tile_a)].glue[s];
  int gb = tiles_[size_t(tile_b)].glue[opposite(s)];
  if (ga == kNoGlue || gb == kNoGlue || ga != gb) return 0;
  return glues_[size_t(ga)].strength;
}

std::string TileSet::to_text() const {
  std::ostringstream os;
  os << "tileset v1\n";
  os << "temperature " << temperature << '\n';
  os << "glues " << glues_.size() << '\n';
  for (const Glue& g : glues_) os << g.label << ' ' << g.strength << '\n';
  os << "tiles " << tiles_.size() << '\n';
  for (const TileType& t : tiles_) {
    os << t.name;
    for (int s = 0; s < 4; ++s) {
      os << ' ';
      if (t.glue[size_t(s)] == kNoGlue)
        os << '-';
      else
        os << glues_[size_t(t.glue[size_t(s)])].label;
    }
    os << '\n';
  }
  return os.str();
}

TileSet TileSet::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  int version;
  if (!(is >> word >> word) || word != "v1")
    throw std::invalid_argument("tileset: bad header");
  TileSet ts;
  size_t n;
  if (!(is >> word >> ts.temperature) ) throw std::invalid_argument("tileset: bad temperature");
  if (ts.temperature < 1) throw std::invalid_argument("tileset: temperature must be >= 1");
  (void)version;
  if (!(is >> word >> n) || word != "glues") throw std::invalid_argument("tileset: bad glue count");
  for (size_t i = 0; i < n; ++i) {
    std::string label;
    int strength;
    if (!(is >> label >> strength)) throw std::invalid_argument("tileset: truncated glue table");
    ts.add_glue(label, strength);
  }
  if (!(is >> word >> n) || word != "tiles") throw std::invalid_argument("tileset: bad tile count");
  for (size_t i = 0; i < n; ++i) {
    std::string name;
    std::array<std::string, 4> g;
    if (!(is >> name >> g[0] >> g[1] >> g[2] >> g[3]))
      throw std::invalid_argument("tileset: truncated tile list");
    auto opt = [](const std::string& s) -> std::optional<std::string> {
      if (s == "-") return std::nullopt;
      return s;
    };
    ts.add_tile(name, opt(g[0]), opt(g[1]), opt(g[2]), opt(g[3]));
  }
  return ts;
}

int Assembly::tile_at(Point p) const {
  auto it = cells_.find(p);
  return it == cells_.end() ? -1 : it->second;
}

void Assembly::place(Point p, int tile) {
  if (!cells_.emplace(p, tile).second)
    throw std::invalid_argument("assembly: point already occupied");
}

void Assembly::erase(Point p) { cells_.erase(p); }

PointSet Assembly::domain() const {
  std::vector<Point> pts;
  pts.reserve(cells_.size());
  for (const auto& [p, t] : cells_) pts.push_back(p);
  return PointSet(std::move(pts));
}

bool operator==(const Assembly& a, const Assembly& b) { return a.cells_ == b.cells_; }

std::vector<BindingEdge> binding_graph(const Assembly& a, const TileSet& ts) {
  std::vector<BindingEdge> edges;
  for (const auto& [p, t] : a.cells()) {
    for (Side s : {North, East}) {  // each undirected edge once
      Point q = p + side_delta(s);
      int u = a.tile_at(q);
      if (u < 0) continue;
      int b = ts.bond(t, s, u);
      if (b > 0) edges.push_back({p, q, b});
    }
  }
  return edges;
}

int64_t min_cut_strength(const Assembly& a, const TileSet& ts) {
  size_t n = a.size();
  if (n <= 1) return kNoCut;

  std::vector<Point> verts;
  verts.reserve(n);
  for (const auto& [p, t] : a.cells()) verts.push_back(p);
  std::sort(verts.begin(), verts.end(), yx_less);
  std::unordered_map<Point, size_t, PointHash> index;
  for (size_t i = 0; i < n; ++i) index.emplace(verts[i], i);

  std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, 0));
  bool any_edge = false;
  for (const BindingEdge& e : binding_graph(a, ts)) {
    size_t i = index.at(e.a), j = index.at(e.b);
    w[i][j] += e.strength;
    w[j][i] += e.strength;
    any_edge = true;
  }
  if (!any_edge) return 0;

  // Connectivity: disconnected binding graphs have a zero cut.
  {
    std::vector<uint8_t> seen(n, 0);
    std::vector<size_t> stack{0};
    seen[0] = 1;
    size_t cnt = 1;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      for (size_t u = 0; u < n; ++u)
        if (w[v][u] > 0 && !seen[u]) {
          seen[u] = 1;
          ++cnt;
          stack.push_back(u);
        }
    }
    if (cnt != n) return 0;
  }

  // Stoer-Wagner.
  std::vector<size_t> active(n);
  for (size_t i = 0; i < n; ++i) active[i] = i;
  int64_t best = kNoCut;
  while (active.size() > 1) {
    std::vector<int64_t> weight(n, 0);
    std::vector<uint8_t> added(n, 0);
    size_t prev = 0, last = 0;
    for (size_t it = 0; it < active.size(); ++it) {
      size_t sel = SIZE_MAX;
      for (size_t v : active)
        if (!added[v] && (sel == SIZE_MAX || weight[v] > weight[sel])) sel = v;
      added[sel] = 1;
      if (it + 1 == active.size()) {
        best = std::min(best, weight[sel]);
        prev = last;
        last = sel;
        // merge last into prev
        for (size_t v : active) {
          if (v == last || v == prev) continue;
          w[prev][v] += w[last][v];
          w[v][prev] = w[prev][v];
        }
        active.erase(std::find(active.begin(), active.end(), last));
      } else {
        last = sel;
        for (size_t v : active)
          if (!added[v]) weight[v] += w[sel][v];
      }
    }
  }
  return best;
}

bool is_tau_stable(const Assembly& a, const TileSet& ts, int tau) {
  if (a.empty()) throw std::invalid_argument("is_tau_stable: empty assembly");
  int64_t cut = min_cut_strength(a, ts);
  return cut >= tau;
}

int attachment_strength(const Assembly& a, const TileSet& ts, int tile, Point p) {
  if (a.occupied(p)) throw std::invalid_argument("attachment_strength: point occupied");
  int total = 0;
  for (Side s : {North, East, South, West}) {
    int u = a.tile_at(p + side_delta(s));
    if (u >= 0) total += ts.bond(tile, s, u);
  }
  return total;
}

}  // namespace selfasm
