#include "selfasm/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace selfasm {

namespace {

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Point symbol_offset(char c, FractalKind kind) {
  switch (c) {
    case 'a': return {0, 2};
    case 'b': return {0, 1};
    case 'c': return {0, 0};
    case 'd': return kind == FractalKind::U ? Point{1, 0} : Point{1, 1};
    case 'e': return {2, 2};
    case 'f': return {2, 1};
    case 'g': return {2, 0};
    default:
      throw std::invalid_argument(std::string("address symbol not in {a..g}: '") + c + "'");
  }
}

}  // namespace

Generator Generator::make(PointSet pts) {
  if (pts.empty()) throw std::invalid_argument("generator: empty point set");
  if (!pts.contains({0, 0})) throw std::invalid_argument("generator: missing origin (0,0)");
  Box b = pts.bounding_box();
  if (b.lo.x < 0 || b.lo.y < 0) throw std::invalid_argument("generator: negative coordinates");
  int32_t w = b.hi.x + 1, h = b.hi.y + 1;
  if (w <= 1 || h <= 1) throw std::invalid_argument("generator: width and height must exceed 1");
  if (pts.size() == size_t(w) * size_t(h))
    throw std::invalid_argument("generator: filled rectangle is not a proper subset");
  if (!pts.connected()) throw std::invalid_argument("generator: not connected as a grid graph");
  return Generator{std::move(pts), w, h};
}

const Generator& Generator::u() {
  static const Generator g = Generator::make(PointSet(
      {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}, {2, 1}, {2, 2}}));
  return g;
}

const Generator& Generator::h() {
  static const Generator g = Generator::make(PointSet(
      {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 0}, {2, 1}, {2, 2}}));
  return g;
}

const Generator& Generator::sierpinski() {
  static const Generator g = Generator::make(PointSet({{0, 0}, {1, 0}, {0, 1}}));
  return g;
}

FractalStage stage_points(const Generator& g, int n) {
  if (n < 1) throw std::invalid_argument("stage_points: n must be >= 1");
  std::vector<Point> cur(g.points.points());
  for (int i = 1; i < n; ++i) {
    int64_t sx = ipow(g.width, i), sy = ipow(g.height, i);
    std::vector<Point> next;
    next.reserve(cur.size() * g.points.size());
    for (Point gp : g.points.points()) {
      Point off{int32_t(sx * gp.x), int32_t(sy * gp.y)};
      for (Point p : cur) next.push_back(p + off);
    }
    cur = std::move(next);
  }
  return FractalStage{g, n, PointSet(std::move(cur))};
}

PointSet stage_points(FractalKind kind, int n) {
  return stage_points(kind == FractalKind::U ? Generator::u() : Generator::h(), n).points;
}

Point address_to_point(const std::string& address, FractalKind kind) {
  if (address.empty()) throw std::invalid_argument("address: empty string");
  Point p{0, 0};
  int64_t scale = 1;
  for (char c : address) {
    Point o = symbol_offset(c, kind);
    p.x += int32_t(scale * o.x);
    p.y += int32_t(scale * o.y);
    scale *= 3;
  }
  return p;
}

std::string point_to_address(Point p, int n, FractalKind kind) {
  if (n < 1) throw std::invalid_argument("point_to_address: n must be >= 1");
  static const char symbols[] = "abcdefg";
  std::string out;
  out.reserve(size_t(n));
  Point rest = p;
  for (int k = 0; k < n; ++k) {
    int32_t dx = rest.x % 3, dy = rest.y % 3;
    char found = 0;
    for (char c : symbols) {
      if (!c) break;
      Point o = symbol_offset(c, kind);
      if (o.x == dx && o.y == dy) {
        found = c;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("point_to_address: point not in stage " + std::to_string(n));
    out.push_back(found);
    rest.x /= 3;
    rest.y /= 3;
  }
  if (rest.x != 0 || rest.y != 0)
    throw std::invalid_argument("point_to_address: point outside stage " + std::to_string(n));
  return out;
}

std::optional<int> smallest_stage_of(Point p, FractalKind kind, int max_stage) {
  if (p.x < 0 || p.y < 0) return std::nullopt;
  for (int n = 1; n <= max_stage; ++n) {
    int64_t extent = ipow(3, n);
    if (p.x >= extent || p.y >= extent) continue;
    try {
      (void)point_to_address(p, n, kind);
      return n;
    } catch (const std::invalid_argument&) {
      return std::nullopt;  // digits invalid at the containing scale: never in the fractal
    }
  }
  return std::nullopt;
}

PointSet BottleneckSet::as_set() const {
  return PointSet(std::vector<Point>(points.begin(), points.end()));
}

BottleneckSet bottleneck_points(FractalKind kind, int i) {
  if (i < 2) throw std::invalid_argument("bottleneck_points: stage must be >= 2");
  int64_t base_x = ipow(3, i - 1) + (ipow(3, i - 2) - 1) / 2;
  int64_t base_y = kind == FractalKind::H ? base_x : 0;
  int64_t s = ipow(3, i - 2);
  auto at = [&](int bx, int by) {
    return Point{int32_t(base_x + s * bx), int32_t(base_y + s * by)};
  };
  BottleneckSet out;
  out.kind = kind;
  out.stage = i;
  out.points[size_t(BottleneckRole::TopLeft)] = at(0, 2);
  out.points[size_t(BottleneckRole::MiddleLeft)] = at(0, 1);
  out.points[size_t(BottleneckRole::BottomLeft)] = at(0, 0);
  out.points[size_t(BottleneckRole::TopRight)] = at(2, 2);
  out.points[size_t(BottleneckRole::MiddleRight)] = at(2, 1);
  out.points[size_t(BottleneckRole::BottomRight)] = at(2, 0);
  return out;
}

Point center_of_stage(FractalKind kind, int i) {
  if (i < 1) throw std::invalid_argument("center_of_stage: stage must be >= 1");
  // Address d^i: the nested center position.
  return address_to_point(std::string(size_t(i), 'd'), kind);
}

PointSet ladder_shape(int n) {
  if (n < 2) throw std::invalid_argument("ladder_shape: n must be >= 2");
  PointSet un = stage_points(FractalKind::U, n);
  int64_t step = ipow(3, n);
  int32_t east_x = int32_t(step) - 1;
  std::vector<Point> out;
  out.reserve(un.size() * 3);
  for (int m = 0; m < 3; ++m) {
    int32_t dy = int32_t(step) * m;
    for (Point p : un.points()) {
      Point q{p.x, p.y + dy};
      if (q.x == 0 || q.x == east_x || q.y == 0) continue;
      out.push_back(q);
    }
  }
  return PointSet(std::move(out));
}

namespace {

// One alternative, e.g. "[defg][abc][ab]" -> list of character classes.
std::vector<std::string> parse_alternative(const std::string& alt) {
  std::vector<std::string> classes;
  size_t i = 0;
  while (i < alt.size()) {
    if (alt[i] == '[') {
      size_t j = alt.find(']', i);
      if (j == std::string::npos) throw std::invalid_argument("pattern: unterminated '['");
      if (j == i + 1) throw std::invalid_argument("pattern: empty character class");
      classes.push_back(alt.substr(i + 1, j - i - 1));
      i = j + 1;
    } else if (alt[i] == ']') {
      throw std::invalid_argument("pattern: stray ']'");
    } else {
      classes.push_back(alt.substr(i, 1));
      ++i;
    }
  }
  return classes;
}

}  // namespace

PointSet address_pattern_points(const std::string& pattern, int n, FractalKind kind) {
  if (n < 1) throw std::invalid_argument("address_pattern_points: n must be >= 1");
  std::vector<Point> out;
  size_t start = 0;
  while (start <= pattern.size()) {
    size_t bar = pattern.find('|', start);
    std::string alt = pattern.substr(start, bar == std::string::npos ? bar : bar - start);
    // strip blanks around alternatives
    while (!alt.empty() && alt.front() == ' ') alt.erase(alt.begin());
    while (!alt.empty() && alt.back() == ' ') alt.pop_back();
    if (!alt.empty()) {
      std::vector<std::string> classes = parse_alternative(alt);
      if (int(classes.size()) != n)
        throw std::invalid_argument("pattern alternative '" + alt + "' has length " +
                                    std::to_string(classes.size()) + ", expected " +
                                    std::to_string(n));
      std::string word(size_t(n), 'a');
      std::vector<size_t> idx(size_t(n), 0);
      while (true) {
        for (int k = 0; k < n; ++k) word[size_t(k)] = classes[size_t(k)][idx[size_t(k)]];
        out.push_back(address_to_point(word, kind));
        int k = 0;
        for (; k < n; ++k) {
          if (++idx[size_t(k)] < classes[size_t(k)].size()) break;
          idx[size_t(k)] = 0;
        }
        if (k == n) break;
      }
    }
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return PointSet(std::move(out));
}

}  // namespace selfasm
