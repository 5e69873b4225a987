#include "selfasm/geom.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace selfasm {

PointSet::PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
  std::sort(pts_.begin(), pts_.end(), yx_less);
  pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool PointSet::contains(Point p) const {
  return std::binary_search(pts_.begin(), pts_.end(), p, yx_less);
}

PointSet PointSet::translated(Point d) const {
  std::vector<Point> out;
  out.reserve(pts_.size());
  for (Point p : pts_) out.push_back(p + d);
  PointSet r;
  r.pts_ = std::move(out);  // translation preserves (y,x) order
  return r;
}

Box PointSet::bounding_box() const {
  if (pts_.empty()) throw std::logic_error("bounding_box of empty PointSet");
  Box b{pts_.front(), pts_.front()};
  for (Point p : pts_) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

bool PointSet::is_subset_of(const PointSet& o) const {
  return std::includes(o.pts_.begin(), o.pts_.end(), pts_.begin(), pts_.end(), yx_less);
}

bool PointSet::connected() const {
  if (pts_.size() <= 1) return true;
  std::unordered_set<Point, PointHash> todo(pts_.begin(), pts_.end());
  std::queue<Point> q;
  q.push(pts_.front());
  todo.erase(pts_.front());
  size_t seen = 1;
  while (!q.empty()) {
    Point p = q.front();
    q.pop();
    for (Point d : {Point{1, 0}, Point{-1, 0}, Point{0, 1}, Point{0, -1}}) {
      auto it = todo.find(p + d);
      if (it != todo.end()) {
        q.push(*it);
        todo.erase(it);
        ++seen;
      }
    }
  }
  return seen == pts_.size();
}

PointSet PointSet::set_union(const PointSet& o) const {
  std::vector<Point> out;
  out.reserve(pts_.size() + o.pts_.size());
  std::set_union(pts_.begin(), pts_.end(), o.pts_.begin(), o.pts_.end(),
                 std::back_inserter(out), yx_less);
  PointSet r;
  r.pts_ = std::move(out);
  return r;
}

PointSet PointSet::set_minus(const PointSet& o) const {
  std::vector<Point> out;
  std::set_difference(pts_.begin(), pts_.end(), o.pts_.begin(), o.pts_.end(),
                      std::back_inserter(out), yx_less);
  PointSet r;
  r.pts_ = std::move(out);
  return r;
}

bool PointSet::intersects(const PointSet& o) const {
  const PointSet* small = this;
  const PointSet* big = &o;
  if (small->size() > big->size()) std::swap(small, big);
  for (Point p : small->pts_)
    if (big->contains(p)) return true;
  return false;
}

std::string PointSet::to_text() const {
  std::ostringstream os;
  for (Point p : pts_) os << p.x << ' ' << p.y << '\n';
  return os.str();
}

PointSet PointSet::from_text(const std::string& text) {
  std::istringstream is(text);
  std::vector<Point> pts;
  int32_t x, y;
  while (is >> x >> y) pts.push_back({x, y});
  return PointSet(std::move(pts));
}

std::string PointSet::to_json() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < pts_.size(); ++i) {
    if (i) os << ',';
    os << '[' << pts_[i].x << ',' << pts_[i].y << ']';
  }
  os << "]\n";
  return os.str();
}

PointGrid::PointGrid(const PointSet& ps) {
  if (ps.empty()) {
    box_ = {{0, 0}, {-1, -1}};
    return;
  }
  box_ = ps.bounding_box();
  w_ = box_.width();
  h_ = box_.height();
  mask_.assign(size_t(w_) * size_t(h_), 0);
  for (Point p : ps.points())
    mask_[size_t(p.y - box_.lo.y) * w_ + (p.x - box_.lo.x)] = 1;
}

bool PointGrid::contains(Point p) const {
  if (p.x < box_.lo.x || p.x > box_.hi.x || p.y < box_.lo.y || p.y > box_.hi.y) return false;
  return mask_[size_t(p.y - box_.lo.y) * w_ + (p.x - box_.lo.x)] != 0;
}

}  // namespace selfasm
