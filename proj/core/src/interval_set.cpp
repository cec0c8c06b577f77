#include "oscot/interval_set.hpp"

#include <algorithm>

namespace oscot {

namespace {

// Successor of an end bound in the generalized order; used to decide whether
// two intervals touch: end {x,-1} is followed by start {x,0}, end {x,0} by
// start {x,+1}.
Bound succ_of_end(const Bound& e) { return Bound{e.x, e.eps + 1}; }

bool touches_or_overlaps(const Interval& a, const Interval& b) {
  // assumes a.start <= b.start
  Bound after = succ_of_end(a.end_bound());
  return b.start_bound() <= after;
}

}  // namespace

void IntervalSet::insert(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    if (a.start_bound() == b.start_bound()) return a.end_bound() < b.end_bound();
    return a.start_bound() < b.start_bound();
  });
  parts_.clear();
  for (auto& iv : parts) {
    if (!parts_.empty() && touches_or_overlaps(parts_.back(), iv)) {
      Bound end = std::max(parts_.back().end_bound(), iv.end_bound(),
                           [](const Bound& a, const Bound& b) { return a < b; });
      auto merged = Interval::from_bounds(parts_.back().start_bound(), end);
      parts_.back() = *merged;
    } else {
      parts_.push_back(std::move(iv));
    }
  }
}

bool IntervalSet::contains(const Rat& x) const {
  for (const auto& iv : parts_) {
    if (iv.contains(x)) return true;
    if (iv.lo() > x) break;
  }
  return false;
}

Rat IntervalSet::measure() const {
  Rat total(0);
  for (const auto& iv : parts_) total += iv.length();
  return total;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  IntervalSet out;
  out.insert(std::move(all));
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = other.parts_[j];
    Bound start = std::max(a.start_bound(), b.start_bound(),
                           [](const Bound& x, const Bound& y) { return x < y; });
    Bound end = std::min(a.end_bound(), b.end_bound(),
                         [](const Bound& x, const Bound& y) { return x < y; });
    if (auto iv = Interval::from_bounds(start, end)) out.push_back(*iv);
    if (a.end_bound() < b.end_bound())
      ++i;
    else
      ++j;
  }
  IntervalSet res;
  res.insert(std::move(out));
  return res;
}

IntervalSet IntervalSet::intersect(const Interval& iv) const {
  return intersect(IntervalSet(iv));
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    // carve the components of `other` out of `a`
    Bound cur = a.start_bound();
    bool alive = true;
    for (const auto& b : other.parts_) {
      if (b.end_bound() < cur) continue;
      if (a.end_bound() < b.start_bound()) break;
      // piece of `a` strictly before `b`
      Bound before_end = Bound{b.start_bound().x, b.start_bound().eps - 1};
      if (auto piece = Interval::from_bounds(cur, std::min(before_end, a.end_bound(),
                                                           [](const Bound& x, const Bound& y) {
                                                             return x < y;
                                                           }))) {
        out.push_back(*piece);
      }
      Bound after = succ_of_end(b.end_bound());
      if (a.end_bound() < after) {
        alive = false;
        break;
      }
      cur = std::max(cur, after, [](const Bound& x, const Bound& y) { return x < y; });
    }
    if (alive) {
      if (auto piece = Interval::from_bounds(cur, a.end_bound())) out.push_back(*piece);
    }
  }
  IntervalSet res;
  res.insert(std::move(out));
  return res;
}

IntervalSet IntervalSet::dilate_open(const Rat& delta) const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const auto& iv : parts_)
    out.push_back(Interval::open(iv.lo() - delta, iv.hi() + delta));
  IntervalSet res;
  res.insert(std::move(out));
  return res;
}

IntervalSet IntervalSet::translated(const Rat& c) const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const auto& iv : parts_) out.push_back(iv.translated(c));
  IntervalSet res;
  res.parts_ = std::move(out);  // translation preserves normalization
  return res;
}

bool IntervalSet::is_finite_point_set() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const Interval& iv) { return iv.is_point(); });
}

// --- Domain ----------------------------------------------------------------

Domain::Domain(std::vector<Interval> components) {
  if (components.empty()) throw ValidationError("domain must be nonempty");
  for (const auto& c : components)
    if (c.lo_open() || c.hi_open())
      throw ValidationError("domain components must be closed");
  IntervalSet normalized(components);
  components_ = normalized.components();
}

Domain Domain::points(const std::vector<Rat>& xs) {
  std::vector<Interval> comps;
  comps.reserve(xs.size());
  for (const auto& x : xs) comps.push_back(Interval::point(x));
  return Domain(std::move(comps));
}

bool Domain::contains(const Rat& x) const {
  for (const auto& c : components_) {
    if (c.contains(x)) return true;
    if (c.lo() > x) break;
  }
  return false;
}

bool Domain::contains(const Domain& other) const {
  return other.as_set().subtract(as_set()).empty();
}

IntervalSet Domain::as_set() const { return IntervalSet(components_); }

Domain Domain::translated(const Rat& c) const {
  std::vector<Interval> out;
  out.reserve(components_.size());
  for (const auto& iv : components_) out.push_back(iv.translated(c));
  return Domain(std::move(out));
}

}  // namespace oscot
