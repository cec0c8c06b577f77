#include "oscot/piecewise_map.hpp"

#include <algorithm>

namespace oscot {

PiecewiseMap::PiecewiseMap(std::vector<MapPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ValidationError("piecewise map needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(), [](const MapPiece& a, const MapPiece& b) {
    return a.interval.start_bound() < b.interval.start_bound();
  });
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (!(pieces_[i].interval.end_bound() < pieces_[i + 1].interval.start_bound()))
      throw ValidationError("piecewise map pieces overlap");
  }
  for (auto& p : pieces_) {
    if (!std::holds_alternative<std::vector<AffineSegment>>(p.body)) continue;
    auto& segs = std::get<std::vector<AffineSegment>>(p.body);
    std::sort(segs.begin(), segs.end(), [](const AffineSegment& a, const AffineSegment& b) {
      return a.interval.start_bound() < b.interval.start_bound();
    });
    for (size_t i = 0; i + 1 < segs.size(); ++i)
      if (segs[i + 1].interval.lo() < segs[i].interval.hi())
        throw ValidationError("map segments overlap on positive length");
  }
}

PiecewiseMap PiecewiseMap::from_segments(std::vector<AffineSegment> segments, Direction direction) {
  if (segments.empty()) throw ValidationError("empty segment list");
  std::sort(segments.begin(), segments.end(), [](const AffineSegment& a, const AffineSegment& b) {
    return a.interval.start_bound() < b.interval.start_bound();
  });
  Interval hull = *Interval::from_bounds(segments.front().interval.start_bound(),
                                         segments.back().interval.end_bound());
  return PiecewiseMap({MapPiece{hull, direction, std::move(segments)}});
}

PiecewiseMap PiecewiseMap::identity(const Interval& iv) {
  return from_segments({AffineSegment{iv, Rat(1), Rat(0)}});
}

PiecewiseMap PiecewiseMap::constant(const Interval& iv, const Rat& y) {
  return from_segments({AffineSegment{iv, Rat(0), y}});
}

PiecewiseMap PiecewiseMap::from_table(AtomicTable table) {
  if (table.entries.empty()) throw ValidationError("empty assignment table");
  std::sort(table.entries.begin(), table.entries.end());
  Interval hull(table.entries.front().first, table.entries.back().first);
  return PiecewiseMap({MapPiece{hull, Direction::Inc, std::move(table)}});
}

namespace {

const AffineSegment* find_segment(const std::vector<AffineSegment>& segs, const Rat& x) {
  for (const auto& s : segs)
    if (s.interval.contains(x)) return &s;
  return nullptr;
}

const Rat* find_entry(const AtomicTable& t, const Rat& x) {
  auto it = std::lower_bound(t.entries.begin(), t.entries.end(), x,
                             [](const auto& e, const Rat& v) { return e.first < v; });
  if (it != t.entries.end() && it->first == x) return &it->second;
  return nullptr;
}

}  // namespace

bool PiecewiseMap::defined_at(const Rat& x) const {
  for (const auto& p : pieces_) {
    if (!p.interval.contains(x)) continue;
    if (std::holds_alternative<AtomicTable>(p.body))
      return find_entry(std::get<AtomicTable>(p.body), x) != nullptr;
    return find_segment(std::get<std::vector<AffineSegment>>(p.body), x) != nullptr;
  }
  return false;
}

Rat PiecewiseMap::eval(const Rat& x) const {
  for (const auto& p : pieces_) {
    if (!p.interval.contains(x)) continue;
    if (std::holds_alternative<AtomicTable>(p.body)) {
      if (const Rat* y = find_entry(std::get<AtomicTable>(p.body), x)) return *y;
    } else {
      if (const AffineSegment* s = find_segment(std::get<std::vector<AffineSegment>>(p.body), x))
        return s->eval(x);
    }
  }
  throw ContractError("map undefined at " + to_string(x));
}

IntervalSet PiecewiseMap::uncovered(const Domain& supp) const {
  std::vector<Interval> defined;
  for (const auto& p : pieces_) {
    if (std::holds_alternative<AtomicTable>(p.body)) {
      for (const auto& e : std::get<AtomicTable>(p.body).entries)
        defined.push_back(Interval::point(e.first));
    } else {
      for (const auto& s : std::get<std::vector<AffineSegment>>(p.body))
        defined.push_back(s.interval);
    }
  }
  return supp.as_set().subtract(IntervalSet(std::move(defined)));
}

bool PiecewiseMap::directions_consistent() const {
  for (const auto& p : pieces_) {
    const bool inc = p.direction == Direction::Inc;
    if (std::holds_alternative<AtomicTable>(p.body)) {
      const auto& es = std::get<AtomicTable>(p.body).entries;
      for (size_t i = 0; i + 1 < es.size(); ++i) {
        if (inc ? es[i + 1].second < es[i].second : es[i].second < es[i + 1].second) return false;
      }
    } else {
      const auto& segs = std::get<std::vector<AffineSegment>>(p.body);
      std::optional<Rat> prev_end;
      for (const auto& s : segs) {
        if (inc ? s.slope < 0 : s.slope > 0) return false;
        Rat first = s.eval(s.interval.lo());
        Rat last = s.eval(s.interval.hi());
        if (prev_end && (inc ? first < *prev_end : first > *prev_end)) return false;
        prev_end = last;
      }
    }
  }
  return true;
}

std::vector<AffineSegment> canonical_segments(std::vector<AffineSegment> segments) {
  std::sort(segments.begin(), segments.end(), [](const AffineSegment& a, const AffineSegment& b) {
    return a.interval.start_bound() < b.interval.start_bound();
  });
  std::vector<AffineSegment> out;
  for (auto& s : segments) {
    if (!out.empty() && out.back().slope == s.slope && out.back().intercept == s.intercept) {
      Bound after{out.back().interval.end_bound().x, out.back().interval.end_bound().eps + 1};
      if (s.interval.start_bound() <= after) {
        out.back().interval = *Interval::from_bounds(out.back().interval.start_bound(),
                                                     s.interval.end_bound());
        continue;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace oscot
