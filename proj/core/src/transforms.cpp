#include "oscot/transforms.hpp"

#include <algorithm>
#include <map>

namespace oscot {

StepFn up_transform(const StepFn& f, const Rat& delta) {
  if (delta <= 0) throw DomainError("transform requires delta > 0");

  // Group pieces by value; traces, not hulls, get dilated.
  std::map<Rat, IntervalSet> levels;
  for (size_t i = 0; i < f.pieces().size(); ++i) {
    const Rat& v = f.pieces()[i].value;
    auto it = levels.find(v);
    if (it == levels.end())
      levels.emplace(v, f.trace(i));
    else
      it->second = it->second.unite(f.trace(i));
  }

  IntervalSet domain_set = f.domain().as_set();
  IntervalSet taken;
  std::vector<Piece> out;
  for (const auto& [value, level_set] : levels) {
    IntervalSet dilated = level_set.dilate_open(delta);
    IntervalSet fresh = dilated.subtract(taken).intersect(domain_set);
    for (const auto& part : fresh.components()) out.push_back(Piece{part, value});
    taken = taken.unite(dilated);
  }
  return StepFn(f.domain(), std::move(out));
}

StepFn down_transform(const StepFn& f, const Rat& delta) {
  return up_transform(f.negate(), delta).negate();
}

ConjugatePair::ConjugatePair(StepFn phi, StepFn psi, Rat delta)
    : phi_(std::move(phi)), psi_(std::move(psi)), delta_(std::move(delta)) {
  if (delta_ <= 0) throw DomainError("conjugate pair requires delta > 0");
  if (!(up_transform(phi_, delta_) == psi_) || !(down_transform(psi_, delta_) == phi_))
    throw ContractError("not a conjugate pair");
}

ConjugatePair conjugate_closure(const StepFn& f, const Rat& delta) {
  StepFn psi = up_transform(f, delta);
  StepFn phi = down_transform(psi, delta);
  return ConjugatePair(std::move(phi), std::move(psi), delta);
}

bool is_conjugate_pair(const StepFn& phi, const StepFn& psi, const Rat& delta) {
  if (delta <= 0) throw DomainError("is_conjugate_pair requires delta > 0");
  return up_transform(phi, delta) == psi && down_transform(psi, delta) == phi;
}

std::vector<Interval> find_floors(const StepFn& f) {
  std::vector<Interval> out;
  const auto& ps = f.pieces();
  for (size_t k = 1; k + 1 < ps.size(); ++k) {
    if (ps[k - 1].value > ps[k].value && ps[k + 1].value > ps[k].value)
      out.push_back(ps[k].interval);
  }
  return out;
}

std::vector<Interval> find_ceilings(const StepFn& f) { return find_floors(f.negate()); }

namespace {

// Hull of a run of consecutive pieces [first, last].
Interval run_hull(const std::vector<Piece>& ps, size_t first, size_t last) {
  return *Interval::from_bounds(ps[first].interval.start_bound(), ps[last].interval.end_bound());
}

}  // namespace

MonotoneDecomposition monotone_decomposition(const ConjugatePair& pair) {
  const StepFn& psi = pair.psi();
  const auto& ps = psi.pieces();
  const Rat& delta = pair.delta();

  MonotoneDecomposition dec;
  dec.delta = delta;

  // Floor piece indices of psi.
  std::vector<size_t> floor_idx;
  for (size_t k = 1; k + 1 < ps.size(); ++k)
    if (ps[k - 1].value > ps[k].value && ps[k + 1].value > ps[k].value) floor_idx.push_back(k);
  for (size_t k : floor_idx) dec.floors.push_back(ps[k].interval);

  const Rat max_floors = pair.phi().domain().diameter() / (2 * delta);
  if (Rat(static_cast<long long>(floor_idx.size())) > max_floors)
    throw ContractError("floor count exceeds the diameter bound");

  // Inter-floor regions [begin, end] of piece indices; each is unimodal
  // (strictly up, then strictly down) because it has no interior local
  // minimum and consecutive values are distinct.
  struct Region {
    size_t begin, end, peak;
    std::optional<Interval> rise, fall;  // rise: begin..peak, fall: peak+1..end
  };
  std::vector<Region> regions;
  size_t begin = 0;
  auto close_region = [&](size_t end) {
    Region r{begin, end, begin, std::nullopt, std::nullopt};
    while (r.peak + 1 <= end && ps[r.peak + 1].value > ps[r.peak].value) ++r.peak;
    r.rise = run_hull(ps, r.begin, r.peak);
    if (r.peak + 1 <= end) r.fall = run_hull(ps, r.peak + 1, end);
    regions.push_back(r);
  };
  for (size_t k : floor_idx) {
    close_region(k - 1);
    begin = k + 1;
  }
  close_region(ps.size() - 1);

  for (const auto& r : regions) {
    dec.rises.push_back(*r.rise);
    if (r.fall) dec.falls.push_back(*r.fall);
  }

  // Merged cover: G_1, then per floor i the pair (H_i ∪ F_i^-, F_i^+ ∪ G_{i+1})
  // with the floor split at the midpoint of the gap between its neighbors,
  // then the trailing H_{N+1}. Both halves of each floor are at least delta
  // long, which is what makes phi share psi's monotonicity on the cover.
  IntervalSet domain_set = psi.domain().as_set();
  auto emit = [&](const Bound& start, const Bound& end, Direction dir) {
    auto iv = Interval::from_bounds(start, end);
    if (!iv) return;
    IntervalSet tr = domain_set.intersect(*iv);
    if (tr.empty()) return;
    auto hull = Interval::from_bounds(tr.components().front().start_bound(),
                                      tr.components().back().end_bound());
    dec.merged.push_back(MergedInterval{*hull, dir});
  };

  Bound cursor = ps.front().interval.start_bound();  // start of the uncovered rest
  for (size_t i = 0; i < floor_idx.size(); ++i) {
    size_t k = floor_idx[i];
    const Interval& before = ps[k - 1].interval;  // last piece of H_i (or G_i)
    const Interval& after = ps[k + 1].interval;   // first piece of G_{i+1}
    if (after.lo() - before.hi() < 2 * delta)
      throw ContractError("floor separation below 2*delta");
    Rat mid = (before.hi() + after.lo()) / 2;
    // Everything from the cursor up to the region peak rises; peak to mid falls.
    const Region& region = regions[i];
    Bound peak_end = ps[region.peak].interval.end_bound();
    emit(cursor, peak_end, Direction::Inc);
    emit(ps[region.peak + 1].interval.start_bound(), Bound{mid, 0}, Direction::Dec);
    cursor = Bound{mid, 0};
  }
  const Region& last = regions.back();
  Bound peak_end = ps[last.peak].interval.end_bound();
  emit(cursor, peak_end, Direction::Inc);
  if (last.fall)
    emit(ps[last.peak + 1].interval.start_bound(), ps.back().interval.end_bound(), Direction::Dec);

  for (const auto& m : dec.merged) {
    if (!is_monotone_on(psi, m.interval, m.direction) ||
        !is_monotone_on(pair.phi(), m.interval, m.direction))
      throw ContractError("merged interval is not monotone for both functions");
  }
  return dec;
}

bool is_monotone_on(const StepFn& f, const Interval& iv, Direction direction) {
  std::optional<Rat> prev;
  IntervalSet window = f.domain().as_set().intersect(iv);
  for (const auto& p : f.pieces()) {
    if (window.intersect(p.interval).empty()) continue;
    if (prev) {
      if (direction == Direction::Inc ? p.value < *prev : p.value > *prev) return false;
    }
    prev = p.value;
  }
  return true;
}

}  // namespace oscot
