#include "oscot/map_builder.hpp"

#include <algorithm>
#include <map>

namespace oscot {

namespace {

// One affine (or constant) stretch of the target quantile function over a
// cumulative-mass range (mass_lo, mass_hi].
struct QuantileBranch {
  Rat mass_lo, mass_hi;
  Rat y_lo;         // value entering the branch
  Rat inv_density;  // dy/dp; 0 on atom branches
};

std::vector<QuantileBranch> quantile_branches(const Measure1D& nu) {
  std::vector<QuantileBranch> out;
  Rat g(0);
  if (nu.is_atomic()) {
    for (const auto& a : nu.atoms()) {
      out.push_back(QuantileBranch{g, g + a.mass, a.x, Rat(0)});
      g += a.mass;
    }
  } else {
    for (const auto& p : nu.density_pieces()) {
      out.push_back(QuantileBranch{g, g + p.mass(), p.interval.lo(), Rat(1) / p.density});
      g += p.mass();
    }
  }
  return out;
}

}  // namespace

std::vector<AffineSegment> monotone_map(const Measure1D& mu_j, const Measure1D& nu_j,
                                        Direction direction) {
  if (!mu_j.is_density() || mu_j.is_empty())
    throw ContractError("monotone_map needs a nonempty atomless source");
  if (nu_j.is_empty()) throw ContractError("monotone_map needs a nonempty target");
  if (mu_j.total_mass() != nu_j.total_mass())
    throw ContractError("monotone_map needs equal masses");

  const Rat M = mu_j.total_mass();
  const std::vector<QuantileBranch> branches = quantile_branches(nu_j);
  const bool inc = direction == Direction::Inc;

  std::vector<AffineSegment> segments;
  Rat cum(0);
  for (const auto& piece : mu_j.density_pieces()) {
    const Rat& d = piece.density;
    const Rat& lo = piece.interval.lo();
    const Rat& hi = piece.interval.hi();

    if (inc) {
      // p(x) = cum + (x - lo) d, increasing; branch l owns p in (mass_lo, mass_hi].
      size_t l = 0;
      while (l + 1 < branches.size() && !(branches[l].mass_hi > cum)) ++l;
      Bound cursor{lo, 0};
      while (true) {
        const QuantileBranch& br = branches[l];
        Rat x_next = rat_min(hi, lo + (br.mass_hi - cum) / d);
        Rat slope = d * br.inv_density;
        Rat intercept = br.y_lo + (cum - br.mass_lo - lo * d) * br.inv_density;
        segments.push_back(
            AffineSegment{Interval::from_bounds(cursor, Bound{x_next, 0}).value(), slope, intercept});
        if (x_next == hi) break;
        cursor = Bound{x_next, +1};
        ++l;
      }
    } else {
      // p(x) = M - cum - (x - lo) d, decreasing; the right segment owns each
      // crossing point, matching the left-continuity of the quantile.
      Rat p_start = M - cum;
      size_t l = branches.size() - 1;
      while (l > 0 && !(branches[l].mass_lo < p_start)) --l;
      Bound cursor{lo, 0};
      while (true) {
        const QuantileBranch& br = branches[l];
        Rat x_next = rat_min(hi, lo + (M - cum - br.mass_lo) / d);
        Rat slope = -d * br.inv_density;
        Rat intercept = br.y_lo + (M - cum + lo * d - br.mass_lo) * br.inv_density;
        bool last = x_next == hi;
        segments.push_back(AffineSegment{
            Interval::from_bounds(cursor, Bound{x_next, last ? 0 : -1}).value(), slope, intercept});
        if (last) break;
        cursor = Bound{x_next, 0};
        --l;
      }
    }
    cum += piece.mass();
  }
  return segments;
}

namespace {

struct LiftRect {
  Interval xs, ys;
  Rat mass;
};

// Lifts the discrete witness plan through the quantile structure: each
// x-atom's mass interval is cut into sub-slices matching its entries
// (targets ascending), each y-atom's into sub-slices over its receivers in
// x order. Atomic targets stay points.
std::vector<LiftRect> lift_plan(const Instance& inst, const SolveResult& result) {
  const auto& entries = result.plan.entries;
  const auto& xs_atoms = result.discrete.mu.atoms();
  const auto& ys_atoms = result.discrete.nu.atoms();

  std::map<Rat, Rat> x_base, y_base;  // atom position -> cumulative mass below
  {
    Rat c(0);
    for (const auto& a : xs_atoms) {
      x_base[a.x] = c;
      c += a.mass;
    }
    c = 0;
    for (const auto& a : ys_atoms) {
      y_base[a.x] = c;
      c += a.mass;
    }
  }

  // x slices: entries are sorted by (x, y), so per atom the targets ascend.
  // y slices are allocated per target atom in x order (= entry order).
  std::map<Rat, Rat> x_level = x_base;
  std::map<Rat, Rat> y_level = y_base;
  std::vector<LiftRect> rects;
  rects.reserve(entries.size());
  for (const auto& e : entries) {
    Rat& xl = x_level.at(e.x);
    Rat x_next = xl + e.mass;
    Interval xs = Interval::closed(quantile(inst.mu, xl), quantile(inst.mu, x_next));
    xl = x_next;
    Interval ys = Interval::point(e.y);
    if (!inst.nu.is_atomic()) {
      Rat& yl = y_level.at(e.y);
      Rat y_next = yl + e.mass;
      ys = Interval::closed(quantile(inst.nu, yl), quantile(inst.nu, y_next));
      yl = y_next;
    }
    rects.push_back(LiftRect{std::move(xs), std::move(ys), e.mass});
  }
  return rects;
}

// Exact cost of the lifted plan: rectangles interact when their x-ranges get
// strictly closer than delta.
Rat lift_cost(const std::vector<LiftRect>& rects, const Rat& delta) {
  Rat best(0);
  for (size_t i = 0; i < rects.size(); ++i) {
    for (size_t j = i; j < rects.size(); ++j) {
      const auto& a = rects[i];
      const auto& b = rects[j];
      Rat gap(0);
      if (a.xs.hi() < b.xs.lo()) gap = b.xs.lo() - a.xs.hi();
      if (b.xs.hi() < a.xs.lo()) gap = a.xs.lo() - b.xs.hi();
      if (gap >= delta) continue;
      best = rat_max(best, rat_max(a.ys.hi() - b.ys.lo(), b.ys.hi() - a.ys.lo()));
    }
  }
  return best;
}

// Fiber minimum of the lifted plan as a step function on supp(mu); at shared
// slice endpoints the smaller neighbor owns the point.
StepFn lift_lower_envelope(std::vector<LiftRect> rects, const Domain& supp) {
  std::sort(rects.begin(), rects.end(), [](const LiftRect& a, const LiftRect& b) {
    return a.xs.lo() < b.xs.lo();
  });
  std::vector<Piece> pieces;
  for (size_t t = 0; t < rects.size(); ++t) {
    Bound start = (t == 0 || !(rects[t - 1].ys.lo() <= rects[t].ys.lo()))
                      ? Bound{rects[t].xs.lo(), 0}
                      : Bound{rects[t].xs.lo(), +1};
    Bound end = (t + 1 == rects.size() || rects[t].ys.lo() <= rects[t + 1].ys.lo())
                    ? Bound{rects[t].xs.hi(), 0}
                    : Bound{rects[t].xs.hi(), -1};
    if (auto iv = Interval::from_bounds(start, end))
      pieces.push_back(Piece{*iv, rects[t].ys.lo()});
  }
  return StepFn(supp, std::move(pieces));
}

}  // namespace

BuildResult build_map_detailed(const Instance& inst, const SolveResult& result) {
  inst.validate();
  if (!inst.mu.is_density()) throw ContractError("build_map needs an atomless source measure");
  const int n = result.stats.quantize_n;
  if (n < 1) throw ContractError("build_map needs a quantized solve result");
  if (!measures_equal(result.discrete.mu, quantize(inst.mu, n)))
    throw ContractError("solve result does not belong to this instance (mu)");
  if (!measures_equal(result.discrete.nu,
                      inst.nu.is_atomic() ? inst.nu : quantize(inst.nu, n)))
    throw ContractError("solve result does not belong to this instance (nu)");

  const Domain supp = inst.mu.support();
  const Rat& delta = inst.delta;

  std::vector<LiftRect> rects = lift_plan(inst, result);
  Rat K_lift = lift_cost(rects, delta);
  StepFn lower_envelope = lift_lower_envelope(rects, supp);

  ConjugatePair pair = conjugate_closure(lower_envelope, delta);
  Strip enlarged(pair.phi(), pair.psi().add(K_lift));
  MonotoneDecomposition dec = monotone_decomposition(pair);

  // Left-closed partition of [inf supp, sup supp] along the merged cover.
  std::vector<std::pair<Interval, Direction>> regions;
  {
    Bound cursor{supp.inf(), 0};
    for (size_t t = 0; t < dec.merged.size(); ++t) {
      Bound end = t + 1 == dec.merged.size() ? Bound{supp.sup(), 0}
                                             : Bound{dec.merged[t].interval.hi(), 0};
      if (auto iv = Interval::from_bounds(cursor, end)) {
        regions.emplace_back(*iv, dec.merged[t].direction);
        cursor = Bound{end.x, +1};
      }
    }
  }

  std::vector<MapPiece> map_pieces;
  for (const auto& [region, dir] : regions) {
    Measure1D mu_j = restrict(inst.mu, region).part;
    if (mu_j.total_mass() == 0) continue;

    // Target mass of the region: product-coupling restriction of every
    // rectangle, each contributing its y-slice scaled by the overlap share.
    std::vector<Atom> atom_frags;
    std::vector<DensityPiece> density_frags;
    for (const auto& rect : rects) {
      Rat overlap = mass_on(inst.mu, IntervalSet(rect.xs).intersect(IntervalSet(region)));
      if (overlap == 0) continue;
      Restriction slice = restrict(inst.nu, rect.ys);
      Rat scale = overlap / slice.mass;
      if (slice.part.is_atomic()) {
        for (const auto& a : slice.part.atoms()) atom_frags.push_back(Atom{a.x, a.mass * scale});
      } else {
        for (const auto& p : slice.part.density_pieces())
          density_frags.push_back(DensityPiece{p.interval, p.density * scale});
      }
    }
    if (!atom_frags.empty() && !density_frags.empty())
      throw ContractError("mixed atomic/density region target");
    Measure1D nu_j = atom_frags.empty() ? Measure1D::density(std::move(density_frags))
                                        : Measure1D::atomic(std::move(atom_frags));
    if (nu_j.total_mass() != mu_j.total_mass())
      throw ContractError("region mass bookkeeping failed");

    map_pieces.push_back(MapPiece{region, dir, monotone_map(mu_j, nu_j, dir)});
  }

  return BuildResult{PiecewiseMap(std::move(map_pieces)), std::move(enlarged), std::move(K_lift),
                     std::move(dec)};
}

PiecewiseMap build_map(const Instance& inst, const SolveResult& result) {
  return build_map_detailed(inst, result).map;
}

VerifyReport verify_map(const Instance& inst, const PiecewiseMap& T, const Rat& K,
                        const std::optional<Strip>& strip) {
  VerifyReport r;
  r.pushforward_ok = measures_equal(pushforward(inst.mu, T), inst.nu);
  if (strip) {
    GraphContainment gc = contains_graph(*strip, T, inst.mu);
    r.violation_mass = gc.violation_mass;
    r.containment_ok = gc.almost_everywhere();
    r.containment_finite = gc.except_finitely_many();
  } else {
    r.containment_ok = true;
    r.containment_finite = true;
  }
  r.osc_value = osc_map(T, inst.mu.support(), inst.delta);
  r.osc_ok = r.osc_value <= K;
  return r;
}

}  // namespace oscot
