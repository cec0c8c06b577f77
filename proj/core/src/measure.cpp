#include "oscot/measure.hpp"

#include <algorithm>
#include <map>

#include "oscot/piecewise_map.hpp"

namespace oscot {

namespace {

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
  for (const auto& a : atoms)
    if (a.mass <= 0) throw ValidationError("atom with non-positive mass");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::vector<Atom> out;
  for (auto& a : atoms) {
    if (!out.empty() && out.back().x == a.x)
      out.back().mass += a.mass;
    else
      out.push_back(std::move(a));
  }
  return out;
}

// Splits at every endpoint and sums densities of overlapping pieces, so the
// result is a canonical list of closed, positive-length pieces that overlap
// at most at endpoints and carry pairwise-distinct densities when touching.
std::vector<DensityPiece> normalize_density(const std::vector<DensityPiece>& pieces) {
  std::vector<Rat> cuts;
  for (const auto& p : pieces) {
    if (p.density <= 0) throw ValidationError("density piece with non-positive density");
    cuts.push_back(p.interval.lo());
    cuts.push_back(p.interval.hi());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DensityPiece> out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / 2;
    Rat d(0);
    for (const auto& p : pieces)
      if (p.interval.contains(mid)) d += p.density;
    if (d == 0) continue;
    if (!out.empty() && out.back().interval.hi() == cuts[i] && out.back().density == d) {
      out.back().interval = Interval::closed(out.back().interval.lo(), cuts[i + 1]);
    } else {
      out.push_back(DensityPiece{Interval::closed(cuts[i], cuts[i + 1]), d});
    }
  }
  return out;
}

}  // namespace

Measure1D Measure1D::atomic(std::vector<Atom> atoms) {
  Measure1D m;
  m.atomic_ = normalize_atoms(std::move(atoms));
  m.total_mass_ = Rat(0);
  for (const auto& a : *m.atomic_) m.total_mass_ += a.mass;
  return m;
}

Measure1D Measure1D::density(std::vector<DensityPiece> pieces) {
  Measure1D m;
  m.pieces_ = normalize_density(pieces);
  if (m.pieces_.empty()) {
    m.atomic_ = std::vector<Atom>{};  // canonical empty measure
    return m;
  }
  m.total_mass_ = Rat(0);
  for (const auto& p : m.pieces_) m.total_mass_ += p.mass();
  return m;
}

Measure1D Measure1D::empty() {
  Measure1D m;
  m.atomic_ = std::vector<Atom>{};
  return m;
}

Measure1D Measure1D::uniform(const Interval& iv) {
  if (iv.is_point()) throw ValidationError("uniform measure needs a nondegenerate interval");
  return density({DensityPiece{iv, Rat(1) / iv.length()}});
}

const std::vector<Atom>& Measure1D::atoms() const {
  if (!atomic_) throw ContractError("atoms() on a density measure");
  return *atomic_;
}

const std::vector<DensityPiece>& Measure1D::density_pieces() const {
  if (atomic_) throw ContractError("density_pieces() on an atomic measure");
  return pieces_;
}

Domain Measure1D::support() const {
  if (is_empty()) throw ContractError("support of the empty measure");
  std::vector<Interval> comps;
  if (atomic_) {
    for (const auto& a : *atomic_) comps.push_back(Interval::point(a.x));
  } else {
    for (const auto& p : pieces_) comps.push_back(p.interval);
  }
  return Domain(std::move(comps));
}

Rat cdf(const Measure1D& m, const Rat& x) {
  Rat total(0);
  if (m.is_atomic()) {
    for (const auto& a : m.atoms()) {
      if (a.x > x) break;
      total += a.mass;
    }
    return total;
  }
  for (const auto& p : m.density_pieces()) {
    if (p.interval.lo() > x) break;
    if (p.interval.hi() <= x)
      total += p.mass();
    else
      total += (x - p.interval.lo()) * p.density;
  }
  return total;
}

Rat quantile(const Measure1D& m, const Rat& p) {
  if (p < 0 || p > m.total_mass()) throw DomainError("quantile level outside [0, total mass]");
  if (m.is_empty()) throw ContractError("quantile of the empty measure");
  Rat cum(0);
  if (m.is_atomic()) {
    for (const auto& a : m.atoms()) {
      cum += a.mass;
      if (cum >= p) return a.x;
    }
    return m.atoms().back().x;  // p == total with rounding-free arithmetic: unreachable
  }
  if (p == 0) return m.density_pieces().front().interval.lo();
  for (const auto& piece : m.density_pieces()) {
    Rat mass = piece.mass();
    if (cum + mass >= p) return piece.interval.lo() + (p - cum) / piece.density;
    cum += mass;
  }
  return m.density_pieces().back().interval.hi();
}

Measure1D quantize(const Measure1D& m, int n) {
  if (n < 1) throw DomainError("quantization count must be >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(n);
  Rat share = m.total_mass() / n;
  if (share == 0) throw ContractError("quantize of the empty measure");
  for (int i = 1; i <= n; ++i) {
    Rat level = m.total_mass() * Rat(2 * i - 1, 2 * n);
    atoms.push_back(Atom{quantile(m, level), share});
  }
  return Measure1D::atomic(std::move(atoms));
}

std::vector<Interval> quantile_cells(const Measure1D& m, int n) {
  if (n < 1) throw DomainError("quantization count must be >= 1");
  std::vector<Interval> cells;
  cells.reserve(n);
  Rat prev = quantile(m, Rat(0));
  for (int i = 1; i <= n; ++i) {
    Rat next = quantile(m, m.total_mass() * Rat(i, n));
    cells.push_back(Interval::closed(prev, next));
    prev = next;
  }
  return cells;
}

Restriction restrict(const Measure1D& m, const Interval& iv) {
  if (m.is_atomic()) {
    std::vector<Atom> kept;
    for (const auto& a : m.atoms())
      if (iv.contains(a.x)) kept.push_back(a);
    Measure1D part = kept.empty() ? Measure1D::empty() : Measure1D::atomic(std::move(kept));
    return Restriction{part, part.total_mass()};
  }
  std::vector<DensityPiece> kept;
  for (const auto& p : m.density_pieces()) {
    Bound start = std::max(p.interval.start_bound(), iv.start_bound(),
                           [](const Bound& a, const Bound& b) { return a < b; });
    Bound end = std::min(p.interval.end_bound(), iv.end_bound(),
                         [](const Bound& a, const Bound& b) { return a < b; });
    if (auto cut = Interval::from_bounds(start, end)) {
      if (!cut->is_point())
        kept.push_back(DensityPiece{Interval::closed(cut->lo(), cut->hi()), p.density});
    }
  }
  Measure1D part = kept.empty() ? Measure1D::empty() : Measure1D::density(std::move(kept));
  return Restriction{part, part.total_mass()};
}

Rat mass_on(const Measure1D& m, const IntervalSet& set) {
  Rat total(0);
  if (m.is_empty()) return total;
  if (m.is_atomic()) {
    for (const auto& a : m.atoms())
      if (set.contains(a.x)) total += a.mass;
    return total;
  }
  for (const auto& p : m.density_pieces())
    total += set.intersect(p.interval).measure() * p.density;
  return total;
}

Measure1D pushforward(const Measure1D& m, const PiecewiseMap& T) {
  if (m.is_empty()) return m;
  if (mass_on(m, T.uncovered(m.support())) != 0)
    throw ContractError("pushforward: map undefined on a positive-mass set");

  if (m.is_atomic()) {
    std::vector<Atom> out;
    for (const auto& a : m.atoms()) out.push_back(Atom{T.eval(a.x), a.mass});
    return Measure1D::atomic(std::move(out));
  }

  std::vector<DensityPiece> out;
  std::vector<Atom> flat;  // flat segments condense their mass into atoms
  for (const auto& piece : T.pieces()) {
    if (std::holds_alternative<AtomicTable>(piece.body)) continue;
    for (const auto& s : std::get<std::vector<AffineSegment>>(piece.body)) {
      for (const auto& dp : m.density_pieces()) {
        Rat lo = rat_max(s.interval.lo(), dp.interval.lo());
        Rat hi = rat_min(s.interval.hi(), dp.interval.hi());
        if (lo >= hi) continue;
        if (s.slope == 0) {
          flat.push_back(Atom{s.intercept, (hi - lo) * dp.density});
          continue;
        }
        Rat y1 = s.eval(lo), y2 = s.eval(hi);
        Interval image = y1 <= y2 ? Interval::closed(y1, y2) : Interval::closed(y2, y1);
        out.push_back(DensityPiece{image, dp.density / rat_abs(s.slope)});
      }
    }
  }
  if (!flat.empty() && !out.empty())
    throw ContractError("pushforward: image mixes atoms and density");
  if (!flat.empty()) return Measure1D::atomic(std::move(flat));
  return Measure1D::density(std::move(out));
}

bool measures_equal(const Measure1D& a, const Measure1D& b) {
  if (a.is_empty() && b.is_empty()) return true;
  if (a.is_atomic() != b.is_atomic()) return false;
  if (a.is_atomic()) return a.atoms() == b.atoms();
  return a.density_pieces() == b.density_pieces();
}

}  // namespace oscot
