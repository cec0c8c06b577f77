#include "oscot/step_function.hpp"

#include <algorithm>

namespace oscot {

namespace {

// Tightens an interval to the hull of its trace on `domain`; nullopt when the
// trace is empty.
std::optional<Interval> tighten(const Interval& iv, const IntervalSet& domain) {
  IntervalSet tr = domain.intersect(iv);
  if (tr.empty()) return std::nullopt;
  const auto& parts = tr.components();
  return Interval::from_bounds(parts.front().start_bound(), parts.back().end_bound());
}

}  // namespace

StepFn::StepFn(Domain domain, std::vector<Piece> pieces) : domain_(std::move(domain)) {
  IntervalSet dset = domain_.as_set();
  std::vector<Piece> tight;
  tight.reserve(pieces.size());
  for (auto& p : pieces) {
    if (auto hull = tighten(p.interval, dset))
      tight.push_back(Piece{*hull, std::move(p.value)});
  }
  std::sort(tight.begin(), tight.end(), [](const Piece& a, const Piece& b) {
    return a.interval.start_bound() < b.interval.start_bound();
  });

  // Validate: traces disjoint and covering.
  IntervalSet covered;
  for (size_t i = 0; i < tight.size(); ++i) {
    if (i + 1 < tight.size() &&
        !(tight[i].interval.end_bound() < tight[i + 1].interval.start_bound()))
      throw ValidationError("step function pieces overlap");
    covered = covered.unite(dset.intersect(tight[i].interval));
  }
  if (!(covered == dset)) throw ValidationError("step function pieces do not cover the domain");

  // Canonicalize: merge consecutive equal values.
  pieces_.clear();
  for (auto& p : tight) {
    if (!pieces_.empty() && pieces_.back().value == p.value) {
      auto merged = Interval::from_bounds(pieces_.back().interval.start_bound(),
                                          p.interval.end_bound());
      pieces_.back().interval = *merged;
    } else {
      pieces_.push_back(std::move(p));
    }
  }
}

StepFn StepFn::constant(const Domain& domain, Rat value) {
  Interval hull(domain.inf(), domain.sup());
  return StepFn(domain, {Piece{hull, std::move(value)}});
}

const Rat& StepFn::operator()(const Rat& x) const {
  // pieces are sorted with disjoint hulls
  size_t lo = 0, hi = pieces_.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    const Interval& iv = pieces_[mid].interval;
    if (iv.contains(x)) return pieces_[mid].value;
    if (Bound{x, 0} < iv.start_bound())
      hi = mid;
    else
      lo = mid + 1;
  }
  throw ContractError("step function evaluated outside its domain: " + to_string(x));
}

Rat StepFn::min_value() const {
  Rat m = pieces_.front().value;
  for (const auto& p : pieces_) m = rat_min(m, p.value);
  return m;
}

Rat StepFn::max_value() const {
  Rat m = pieces_.front().value;
  for (const auto& p : pieces_) m = rat_max(m, p.value);
  return m;
}

IntervalSet StepFn::trace(size_t piece_index) const {
  return domain_.as_set().intersect(pieces_[piece_index].interval);
}

StepFn StepFn::negate() const {
  std::vector<Piece> out = pieces_;
  for (auto& p : out) p.value = -p.value;
  return StepFn(domain_, std::move(out));
}

StepFn StepFn::add(const Rat& c) const {
  std::vector<Piece> out = pieces_;
  for (auto& p : out) p.value += c;
  return StepFn(domain_, std::move(out));
}

StepFn StepFn::scale(const Rat& c) const {
  std::vector<Piece> out = pieces_;
  for (auto& p : out) p.value *= c;
  return StepFn(domain_, std::move(out));
}

StepFn StepFn::translated(const Rat& c) const {
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(Piece{p.interval.translated(c), p.value});
  return StepFn(domain_.translated(c), std::move(out));
}

StepFn StepFn::restrict_to(const Domain& where) const {
  IntervalSet sub = domain_.as_set().intersect(where.as_set());
  if (sub.empty()) throw ContractError("restriction of a step function to an empty trace");
  Domain subdomain = [&] {
    std::vector<Interval> comps;
    for (const auto& c : sub.components())
      comps.push_back(Interval::closed(c.lo(), c.hi()));
    return Domain(comps);
  }();
  // Closing component endpoints may add points not in `sub`; keep only pieces
  // over the true trace but evaluate openness from the original pieces.
  std::vector<Piece> out;
  for (const auto& p : pieces_) out.push_back(p);
  // Re-tighten against the open/closed structure of `sub`, not `subdomain`.
  std::vector<Piece> kept;
  for (const auto& p : out) {
    IntervalSet tr = sub.intersect(p.interval);
    for (const auto& part : tr.components()) kept.push_back(Piece{part, p.value});
  }
  // Build on a domain whose set equals `sub` exactly: open endpoints of `sub`
  // would not form a valid Domain, so callers restricting to half-open traces
  // get the closure; guard against that case.
  if (!(subdomain.as_set() == sub))
    throw ContractError("restriction trace is not closed");
  return StepFn(subdomain, std::move(kept));
}

std::vector<ZipFragment> zip_pieces(const StepFn& a, const StepFn& b) {
  if (!(a.domain() == b.domain()))
    throw ContractError("zip of step functions over different domains");
  std::vector<ZipFragment> out;
  size_t i = 0, j = 0;
  const auto& pa = a.pieces();
  const auto& pb = b.pieces();
  while (i < pa.size() && j < pb.size()) {
    Bound start = std::max(pa[i].interval.start_bound(), pb[j].interval.start_bound(),
                           [](const Bound& x, const Bound& y) { return x < y; });
    Bound end = std::min(pa[i].interval.end_bound(), pb[j].interval.end_bound(),
                         [](const Bound& x, const Bound& y) { return x < y; });
    if (auto iv = Interval::from_bounds(start, end))
      out.push_back(ZipFragment{*iv, pa[i].value, pb[j].value});
    if (pa[i].interval.end_bound() < pb[j].interval.end_bound())
      ++i;
    else
      ++j;
  }
  return out;
}

bool pointwise_le(const StepFn& a, const StepFn& b) {
  for (const auto& f : zip_pieces(a, b))
    if (f.va > f.vb) return false;
  return true;
}

namespace {

StepFn combine(const StepFn& a, const StepFn& b, const std::function<Rat(const Rat&, const Rat&)>& op) {
  std::vector<Piece> out;
  for (const auto& f : zip_pieces(a, b)) out.push_back(Piece{f.interval, op(f.va, f.vb)});
  return StepFn(a.domain(), std::move(out));
}

}  // namespace

StepFn pointwise_min(const StepFn& a, const StepFn& b) {
  return combine(a, b, [](const Rat& x, const Rat& y) { return rat_min(x, y); });
}

StepFn pointwise_max(const StepFn& a, const StepFn& b) {
  return combine(a, b, [](const Rat& x, const Rat& y) { return rat_max(x, y); });
}

StepFn pointwise_sum(const StepFn& a, const StepFn& b) {
  return combine(a, b, [](const Rat& x, const Rat& y) { return x + y; });
}

namespace {

bool semicontinuous(const StepFn& f, bool upper) {
  const auto& ps = f.pieces();
  for (size_t i = 0; i + 1 < ps.size(); ++i) {
    const Interval& left = ps[i].interval;
    const Interval& right = ps[i + 1].interval;
    if (left.hi() != right.lo()) continue;  // pieces meet across a domain gap
    const Rat& boundary_value = f(left.hi());
    const Rat extreme = upper ? rat_max(ps[i].value, ps[i + 1].value)
                              : rat_min(ps[i].value, ps[i + 1].value);
    if (boundary_value != extreme) return false;
  }
  return true;
}

}  // namespace

bool is_upper_semicontinuous(const StepFn& f) { return semicontinuous(f, true); }
bool is_lower_semicontinuous(const StepFn& f) { return semicontinuous(f, false); }

std::vector<Rat> breakpoints(const StepFn& f) {
  std::vector<Rat> out;
  for (const auto& p : f.pieces()) {
    out.push_back(p.interval.lo());
    out.push_back(p.interval.hi());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace oscot
