#include "oscot/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <unordered_set>

#include "oscot/transforms.hpp"

namespace oscot {

void Instance::validate() const {
  if (delta <= 0) throw ValidationError("delta must be positive");
  if (!mu.is_probability()) throw ValidationError("mu must have total mass exactly 1");
  if (!nu.is_probability()) throw ValidationError("nu must have total mass exactly 1");
  if (!domain.contains(mu.support())) throw ValidationError("supp(mu) escapes the domain");
  if (!target_domain.contains(nu.support()))
    throw ValidationError("supp(nu) escapes the target domain");
}

SupportSet Plan::support() const {
  std::vector<SupportPoint> pts;
  pts.reserve(entries.size());
  for (const auto& e : entries) pts.push_back(SupportPoint{e.x, e.y});
  return SupportSet::of(std::move(pts));
}

Measure1D Plan::x_marginal() const {
  std::vector<Atom> atoms;
  for (const auto& e : entries) atoms.push_back(Atom{e.x, e.mass});
  return Measure1D::atomic(std::move(atoms));
}

Measure1D Plan::y_marginal() const {
  std::vector<Atom> atoms;
  for (const auto& e : entries) atoms.push_back(Atom{e.y, e.mass});
  return Measure1D::atomic(std::move(atoms));
}

std::vector<Rat> candidate_thresholds(const Instance& inst) {
  if (!inst.nu.is_atomic())
    throw ContractError("candidate_thresholds needs an atomic target measure");
  std::vector<Rat> out{Rat(0)};
  const auto& atoms = inst.nu.atoms();
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      out.push_back(atoms[j].x - atoms[i].x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// All mass arithmetic runs on a common integer scale; long long covers every
// realistic instance, cpp_int is the fallback for outlandish denominators.
template <typename IntT>
struct ScaledMasses {
  std::vector<IntT> a, b;
  std::vector<IntT> b_prefix;  // b_prefix[j] = sum of b[0..j-1]
  BigInt scale;
};

BigInt common_scale(const std::vector<Atom>& mu_atoms, const std::vector<Atom>& nu_atoms) {
  BigInt denom = 1;
  for (const auto& x : mu_atoms) denom = lcm(denom, denominator(x.mass));
  for (const auto& x : nu_atoms) denom = lcm(denom, denominator(x.mass));
  return denom;
}

template <typename IntT>
ScaledMasses<IntT> scale_masses(const std::vector<Atom>& mu_atoms,
                                const std::vector<Atom>& nu_atoms, const BigInt& denom) {
  ScaledMasses<IntT> s;
  s.scale = denom;
  auto scaled = [&](const Rat& m) {
    return static_cast<IntT>(BigInt(numerator(m) * (denom / denominator(m))));
  };
  for (const auto& x : mu_atoms) s.a.push_back(scaled(x.mass));
  s.b_prefix.assign(1, IntT(0));
  for (const auto& x : nu_atoms) {
    s.b.push_back(scaled(x.mass));
    s.b_prefix.push_back(s.b_prefix.back() + s.b.back());
  }
  return s;
}

bool fits_long_long(const BigInt& scale) {
  // sums stay below ~2^62 when the scale itself is below 2^48
  return scale <= BigInt(std::numeric_limits<long long>::max() / 65536);
}

// Hall criterion over atom-bounded y-intervals: for every [p, q], the mass of
// columns whose allowed range sits inside may not exceed the nu mass there.
template <typename IntT>
bool interval_hall(const std::vector<int>& lo, const std::vector<int>& hi,
                   const ScaledMasses<IntT>& masses, std::vector<IntT>& scratch) {
  const int m = static_cast<int>(masses.b.size());
  for (int p = 0; p < m; ++p) {
    scratch.assign(m, IntT(0));
    bool any = false;
    for (size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] >= p && hi[i] < m) {
        scratch[hi[i]] += masses.a[i];
        any = true;
      }
    }
    if (!any) continue;
    IntT running(0);
    for (int q = p; q < m; ++q) {
      running += scratch[q];
      if (running > masses.b_prefix[q + 1] - masses.b_prefix[p]) return false;
    }
  }
  return true;
}

// Greedy construction inside allowed index ranges: walk the y-grid upward
// and serve the columns whose ranges end soonest.
template <typename IntT>
std::optional<std::vector<std::tuple<int, int, IntT>>> greedy_fill(
    const std::vector<int>& lo, const std::vector<int>& hi, const ScaledMasses<IntT>& masses) {
  const int n = static_cast<int>(lo.size());
  const int m = static_cast<int>(masses.b.size());
  std::vector<std::vector<int>> starts(m);
  for (int i = 0; i < n; ++i) starts[lo[i]].push_back(i);

  using Entry = std::pair<int, int>;  // (deadline, column)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> active;
  std::vector<IntT> rem = masses.a;
  std::vector<std::tuple<int, int, IntT>> out;

  for (int j = 0; j < m; ++j) {
    for (int i : starts[j]) active.emplace(hi[i], i);
    IntT cap = masses.b[j];
    while (cap > 0 && !active.empty()) {
      auto [deadline, col] = active.top();
      if (deadline < j) return std::nullopt;  // missed; cannot happen after Hall
      active.pop();
      IntT take = rem[col] < cap ? rem[col] : cap;
      if (take > 0) {
        out.emplace_back(col, j, take);
        rem[col] -= take;
        cap -= take;
      }
      if (rem[col] > 0) active.emplace(deadline, col);
    }
    if (!active.empty() && active.top().first == j) return std::nullopt;
  }
  for (int i = 0; i < n; ++i)
    if (rem[i] != 0) return std::nullopt;
  return out;
}

template <typename IntT>
Plan plan_from_fill(const std::vector<std::tuple<int, int, IntT>>& fill,
                    const std::vector<Atom>& mu_atoms, const std::vector<Atom>& nu_atoms,
                    const BigInt& scale) {
  std::vector<PlanEntry> entries;
  entries.reserve(fill.size());
  for (const auto& [i, j, f] : fill)
    entries.push_back(PlanEntry{mu_atoms[i].x, nu_atoms[j].x, Rat(BigInt(f), scale)});
  std::sort(entries.begin(), entries.end(), [](const PlanEntry& a, const PlanEntry& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return Plan{std::move(entries)};
}

struct VectorHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Depth-first search over lower envelopes f: x-grid -> y-grid, values
// ascending, positions left to right. A state is fully described by the
// position, the assigned values inside the trailing delta-window, and the
// multiset of allowed intervals of the already-finalized columns (their
// windows being complete, nothing can change them). Exhausted states are
// therefore safe to memoize as dead across branches.
template <typename IntT>
class EnvelopeSearch {
 public:
  EnvelopeSearch(const Instance& inst, const Rat& K, const BigInt& scale, SolveStats* stats)
      : K_(K), stats_(stats) {
    mu_atoms_ = inst.mu.atoms();
    nu_atoms_ = inst.nu.atoms();
    n_ = static_cast<int>(mu_atoms_.size());
    m_ = static_cast<int>(nu_atoms_.size());
    masses_ = scale_masses<IntT>(mu_atoms_, nu_atoms_, scale);
    scratch_.resize(m_);

    // y-window: reach[j] / back[j] = extreme indices within K of ys[j].
    reach_.resize(m_);
    back_.resize(m_);
    for (int j = 0; j < m_; ++j) {
      int l = j;
      while (l + 1 < m_ && nu_atoms_[l + 1].x <= nu_atoms_[j].x + K_) ++l;
      reach_[j] = l;
      l = j;
      while (l > 0 && nu_atoms_[l - 1].x >= nu_atoms_[j].x - K_) --l;
      back_[j] = l;
    }
    // mass-equivalence classes, so that the memo can treat equal-mass columns
    // as interchangeable
    mass_class_.resize(n_);
    {
      std::vector<Rat> classes;
      for (int i = 0; i < n_; ++i) {
        const Rat& mass = mu_atoms_[i].mass;
        auto it = std::find(classes.begin(), classes.end(), mass);
        if (it == classes.end()) {
          classes.push_back(mass);
          it = classes.end() - 1;
        }
        mass_class_[i] = static_cast<int>(it - classes.begin());
      }
    }
    // x-windows: [win_from[i], win_until[i]] are the atoms within delta of i.
    win_from_.resize(n_);
    win_until_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      int k = i;
      while (k > 0 && mu_atoms_[i].x - mu_atoms_[k - 1].x < inst.delta) --k;
      win_from_[i] = k;
      k = i;
      while (k + 1 < n_ && mu_atoms_[k + 1].x - mu_atoms_[i].x < inst.delta) ++k;
      win_until_[i] = k;
    }
    f_.assign(n_, -1);
  }

  std::optional<FeasibleWitness> run(const Domain& grid_domain) {
    if (!dfs(0)) return std::nullopt;
    std::vector<Piece> pieces;
    for (int i = 0; i < n_; ++i)
      pieces.push_back(Piece{Interval::point(mu_atoms_[i].x), nu_atoms_[f_[i]].x});
    StepFn lower(grid_domain, std::move(pieces));
    return FeasibleWitness{std::move(lower), std::move(*plan_)};
  }

 private:
  // Index bands every eventual assignment must respect. Assigned columns are
  // pinned; future bands start from their assigned window neighbors
  // (|f_t - f_s| <= K) and are narrowed to a fixpoint through future-future
  // window edges. Returns false when some band empties: no completion exists.
  bool propagate_bands(int assigned_upto) {
    band_lb_.assign(n_, 0);
    band_ub_.assign(n_, m_ - 1);
    for (int k = 0; k < assigned_upto; ++k) band_lb_[k] = band_ub_[k] = f_[k];
    bool changed = true;
    while (changed) {
      changed = false;
      for (int t = assigned_upto; t < n_; ++t) {
        int lb = band_lb_[t], ub = band_ub_[t];
        for (int u = win_from_[t]; u <= win_until_[t]; ++u) {
          if (u == t) continue;
          lb = std::max(lb, back_[band_lb_[u]]);
          ub = std::min(ub, reach_[band_ub_[u]]);
        }
        if (lb > ub) return false;
        if (lb != band_lb_[t] || ub != band_ub_[t]) {
          band_lb_[t] = lb;
          band_ub_[t] = ub;
          changed = true;
        }
      }
    }
    return true;
  }

  // Superset of the final allowed interval of column k, given the bands:
  // f_k ends up at or above its lower band, and the window minimum cannot
  // exceed any member's upper band.
  std::pair<int, int> optimistic_range(int k) const {
    int wcap = band_ub_[k];
    for (int t = win_from_[k]; t <= win_until_[k]; ++t) wcap = std::min(wcap, band_ub_[t]);
    return {band_lb_[k], reach_[wcap]};
  }

  // Necessary conditions that survive to every completion: nonempty bands
  // and Hall over the optimistic allowed ranges of every column.
  bool optimistic_hall(int assigned_upto) {
    if (!propagate_bands(assigned_upto)) return false;
    lo_buf_.clear();
    hi_buf_.clear();
    mass_buf_.clear();
    for (int k = 0; k < n_; ++k) {
      auto [lo, hi] = optimistic_range(k);
      if (lo == 0 && hi == m_ - 1) continue;  // unconstrained, never inside a proper interval
      lo_buf_.push_back(lo);
      hi_buf_.push_back(hi);
      mass_buf_.push_back(k);
    }
    return interval_hall_indexed(lo_buf_, hi_buf_, mass_buf_);
  }

  bool interval_hall_indexed(const std::vector<int>& lo, const std::vector<int>& hi,
                             const std::vector<int>& column) {
    for (int p = 0; p < m_; ++p) {
      scratch_.assign(m_, IntT(0));
      bool any = false;
      for (size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] >= p && hi[i] < m_) {
          scratch_[hi[i]] += masses_.a[column[i]];
          any = true;
        }
      }
      if (!any) continue;
      IntT running(0);
      for (int q = p; q < m_; ++q) {
        running += scratch_[q];
        if (running > masses_.b_prefix[q + 1] - masses_.b_prefix[p]) return false;
      }
    }
    return true;
  }

  // Exact allowed range of a column whose window is fully assigned.
  std::pair<int, int> final_range(int k) const {
    int wmin = f_[k];
    for (int t = win_from_[k]; t <= win_until_[k]; ++t) wmin = std::min(wmin, f_[t]);
    return {f_[k], reach_[wmin]};
  }

  bool leaf() {
    if (stats_) ++stats_->leaves;
    std::vector<int> lo(n_), hi(n_);
    for (int i = 0; i < n_; ++i) std::tie(lo[i], hi[i]) = final_range(i);
    if (!interval_hall(lo, hi, masses_, scratch_)) return false;
    auto fill = greedy_fill(lo, hi, masses_);
    if (!fill) return false;
    plan_ = plan_from_fill(*fill, mu_atoms_, nu_atoms_, masses_.scale);
    return true;
  }

  // Dead-state key: position, window profile, and the sorted multiset of
  // (lo, hi, mass class) of finalized columns.
  std::vector<int> state_key(int i) const {
    std::vector<int> key;
    key.push_back(i);
    for (int k = win_from_[i]; k < i; ++k) key.push_back(f_[k]);
    key.push_back(-1);
    std::vector<int> packed;
    for (int k = 0; k < i; ++k) {
      if (win_until_[k] >= i) continue;  // still inside some future window
      auto [lo, hi] = final_range(k);
      packed.push_back((mass_class_[k] * (m_ + 1) + lo) * (m_ + 1) + hi);
    }
    std::sort(packed.begin(), packed.end());
    key.insert(key.end(), packed.begin(), packed.end());
    return key;
  }

  bool dfs(int i) {
    if (stats_) ++stats_->nodes;
    if (i == n_) return leaf();

    std::vector<int> key = state_key(i);
    if (dead_.count(key)) {
      if (stats_) ++stats_->memo_hits;
      return false;
    }

    if (!propagate_bands(i)) {
      if (stats_) ++stats_->hall_prunes;
      if (dead_.size() < (1u << 22)) dead_.insert(std::move(key));
      return false;
    }
    const int lb = band_lb_[i], ub = band_ub_[i];
    for (int j = lb; j <= ub; ++j) {
      f_[i] = j;
      if (!optimistic_hall(i + 1)) {
        if (stats_) ++stats_->hall_prunes;
        continue;
      }
      if (dfs(i + 1)) return true;
    }
    f_[i] = -1;
    if (dead_.size() < (1u << 22)) dead_.insert(std::move(key));
    return false;
  }

  Rat K_;
  SolveStats* stats_;
  std::vector<Atom> mu_atoms_, nu_atoms_;
  int n_ = 0, m_ = 0;
  ScaledMasses<IntT> masses_;
  std::vector<IntT> scratch_;
  std::vector<int> reach_, back_, win_from_, win_until_, f_, mass_class_;
  std::vector<int> band_lb_, band_ub_;
  std::vector<int> lo_buf_, hi_buf_, mass_buf_;
  std::optional<Plan> plan_;
  std::unordered_set<std::vector<int>, VectorHash> dead_;
};

Domain atom_grid_domain(const Measure1D& m) {
  std::vector<Rat> xs;
  for (const auto& a : m.atoms()) xs.push_back(a.x);
  return Domain::points(xs);
}

}  // namespace

std::optional<Plan> flow_feasible(const std::vector<Atom>& mu_atoms,
                                  const std::vector<Atom>& nu_atoms,
                                  const std::vector<Interval>& allowed) {
  if (allowed.size() != mu_atoms.size())
    throw ContractError("flow_feasible: one allowed interval per source atom");
  ScaledMasses<BigInt> masses =
      scale_masses<BigInt>(mu_atoms, nu_atoms, common_scale(mu_atoms, nu_atoms));
  const int m = static_cast<int>(nu_atoms.size());
  std::vector<int> lo(mu_atoms.size()), hi(mu_atoms.size());
  for (size_t i = 0; i < mu_atoms.size(); ++i) {
    int li = m, ri = -1;
    for (int j = 0; j < m; ++j) {
      if (allowed[i].contains(nu_atoms[j].x)) {
        li = std::min(li, j);
        ri = std::max(ri, j);
      }
    }
    if (ri < 0) return std::nullopt;  // no admissible target at all
    lo[i] = li;
    hi[i] = ri;
  }
  std::vector<BigInt> scratch(m);
  if (!interval_hall(lo, hi, masses, scratch)) return std::nullopt;
  auto fill = greedy_fill(lo, hi, masses);
  if (!fill) return std::nullopt;
  return plan_from_fill(*fill, mu_atoms, nu_atoms, masses.scale);
}

std::optional<FeasibleWitness> feasible(const Instance& inst, const Rat& K, SolveStats* stats) {
  if (K < 0) return std::nullopt;
  if (!inst.mu.is_atomic() || !inst.nu.is_atomic())
    throw ContractError("feasible() needs an atomic instance");
  BigInt scale = common_scale(inst.mu.atoms(), inst.nu.atoms());
  Domain grid = atom_grid_domain(inst.mu);
  if (fits_long_long(scale)) {
    EnvelopeSearch<long long> search(inst, K, scale, stats);
    return search.run(grid);
  }
  EnvelopeSearch<BigInt> search(inst, K, scale, stats);
  return search.run(grid);
}

SolveResult solve(const Instance& inst, const SolveOptions& opts) {
  inst.validate();
  if (opts.threads < 1) throw DomainError("threads must be >= 1");

  SolveStats stats;
  Instance discrete = inst;
  if (!inst.mu.is_atomic() || !inst.nu.is_atomic()) {
    if (!opts.quantize_n)
      throw ValidationError("non-atomic instance: a quantization count is required");
    int n = *opts.quantize_n;
    if (n < 1) throw ValidationError("quantization count must be >= 1");
    discrete.mu = inst.mu.is_atomic() ? inst.mu : quantize(inst.mu, n);
    discrete.nu = inst.nu.is_atomic() ? inst.nu : quantize(inst.nu, n);
    stats.quantize_n = n;
    auto max_diam = [&](const Measure1D& m) {
      Rat best(0);
      for (const auto& cell : quantile_cells(m, n)) best = rat_max(best, cell.length());
      return best;
    };
    if (!inst.mu.is_atomic()) stats.max_mu_cell_diameter = max_diam(inst.mu);
    if (!inst.nu.is_atomic()) stats.max_nu_cell_diameter = max_diam(inst.nu);
  }

  std::vector<Rat> thresholds = candidate_thresholds(discrete);

  // Least feasible threshold; feasibility is monotone in K.
  size_t lo = 0, hi = thresholds.size() - 1;
  {
    ++stats.thresholds_tested;
    if (feasible(discrete, thresholds[lo], &stats)) {
      hi = lo;
    } else {
      while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        ++stats.thresholds_tested;
        if (feasible(discrete, thresholds[mid], &stats))
          hi = mid;
        else
          lo = mid;
      }
    }
  }
  const Rat& K = thresholds[hi];
  ++stats.thresholds_tested;
  auto witness = feasible(discrete, K, &stats);
  if (!witness) throw ContractError("threshold search lost feasibility");

  StepFn upper = up_transform(witness->lower, discrete.delta).add(K);
  SolveResult result{K, std::move(witness->plan),
                     Strip(std::move(witness->lower), std::move(upper)), std::move(discrete),
                     std::move(stats)};
  verify_certificate(result);
  return result;
}

Rat oracle_solve(const Instance& inst) {
  if (!inst.mu.is_atomic() || !inst.nu.is_atomic())
    throw ContractError("oracle_solve needs an atomic instance");
  const auto& xs = inst.mu.atoms();
  const auto& ys = inst.nu.atoms();
  const size_t n = xs.size();
  if (n != ys.size() || n == 0) throw ContractError("oracle_solve needs equal atom counts");
  if (n > 8) throw ContractError("oracle_solve is capped at 8 atoms");
  for (const auto& a : xs)
    if (a.mass != xs.front().mass) throw ContractError("oracle_solve needs equal masses");
  for (const auto& a : ys)
    if (a.mass != xs.front().mass) throw ContractError("oracle_solve needs equal masses");

  std::vector<std::pair<int, int>> interacting;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (rat_abs(xs[i].x - xs[j].x) < inst.delta) interacting.emplace_back(i, j);

  std::vector<int> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  std::optional<Rat> best;
  do {
    Rat cost(0);
    bool hopeless = false;
    for (const auto& [i, j] : interacting) {
      cost = rat_max(cost, rat_abs(ys[perm[i]].x - ys[perm[j]].x));
      if (best && cost >= *best) {
        hopeless = true;
        break;
      }
    }
    if (!hopeless && (!best || cost < *best)) best = cost;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

void verify_certificate(const SolveResult& result) {
  if (!measures_equal(result.plan.x_marginal(), result.discrete.mu))
    throw ContractError("certificate: x-marginal mismatch");
  if (!measures_equal(result.plan.y_marginal(), result.discrete.nu))
    throw ContractError("certificate: y-marginal mismatch");
  if (osc_plan(result.plan.support(), result.discrete.delta) != result.K)
    throw ContractError("certificate: plan cost differs from K");
  if (!is_optimal(result.strip, result.discrete.delta, result.K))
    throw ContractError("certificate: strip is not optimal at K");
  if (!contains_support(result.strip, result.plan.support()))
    throw ContractError("certificate: support escapes the strip");
}

}  // namespace oscot
