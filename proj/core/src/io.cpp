#include "oscot/io.hpp"

#include <fstream>

namespace oscot::io {

namespace {

// Translates structural JSON failures (missing key, wrong type) into
// ParseError so the CLI can map them to exit code 2.
template <typename F>
auto structural(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

json to_json(const Rat& x) { return to_string(x); }

Rat rat_from_json(const json& j) {
  return structural([&] {
    if (j.is_number_integer()) return Rat(BigInt(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_float()) throw ParseError("rationals must be strings or integers");
    throw ParseError("rationals must be strings or integers");
  });
}

json to_json(const Interval& iv) {
  json j;
  j["lo"] = to_json(iv.lo());
  j["hi"] = to_json(iv.hi());
  if (iv.lo_open()) j["lo_open"] = true;
  if (iv.hi_open()) j["hi_open"] = true;
  return j;
}

Interval interval_from_json(const json& j) {
  return structural([&] {
    return Interval(rat_from_json(j.at("lo")), rat_from_json(j.at("hi")),
                    j.value("lo_open", false), j.value("hi_open", false));
  });
}

json to_json(const Domain& d) {
  json comps = json::array();
  for (const auto& c : d.components()) comps.push_back(to_json(c));
  return json{{"components", comps}};
}

Domain domain_from_json(const json& j) {
  return structural([&] {
    std::vector<Interval> comps;
    for (const auto& c : j.at("components")) comps.push_back(interval_from_json(c));
    return Domain(std::move(comps));
  });
}

json to_json(const Measure1D& m) {
  json j;
  if (m.is_atomic()) {
    j["type"] = "atomic";
    json atoms = json::array();
    for (const auto& a : m.atoms()) atoms.push_back({{"x", to_json(a.x)}, {"mass", to_json(a.mass)}});
    j["atoms"] = atoms;
  } else {
    j["type"] = "density";
    json pieces = json::array();
    for (const auto& p : m.density_pieces())
      pieces.push_back({{"interval", to_json(p.interval)}, {"density", to_json(p.density)}});
    j["pieces"] = pieces;
  }
  return j;
}

Measure1D measure_from_json(const json& j) {
  return structural([&] {
    std::string type = j.at("type").get<std::string>();
    if (type == "atomic") {
      std::vector<Atom> atoms;
      for (const auto& a : j.at("atoms"))
        atoms.push_back(Atom{rat_from_json(a.at("x")), rat_from_json(a.at("mass"))});
      return Measure1D::atomic(std::move(atoms));
    }
    if (type == "density") {
      std::vector<DensityPiece> pieces;
      for (const auto& p : j.at("pieces"))
        pieces.push_back(
            DensityPiece{interval_from_json(p.at("interval")), rat_from_json(p.at("density"))});
      return Measure1D::density(std::move(pieces));
    }
    throw ParseError("measure type must be 'atomic' or 'density'");
  });
}

json to_json(const StepFn& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces())
    pieces.push_back({{"interval", to_json(p.interval)}, {"value", to_json(p.value)}});
  return json{{"domain", to_json(f.domain())}, {"pieces", pieces}};
}

StepFn stepfn_from_json(const json& j) {
  return structural([&] {
    std::vector<Piece> pieces;
    for (const auto& p : j.at("pieces"))
      pieces.push_back(Piece{interval_from_json(p.at("interval")), rat_from_json(p.at("value"))});
    return StepFn(domain_from_json(j.at("domain")), std::move(pieces));
  });
}

json to_json(const Instance& inst) {
  return json{{"delta", to_json(inst.delta)},
              {"domain", to_json(inst.domain)},
              {"target_domain", to_json(inst.target_domain)},
              {"mu", to_json(inst.mu)},
              {"nu", to_json(inst.nu)}};
}

Instance instance_from_json(const json& j) {
  Instance inst = structural([&] {
    return Instance{domain_from_json(j.at("domain")), domain_from_json(j.at("target_domain")),
                    rat_from_json(j.at("delta")), measure_from_json(j.at("mu")),
                    measure_from_json(j.at("nu"))};
  });
  inst.validate();
  return inst;
}

json to_json(const Plan& plan) {
  json entries = json::array();
  for (const auto& e : plan.entries)
    entries.push_back({{"x", to_json(e.x)}, {"y", to_json(e.y)}, {"mass", to_json(e.mass)}});
  return json{{"entries", entries}};
}

Plan plan_from_json(const json& j) {
  return structural([&] {
    Plan plan;
    for (const auto& e : j.at("entries"))
      plan.entries.push_back(PlanEntry{rat_from_json(e.at("x")), rat_from_json(e.at("y")),
                                       rat_from_json(e.at("mass"))});
    return plan;
  });
}

json to_json(const Strip& strip) {
  return json{{"lower", to_json(strip.lower())}, {"upper", to_json(strip.upper())}};
}

Strip strip_from_json(const json& j) {
  return structural(
      [&] { return Strip(stepfn_from_json(j.at("lower")), stepfn_from_json(j.at("upper"))); });
}

json to_json(const PiecewiseMap& map) {
  json pieces = json::array();
  for (const auto& p : map.pieces()) {
    json body;
    if (std::holds_alternative<AtomicTable>(p.body)) {
      body["type"] = "table";
      json entries = json::array();
      for (const auto& e : std::get<AtomicTable>(p.body).entries)
        entries.push_back({{"x", to_json(e.first)}, {"y", to_json(e.second)}});
      body["entries"] = entries;
    } else {
      body["type"] = "affine";
      json segs = json::array();
      for (const auto& s : std::get<std::vector<AffineSegment>>(p.body))
        segs.push_back({{"interval", to_json(s.interval)},
                        {"slope", to_json(s.slope)},
                        {"intercept", to_json(s.intercept)}});
      body["segments"] = segs;
    }
    pieces.push_back({{"interval", to_json(p.interval)},
                      {"direction", to_cstring(p.direction)},
                      {"body", body}});
  }
  return json{{"pieces", pieces}};
}

PiecewiseMap map_from_json(const json& j) {
  return structural([&] {
    std::vector<MapPiece> pieces;
    for (const auto& p : j.at("pieces")) {
      std::string dir = p.at("direction").get<std::string>();
      if (dir != "inc" && dir != "dec") throw ParseError("direction must be 'inc' or 'dec'");
      const json& body = p.at("body");
      std::string type = body.at("type").get<std::string>();
      MapBody parsed;
      if (type == "table") {
        AtomicTable table;
        for (const auto& e : body.at("entries"))
          table.entries.emplace_back(rat_from_json(e.at("x")), rat_from_json(e.at("y")));
        parsed = std::move(table);
      } else if (type == "affine") {
        std::vector<AffineSegment> segs;
        for (const auto& s : body.at("segments"))
          segs.push_back(AffineSegment{interval_from_json(s.at("interval")),
                                       rat_from_json(s.at("slope")),
                                       rat_from_json(s.at("intercept"))});
        parsed = std::move(segs);
      } else {
        throw ParseError("map body type must be 'affine' or 'table'");
      }
      pieces.push_back(MapPiece{interval_from_json(p.at("interval")),
                                dir == "inc" ? Direction::Inc : Direction::Dec,
                                std::move(parsed)});
    }
    return PiecewiseMap(std::move(pieces));
  });
}

json to_json(const ConjugatePair& pair) {
  return json{{"delta", to_json(pair.delta())},
              {"phi", to_json(pair.phi())},
              {"psi", to_json(pair.psi())}};
}

ConjugatePair pair_from_json(const json& j) {
  return structural([&] {
    return ConjugatePair(stepfn_from_json(j.at("phi")), stepfn_from_json(j.at("psi")),
                         rat_from_json(j.at("delta")));
  });
}

json to_json(const MonotoneDecomposition& dec) {
  json floors = json::array(), rises = json::array(), falls = json::array(),
       merged = json::array();
  for (const auto& f : dec.floors) floors.push_back(to_json(f));
  for (const auto& g : dec.rises) rises.push_back(to_json(g));
  for (const auto& h : dec.falls) falls.push_back(to_json(h));
  for (const auto& m : dec.merged)
    merged.push_back({{"interval", to_json(m.interval)}, {"direction", to_cstring(m.direction)}});
  return json{{"delta", to_json(dec.delta)},
              {"floors", floors},
              {"rises", rises},
              {"falls", falls},
              {"merged", merged}};
}

json to_json(const SolveStats& stats) {
  return json{{"nodes", stats.nodes},
              {"leaves", stats.leaves},
              {"hall_prunes", stats.hall_prunes},
              {"memo_hits", stats.memo_hits},
              {"thresholds_tested", stats.thresholds_tested},
              {"quantize_n", stats.quantize_n},
              {"max_mu_cell_diameter", to_json(stats.max_mu_cell_diameter)},
              {"max_nu_cell_diameter", to_json(stats.max_nu_cell_diameter)}};
}

json to_json(const SolveResult& result) {
  return json{{"k", to_json(result.K)},
              {"plan", to_json(result.plan)},
              {"strip", to_json(result.strip)},
              {"discrete", to_json(result.discrete)},
              {"stats", to_json(result.stats)}};
}

SolveResult result_from_json(const json& j) {
  return structural([&] {
    SolveStats stats;
    const json& s = j.at("stats");
    stats.nodes = s.at("nodes").get<long long>();
    stats.leaves = s.at("leaves").get<long long>();
    stats.hall_prunes = s.at("hall_prunes").get<long long>();
    stats.memo_hits = s.at("memo_hits").get<long long>();
    stats.thresholds_tested = s.at("thresholds_tested").get<long long>();
    stats.quantize_n = s.at("quantize_n").get<int>();
    stats.max_mu_cell_diameter = rat_from_json(s.at("max_mu_cell_diameter"));
    stats.max_nu_cell_diameter = rat_from_json(s.at("max_nu_cell_diameter"));
    return SolveResult{rat_from_json(j.at("k")), plan_from_json(j.at("plan")),
                       strip_from_json(j.at("strip")), instance_from_json(j.at("discrete")),
                       std::move(stats)};
  });
}

json to_json(const VerifyReport& report) {
  return json{{"pushforward_ok", report.pushforward_ok},
              {"containment_ok", report.containment_ok},
              {"containment_finite", report.containment_finite},
              {"violation_mass", to_json(report.violation_mass)},
              {"osc_value", to_json(report.osc_value)},
              {"osc_ok", report.osc_ok},
              {"all_ok", report.all_ok()}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }
StepFn load_stepfn(const std::string& path) { return stepfn_from_json(load_json(path)); }
ConjugatePair load_pair(const std::string& path) { return pair_from_json(load_json(path)); }
PiecewiseMap load_map(const std::string& path) { return map_from_json(load_json(path)); }
SolveResult load_result(const std::string& path) { return result_from_json(load_json(path)); }

}  // namespace oscot::io
