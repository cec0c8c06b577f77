// Command-line front end: solve instances, build and verify transport maps,
// evaluate oscillation costs, apply the window transforms, emit the built-in
// counterexample, and plot maps or strips.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "oscot/counterexample.hpp"
#include "oscot/io.hpp"
#include "oscot/plot.hpp"

using namespace oscot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;  // validation / contract / domain / io
constexpr int kExitParse = 2;    // unreadable or malformed input

int run_solve(const std::string& in, const std::string& out, int quantize, bool oracle,
              int threads) {
  Instance inst = io::load_instance(in);
  SolveOptions opts;
  if (quantize > 0) opts.quantize_n = quantize;
  opts.threads = threads;
  SolveResult result = solve(inst, opts);  // self-verifies its certificate
  if (oracle) {
    Rat reference = oracle_solve(result.discrete);
    if (reference != result.K) throw ContractError("oracle disagrees: " + to_string(reference));
    std::cout << "oracle agrees: " << to_string(reference) << "\n";
  }
  io::save_json(out, io::to_json(result));
  std::cout << "K = " << to_string(result.K) << "\n";
  return kExitOk;
}

int run_build_map(const std::string& in, const std::string& result_path, const std::string& out) {
  Instance inst = io::load_instance(in);
  SolveResult result = io::load_result(result_path);
  verify_certificate(result);
  BuildResult built = build_map_detailed(inst, result);
  io::save_json(out, io::to_json(built.map));
  VerifyReport report = verify_map(inst, built.map, built.lift_cost, built.enlarged);
  io::json doc = io::to_json(report);
  doc["lift_cost"] = to_string(built.lift_cost);
  doc["k"] = to_string(result.K);
  std::cout << doc.dump(2) << "\n";
  return report.all_ok() ? kExitOk : kExitInvalid;
}

int run_eval_map(const std::string& in, const std::string& map_path) {
  Instance inst = io::load_instance(in);
  PiecewiseMap map = io::load_map(map_path);
  std::cout << to_string(osc_map(map, inst.mu.support(), inst.delta)) << "\n";
  return kExitOk;
}

int run_eval_plan(const std::string& result_path, const std::string& delta_text) {
  SolveResult result = io::load_result(result_path);
  Rat delta = parse_rat(delta_text);
  std::cout << to_string(osc_plan(result.plan.support(), delta)) << "\n";
  return kExitOk;
}

int run_transform(const std::string& fn_path, const std::string& delta_text,
                  const std::string& op, const std::string& out) {
  StepFn f = io::load_stepfn(fn_path);
  Rat delta = parse_rat(delta_text);
  io::json doc;
  if (op == "up") {
    doc = io::to_json(up_transform(f, delta));
  } else if (op == "down") {
    doc = io::to_json(down_transform(f, delta));
  } else {
    doc = io::to_json(conjugate_closure(f, delta));
  }
  if (out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    io::save_json(out, doc);
  return kExitOk;
}

int run_decompose(const std::string& pair_path, const std::string& delta_text,
                  const std::string& out) {
  io::json j = io::load_json(pair_path);
  if (!delta_text.empty()) j["delta"] = delta_text;
  ConjugatePair pair = io::pair_from_json(j);
  io::json doc = io::to_json(monotone_decomposition(pair));
  if (out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    io::save_json(out, doc);
  return kExitOk;
}

int run_counterexample(const std::string& delta_text, const std::string& dir) {
  Rat delta = parse_rat(delta_text);
  Counterexample cx = make_counterexample(delta);
  std::filesystem::create_directories(dir);
  auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };
  io::save_json(path("instance.json"), io::to_json(cx.instance));
  io::save_json(path("map_tent.json"), io::to_json(cx.u_map));
  io::save_json(path("map_monotone.json"), io::to_json(cx.monotone));
  std::cout << "wrote instance.json, map_tent.json, map_monotone.json to " << dir << "\n";
  return kExitOk;
}

int run_plot(const std::string& map_path, const std::string& result_path, const std::string& svg,
             const std::string& csv, const std::string& delta_text) {
  PlotAnnotations notes;
  if (!delta_text.empty()) notes.delta = parse_rat(delta_text);
  if (!map_path.empty()) {
    PiecewiseMap map = io::load_map(map_path);
    if (!csv.empty()) write_map_csv(map, csv);
    if (!svg.empty()) write_map_svg(map, svg, notes);
  } else {
    SolveResult result = io::load_result(result_path);
    notes.K = result.K;
    if (!csv.empty()) write_strip_csv(result.strip, csv);
    if (!svg.empty()) write_strip_svg(result.strip, svg, notes);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact one-dimensional optimal transport under the oscillation cost"};
  app.require_subcommand(1);

  std::string in, out, result_path, map_path, fn_path, pair_path, op, dir, svg, csv;
  std::string eval_delta, transform_delta, decompose_delta, plot_delta;
  std::string counter_delta = "1/10";
  int quantize = 0, threads = 1;
  bool oracle = false;

  auto* solve_cmd = app.add_subcommand("solve", "minimize the oscillation cost exactly");
  solve_cmd->add_option("-i,--instance", in, "instance file")->required();
  solve_cmd->add_option("-o,--output", out, "result file")->required();
  solve_cmd->add_option("--quantize", quantize, "atoms per measure for non-atomic inputs");
  solve_cmd->add_flag("--oracle", oracle, "cross-check against exhaustive enumeration (n <= 8)");
  solve_cmd->add_option("--threads", threads, "worker count; never changes the output");

  auto* build_cmd = app.add_subcommand("build-map", "build a transport map from a solve result");
  build_cmd->add_option("-i,--instance", in, "instance file")->required();
  build_cmd->add_option("-r,--result", result_path, "solve result file")->required();
  build_cmd->add_option("-o,--output", out, "map file")->required();

  auto* eval_map_cmd = app.add_subcommand("eval-map", "oscillation cost of a map");
  eval_map_cmd->add_option("-i,--instance", in, "instance file")->required();
  eval_map_cmd->add_option("-m,--map", map_path, "map file")->required();

  auto* eval_plan_cmd = app.add_subcommand("eval-plan", "oscillation cost of a result's plan");
  eval_plan_cmd->add_option("-r,--result", result_path, "result file")->required();
  eval_plan_cmd->add_option("--delta", eval_delta, "window radius")->required();

  auto* transform_cmd = app.add_subcommand("transform", "window transforms of a step function");
  transform_cmd->add_option("--fn", fn_path, "step function file")->required();
  transform_cmd->add_option("--delta", transform_delta, "window radius")->required();
  transform_cmd->add_option("--op", op, "up | down | closure")
      ->required()
      ->check(CLI::IsMember({"up", "down", "closure"}));
  transform_cmd->add_option("-o,--output", out, "output file (stdout when omitted)");

  auto* decompose_cmd = app.add_subcommand("decompose", "monotonicity cover of a conjugate pair");
  decompose_cmd->add_option("--pair", pair_path, "conjugate pair file")->required();
  decompose_cmd->add_option("--delta", decompose_delta, "window radius (overrides the file)");
  decompose_cmd->add_option("-o,--output", out, "output file (stdout when omitted)");

  auto* counter_cmd = app.add_subcommand("counterexample", "emit the folding fixture");
  counter_cmd->add_option("--delta", counter_delta, "window radius");
  counter_cmd->add_option("-o,--output", dir, "output directory")->required();

  auto* plot_cmd = app.add_subcommand("plot", "CSV and SVG for a map or a result strip");
  auto* plot_map = plot_cmd->add_option("-m,--map", map_path, "map file");
  auto* plot_result =
      plot_cmd->add_option("-r,--result", result_path, "result file (plots the strip)");
  plot_cmd->add_option("-o,--svg", svg, "SVG output path");
  plot_cmd->add_option("--csv", csv, "CSV output path");
  plot_cmd->add_option("--delta", plot_delta, "annotation only");
  plot_map->excludes(plot_result);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return run_solve(in, out, quantize, oracle, threads);
    if (build_cmd->parsed()) return run_build_map(in, result_path, out);
    if (eval_map_cmd->parsed()) return run_eval_map(in, map_path);
    if (eval_plan_cmd->parsed()) return run_eval_plan(result_path, eval_delta);
    if (transform_cmd->parsed()) return run_transform(fn_path, transform_delta, op, out);
    if (decompose_cmd->parsed()) return run_decompose(pair_path, decompose_delta, out);
    if (counter_cmd->parsed()) return run_counterexample(counter_delta, dir);
    if (plot_cmd->parsed()) {
      if (map_path.empty() && result_path.empty())
        throw ValidationError("plot needs --map or --result");
      return run_plot(map_path, result_path, svg, csv, plot_delta);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
