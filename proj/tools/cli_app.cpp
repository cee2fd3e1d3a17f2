#include "cli_app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mindiam/generate.hpp"
#include "mindiam/imprecise.hpp"
#include "mindiam/instance_io.hpp"
#include "mindiam/lp.hpp"
#include "mindiam/mindcs.hpp"
#include "mindiam/svg.hpp"

namespace mindiam::cli {

namespace {

// Minimal ordered JSON writer so reports are byte-stable.
class JsonWriter {
 public:
  JsonWriter& begin() {
    out_ += '{';
    first_ = true;
    return *this;
  }
  JsonWriter& end() {
    out_ += '}';
    first_ = false;
    return *this;
  }
  JsonWriter& key(const std::string& k) {
    sep();
    out_ += '"' + k + "\":";
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    out_ += '"' + escape(v) + '"';
    return *this;
  }
  JsonWriter& value(double v) {
    out_ += format_number(v);
    return *this;
  }
  JsonWriter& value(int v) {
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value_raw(const std::string& v) {
    out_ += v;
    return *this;
  }
  const std::string& str() const { return out_; }

 private:
  void sep() {
    if (first_)
      first_ = false;
    else
      out_ += ',';
  }
  static std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  }
  std::string out_;
  bool first_ = true;
};

std::string points_json(const std::vector<Point>& pts) {
  std::string out = "[";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int k = 0; k < pts[i].dim(); ++k) {
      if (k) out += ',';
      out += format_number(pts[i][k]);
    }
    out += ']';
  }
  out += ']';
  return out;
}

std::string strings_json(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += '"' + items[i] + '"';
  }
  out += ']';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::PreconditionViolation, "cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::PreconditionViolation, "cannot open output file " + path);
  out << text;
}

struct CommonFlags {
  std::string input;
  std::string output;
  std::string svg;
  double eps = 0.25;
  bool oracle = false;
  bool strict_eps = false;
  double resolution = 0.02;
  std::string dump_lp_path;
};

void echo_options(JsonWriter& w, const std::string& command, const CommonFlags& flags) {
  w.key("command").value(command);
  w.key("options").begin();
  w.key("eps").value(flags.eps);
  w.key("strict_eps").value_raw(flags.strict_eps ? "true" : "false");
  w.key("oracle").value_raw(flags.oracle ? "true" : "false");
  w.key("resolution").value(flags.resolution);
  w.end();
}

void instance_stats(JsonWriter& w, const ParsedInstance& inst) {
  w.key("instance").begin();
  w.key("model").value(inst.model);
  w.key("d").value(inst.d);
  if (inst.model == "indecisive") {
    w.key("n").value(inst.indecisive->num_points());
    w.key("m").value(inst.indecisive->num_colors());
  } else {
    w.key("n").value(inst.imprecise->size());
    w.key("m").value(inst.imprecise->size());
  }
  w.end();
}

void maybe_write_svg(const CommonFlags& flags, const ParsedInstance& inst,
                     const std::optional<Selection>& selection) {
  if (flags.svg.empty()) return;
  if (inst.model == "imprecise" && inst.d != 2)
    fail(ErrorCode::PreconditionViolation, "svg output requires a planar instance");
  write_file(flags.svg, render_svg(inst, selection));
}

int finalize(JsonWriter& w, const CommonFlags& flags,
             const std::chrono::steady_clock::time_point& start, std::ostream& out) {
  const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  w.key("wall_time_ms").value(static_cast<double>(elapsed) / 1000.0);
  w.end();
  out << w.str() << "\n";
  if (!flags.output.empty()) write_file(flags.output, w.str() + "\n");
  return 0;
}

int cmd_mindcs(const CommonFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ParsedInstance inst = parse_instance(read_file(flags.input));
  if (inst.model != "indecisive")
    fail(ErrorCode::PreconditionViolation, "mindcs expects an indecisive instance");
  const double d = inst.d;
  const double eps = flags.strict_eps ? flags.eps / (2.0 * std::sqrt(d)) : flags.eps;

  JsonWriter w;
  w.begin();
  echo_options(w, "mindcs", flags);
  instance_stats(w, inst);
  const ApproxResult result = min_diameter_apx(*inst.indecisive, eps);
  std::vector<std::string> warnings;
  w.key("result").begin();
  w.key("value").value(result.value);
  w.key("representative_value").value(result.representative_value);
  w.key("epsilon_used").value(eps);
  w.key("selection").value_raw(points_json(result.selection.points));
  w.key("witness").value_raw("[" + std::to_string(result.witness.first) + "," +
                             std::to_string(result.witness.second) + "]");
  bool ok = true;
  if (flags.oracle) {
    const auto [opt, opt_sel] = brute_force(*inst.indecisive);
    const double bound = 1.0 + 2.0 * std::sqrt(d) * eps;
    const double ratio = opt > 0.0 ? result.value / opt : 1.0;
    ok = result.value <= bound * opt + 1e-9 && result.value >= opt - 1e-9;
    w.key("oracle_value").value(opt);
    w.key("ratio").value(ratio);
    w.key("bound").value(bound);
    w.key("within_bound").value_raw(ok ? "true" : "false");
    if (!ok) warnings.push_back("approximation bound violated");
  }
  w.end();
  w.key("warnings").value_raw(strings_json(warnings));
  maybe_write_svg(flags, inst, result.selection);
  const int rc = finalize(w, flags, start, out);
  return ok ? rc : 1;
}

int cmd_imprecise(const CommonFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ParsedInstance inst = parse_instance(read_file(flags.input));
  if (inst.model != "imprecise")
    fail(ErrorCode::PreconditionViolation, "imprecise expects an imprecise instance");
  const double c = 2.0 * std::sqrt(2.0) + std::sqrt(2.0);
  const double eps = flags.strict_eps ? flags.eps / c : flags.eps;

  JsonWriter w;
  w.begin();
  echo_options(w, "imprecise", flags);
  instance_stats(w, inst);
  const SolveOutcome outcome = solve_imprecise(*inst.imprecise, eps);
  w.key("result").begin();
  w.key("value").value(outcome.value);
  w.key("epsilon_used").value(eps);
  const char* path = outcome.path == SolvePath::SingleRegion  ? "single_region"
                     : outcome.path == SolvePath::CommonPoint ? "common_point"
                     : outcome.path == SolvePath::Pipeline    ? "pipeline"
                     : outcome.path == SolvePath::Decomposed  ? "decomposed"
                                                              : "oracle_fallback";
  w.key("path").value(path);
  w.key("selection").value_raw(points_json(outcome.selection.points));
  if (outcome.report.has_value()) {
    const PipelineReport& rep = *outcome.report;
    w.key("pipeline").begin();
    w.key("r_bound").value(rep.r_bound);
    w.key("alpha").value(rep.cert.alpha);
    w.key("separable_pair").value_raw("[" + std::to_string(rep.cert.pair.first) + "," +
                                      std::to_string(rep.cert.pair.second) + "]");
    w.key("cell_size").value(rep.cell_size);
    w.key("colored_points").value(rep.colored_point_count);
    w.end();
  }
  if (flags.oracle) {
    const SamplingResult oracle = sampling_oracle(*inst.imprecise, flags.resolution);
    w.key("oracle_value").value(oracle.value);
    w.key("oracle_resolution").value(oracle.effective_resolution);
  }
  w.end();
  w.key("warnings").value_raw(strings_json(outcome.warnings));
  maybe_write_svg(flags, inst, outcome.selection);
  return finalize(w, flags, start, out);
}

int cmd_lp(const CommonFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ParsedInstance inst = parse_instance(read_file(flags.input));
  if (inst.model != "imprecise")
    fail(ErrorCode::PreconditionViolation, "lp expects an imprecise instance");

  JsonWriter w;
  w.begin();
  echo_options(w, "lp", flags);
  instance_stats(w, inst);
  const SqrtApproxResult result = sqrt_d_approx(*inst.imprecise);
  if (!flags.dump_lp_path.empty() && inst.imprecise->size() >= 2) {
    const auto [lp, layout] = build_lp3(*inst.imprecise);
    write_file(flags.dump_lp_path, dump_lp(lp));
  }
  w.key("result").begin();
  w.key("ell").value(result.ell);
  w.key("selection").value_raw(points_json(result.selection.points));
  w.end();
  w.key("warnings").value_raw("[]");
  maybe_write_svg(flags, inst, result.selection);
  return finalize(w, flags, start, out);
}

int cmd_separability(const CommonFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ParsedInstance inst = parse_instance(read_file(flags.input));
  if (inst.model != "imprecise" || inst.d != 2)
    fail(ErrorCode::PreconditionViolation, "separability expects a planar imprecise instance");

  JsonWriter w;
  w.begin();
  echo_options(w, "separability", flags);
  instance_stats(w, inst);
  const auto cert = max_separability_set(*inst.imprecise);
  w.key("result").begin();
  if (cert.has_value()) {
    w.key("separable").value_raw("true");
    w.key("pair").value_raw("[" + std::to_string(cert->pair.first) + "," +
                            std::to_string(cert->pair.second) + "]");
    w.key("alpha").value(cert->alpha);
    w.key("apex").value_raw(points_json({cert->apex}));
    w.key("lines").value_raw(
        points_json({cert->line1.point, to_point(cert->line1.direction),
                     cert->line2.point, to_point(cert->line2.direction)}));
  } else {
    w.key("separable").value_raw("false");
  }
  w.end();
  w.key("warnings").value_raw("[]");
  maybe_write_svg(flags, inst, std::nullopt);
  return finalize(w, flags, start, out);
}

int cmd_oracle(const CommonFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ParsedInstance inst = parse_instance(read_file(flags.input));

  JsonWriter w;
  w.begin();
  echo_options(w, "oracle", flags);
  instance_stats(w, inst);
  w.key("result").begin();
  std::optional<Selection> selection;
  if (inst.model == "indecisive") {
    const auto [value, sel] = brute_force(*inst.indecisive);
    w.key("value").value(value);
    w.key("selection").value_raw(points_json(sel.points));
    selection = sel;
  } else {
    const SamplingResult oracle = sampling_oracle(*inst.imprecise, flags.resolution);
    w.key("value").value(oracle.value);
    w.key("resolution_used").value(oracle.effective_resolution);
    w.key("selection").value_raw(points_json(oracle.selection.points));
    selection = oracle.selection;
  }
  w.end();
  w.key("warnings").value_raw("[]");
  maybe_write_svg(flags, inst, selection);
  return finalize(w, flags, start, out);
}

struct GenFlags {
  std::string model = "indecisive";
  std::uint64_t seed = 1;
  int n = 3;
  int m = 3;
  int k = 4;
  double spread = 10.0;
  double overlap = 0.0;
  std::string output;
};

int cmd_gen(const GenFlags& flags, std::ostream& out) {
  ParsedInstance inst;
  inst.d = 2;
  if (flags.model == "indecisive") {
    inst.model = "indecisive";
    IndecisiveGenParams params;
    params.num_colors = flags.m;
    params.max_class_size = flags.k;
    params.spread = flags.spread;
    inst.indecisive = random_indecisive(params, flags.seed);
  } else if (flags.model == "imprecise") {
    inst.model = "imprecise";
    if (flags.overlap > 0.0) {
      inst.imprecise = random_common_point_imprecise(flags.n, flags.seed);
    } else {
      ImpreciseGenParams params;
      params.num_regions = flags.n;
      params.max_vertices = flags.k;
      params.spread = flags.spread;
      inst.imprecise = random_separable_imprecise(params, flags.seed);
    }
  } else {
    fail(ErrorCode::PreconditionViolation, "model must be indecisive or imprecise");
  }
  const std::string text = serialize_instance(inst);
  if (!flags.output.empty())
    write_file(flags.output, text + "\n");
  else
    out << text << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"minimum-diameter selection under uncertainty"};
  app.require_subcommand(1);

  CommonFlags flags;
  GenFlags gen_flags;

  auto add_common = [&flags](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", flags.input, "instance JSON file");
    if (needs_input) in->required();
    cmd->add_option("--output", flags.output, "write the run report to this file");
    cmd->add_option("--svg", flags.svg, "write an SVG figure to this file");
    cmd->add_option("--eps", flags.eps, "approximation parameter in (0, 1]");
    cmd->add_flag("--oracle", flags.oracle, "also run the exact/sampling oracle");
    cmd->add_flag("--strict-eps", flags.strict_eps,
                  "rescale eps so the certified factor is (1 + eps)");
    cmd->add_option("--resolution", flags.resolution, "sampling oracle spacing");
  };

  CLI::App* mindcs_cmd = app.add_subcommand("mindcs", "solve an indecisive instance");
  add_common(mindcs_cmd, true);
  CLI::App* imprecise_cmd = app.add_subcommand("imprecise", "solve an imprecise instance");
  add_common(imprecise_cmd, true);
  CLI::App* lp_cmd = app.add_subcommand("lp", "rectilinear relaxation bound");
  add_common(lp_cmd, true);
  lp_cmd->add_option("--dump-lp", flags.dump_lp_path, "write the program rows to this file");
  CLI::App* sep_cmd = app.add_subcommand("separability", "best separation certificate");
  add_common(sep_cmd, true);
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact or sampled baseline");
  add_common(oracle_cmd, true);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--model", gen_flags.model, "indecisive | imprecise");
  gen_cmd->add_option("--seed", gen_flags.seed, "random seed");
  gen_cmd->add_option("--n", gen_flags.n, "region count (imprecise)");
  gen_cmd->add_option("--m", gen_flags.m, "color count (indecisive)");
  gen_cmd->add_option("--k", gen_flags.k, "class size / vertex cap");
  gen_cmd->add_option("--spread", gen_flags.spread, "coordinate range");
  gen_cmd->add_option("--overlap", gen_flags.overlap,
                      "positive: regions share a common point");
  gen_cmd->add_option("--output", gen_flags.output, "instance file to write");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(mindcs_cmd)) return cmd_mindcs(flags, out);
    if (app.got_subcommand(imprecise_cmd)) return cmd_imprecise(flags, out);
    if (app.got_subcommand(lp_cmd)) return cmd_lp(flags, out);
    if (app.got_subcommand(sep_cmd)) return cmd_separability(flags, out);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle(flags, out);
    if (app.got_subcommand(gen_cmd)) return cmd_gen(gen_flags, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2 + static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace mindiam::cli
