// Command-line front end: denoising, functional values, rotation checks,
// parameter sweeps, synthetic phantoms, and image metrics.  Every command
// prints a JSON document on stdout; errors go to stderr as JSON.  Exit
// codes: 0 success, 1 runtime failure (I/O, missing files), 2 usage or
// contract error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgv/analysis.hpp"
#include "tgv/grid.hpp"
#include "tgv/io.hpp"
#include "tgv/model.hpp"
#include "tgv/report.hpp"
#include "tgv/solver.hpp"

namespace {

using nlohmann::json;

json encode_double(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "+inf" : "-inf";
}

void emit_error(const char* type, const std::string& message) {
  json j;
  j["error"] = {{"type", type}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

// Whole-file atomic text write, matching the PNG writer's discipline.
void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out.good()) {
      throw std::runtime_error("report-write: cannot create " + tmp);
    }
    out << text;
    if (!out.good()) {
      std::remove(tmp.c_str());
      throw std::runtime_error("report-write: failed writing " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("report-write: cannot move " + tmp +
                             " into place");
  }
}

// Option lookup that tolerates flags a subcommand does not define (App::count
// throws on unknown names).
int flag_count(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt ? static_cast<int>(opt->count()) : 0;
}

int thread_count_from_env() {
  const char* raw = std::getenv("TGV_THREADS");
  if (!raw) return 1;
  char* end = nullptr;
  const long n = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || n < 1) {
    throw std::invalid_argument(
        std::string("thread-count: TGV_THREADS must be a positive integer, "
                    "got '") +
        raw + "'");
  }
  return static_cast<int>(n);
}

// Flags shared by the commands that run a solver.
struct ModelFlags {
  std::string model;
  double lambda = 0.0;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha_ratio = 2.0;
  int iters = 0;
  double sigma = 0.0;
  double tau = 0.0;
};

void add_step_size_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--sigma", flags.sigma, "Dual step size (family default)");
  cmd->add_option("--tau", flags.tau, "Primal step size (family default)");
}

void add_model_flags(CLI::App* cmd, ModelFlags& flags, bool with_weights) {
  cmd->add_option("--model", flags.model,
                  "Model: tv, tv-central, tv-condat, tgv, tgv-new")
      ->required();
  if (with_weights) {
    cmd->add_option("--lambda", flags.lambda,
                    "Regularization weight (first-order models)");
    cmd->add_option("--alpha0", flags.alpha0,
                    "Second-order weight (defaults to alpha-ratio * alpha1)");
    cmd->add_option("--alpha1", flags.alpha1,
                    "First-order weight of the second-order models");
  }
  cmd->add_option("--alpha-ratio", flags.alpha_ratio,
                  "alpha0 / alpha1 when alpha0 is omitted (default 2)");
  cmd->add_option("--iters", flags.iters,
                  "Iteration budget (default: 500 grayscale, 1500 color)");
  add_step_size_flags(cmd, flags);
}

tgv::ModelSpec spec_from_flags(const CLI::App* cmd, const ModelFlags& flags,
                               int channels) {
  const auto kind = tgv::parse_model_kind(flags.model);
  if (!kind) {
    throw std::invalid_argument("model-spec: unknown model '" + flags.model +
                                "'");
  }
  tgv::ModelSpec spec;
  spec.model = *kind;
  if (flag_count(cmd, "--lambda")) spec.lambda = flags.lambda;
  if (flag_count(cmd, "--alpha0")) spec.alpha0 = flags.alpha0;
  if (flag_count(cmd, "--alpha1")) spec.alpha1 = flags.alpha1;
  spec.alpha_ratio = flags.alpha_ratio;
  spec.iters =
      flag_count(cmd, "--iters") ? flags.iters : (channels == 3 ? 1500 : 500);
  if (flag_count(cmd, "--sigma")) spec.sigma = flags.sigma;
  if (flag_count(cmd, "--tau")) spec.tau = flags.tau;
  return spec;
}

json metric_json(const tgv::MetricPair& m) {
  return {{"psnr", encode_double(m.psnr)}, {"ssim", encode_double(m.ssim)}};
}

struct DenoiseArgs {
  ModelFlags flags;
  std::string input, output, reference, report_path;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  int bit_depth = 16;
};

int run_denoise_cmd(const CLI::App* cmd, const DenoiseArgs& args) {
  const tgv::GridImage loaded = tgv::load_png(args.input);
  tgv::ModelSpec spec = spec_from_flags(cmd, args.flags, loaded.channels);

  tgv::NoiseSpec noise;
  tgv::GridImage f = loaded;
  if (cmd->count("--noise-sigma")) {
    noise.applied = true;
    noise.sigma = args.noise_sigma;
    noise.seed = args.seed;
    spec.seed = args.seed;
    f = tgv::add_gaussian_noise(loaded, args.noise_sigma, args.seed);
  }

  const auto [u, solve] = tgv::run_denoise(f, spec);
  tgv::save_png(u, args.output, args.bit_depth);

  tgv::RunReport report = tgv::make_report("denoise", spec);
  report.input_digest = tgv::image_digest(loaded);
  report.noise = noise;
  report.final_energy = solve.final_energy;
  report.energy_trace = solve.energy_trace;
  report.iterations = solve.iterations;
  report.wall_seconds = solve.wall_seconds;
  if (!args.reference.empty()) {
    report.metric = tgv::metrics(u, tgv::load_png(args.reference));
  }

  const std::string text = tgv::report_to_json(report);
  std::cout << text;
  if (!args.report_path.empty()) write_text_atomic(args.report_path, text);
  return 0;
}

struct ValueArgs {
  std::string input, which = "both", report_path;
  double alpha0 = 0.0, alpha1 = 0.0;
  ModelFlags flags;  // for --iters/--sigma/--tau reuse
};

int run_value_cmd(const CLI::App* cmd, const ValueArgs& args) {
  if (args.which != "classic" && args.which != "new" && args.which != "both") {
    throw std::invalid_argument(
        "tgv-value: --which must be classic, new, or both");
  }
  const tgv::GridImage u = tgv::load_png(args.input);

  tgv::ModelSpec spec;
  spec.model = tgv::ModelKind::TgvNew;
  spec.alpha0 = args.alpha0;
  spec.alpha1 = args.alpha1;
  spec.iters = cmd->count("--iters") ? args.flags.iters : 1000;
  if (cmd->count("--sigma")) spec.sigma = args.flags.sigma;
  if (cmd->count("--tau")) spec.tau = args.flags.tau;
  tgv::validate_model_spec(spec);

  tgv::PdConfig cfg = tgv::value_default_config();
  cfg.max_iters = spec.iters;
  if (spec.sigma) cfg.sigma = *spec.sigma;
  if (spec.tau) cfg.tau = *spec.tau;

  tgv::RunReport report = tgv::make_report("tgv-value", spec);
  report.sigma_used = cfg.sigma;
  report.tau_used = cfg.tau;
  report.input_digest = tgv::image_digest(u);
  double wall = 0.0;
  int iterations = 0;
  if (args.which != "new") {
    const auto [value, solve] =
        tgv::tgv_value_classic(u, args.alpha0, args.alpha1, cfg);
    report.value_classic = value;
    report.final_energy = value;
    wall += solve.wall_seconds;
    iterations = solve.iterations;
  }
  if (args.which != "classic") {
    const auto [value, solve] =
        tgv::tgv_value_new(u, args.alpha0, args.alpha1, cfg);
    report.value_new = value;
    report.final_energy = value;
    report.energy_trace = solve.energy_trace;
    wall += solve.wall_seconds;
    iterations = solve.iterations;
  }
  report.iterations = iterations;
  report.wall_seconds = wall;

  const std::string text = tgv::report_to_json(report);
  std::cout << text;
  if (!args.report_path.empty()) write_text_atomic(args.report_path, text);
  return 0;
}

struct RotCheckArgs {
  std::string input, report_path;
  double alpha0 = 0.0, alpha1 = 0.0;
  ModelFlags flags;
};

int run_rot_check_cmd(const CLI::App* cmd, const RotCheckArgs& args) {
  const tgv::GridImage u = tgv::load_png(args.input);
  tgv::PdConfig cfg = tgv::value_default_config();
  if (cmd->count("--iters")) cfg.max_iters = args.flags.iters;
  if (cmd->count("--sigma")) cfg.sigma = args.flags.sigma;
  if (cmd->count("--tau")) cfg.tau = args.flags.tau;

  const tgv::InvarianceReport rep =
      tgv::invariance_report(u, args.alpha0, args.alpha1, cfg);

  json j;
  j["schema"] = "tgv-rotcheck/1";
  j["tool_version"] = tgv::tool_version();
  j["input_digest"] = tgv::image_digest(u);
  j["alpha0"] = args.alpha0;
  j["alpha1"] = args.alpha1;
  j["iters"] = cfg.max_iters;
  j["classic"] = {{"value", rep.classic_value},
                  {"rotated", rep.classic_rotated},
                  {"abs", rep.classic_abs},
                  {"rel", rep.classic_rel}};
  j["new"] = {{"value", rep.new_value},
              {"rotated", rep.new_rotated},
              {"abs", rep.new_abs},
              {"rel", rep.new_rel}};
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!args.report_path.empty()) write_text_atomic(args.report_path, text);
  return 0;
}

struct SweepArgs {
  ModelFlags flags;
  std::string input, reference, report_path;
  std::vector<double> values;
  double lo = 0.0, hi = 0.0;
  int count = 0;
  bool log_spacing = false;
};

std::vector<double> sweep_grid(const CLI::App* cmd, const SweepArgs& args) {
  const bool have_values = cmd->count("--values") > 0;
  const bool have_range = cmd->count("--min") || cmd->count("--max") ||
                          cmd->count("--count");
  if (have_values == have_range) {
    throw std::invalid_argument(
        "sweep-grid: give either --values or the --min/--max/--count trio");
  }
  if (have_values) return args.values;
  if (!cmd->count("--min") || !cmd->count("--max") || !cmd->count("--count")) {
    throw std::invalid_argument(
        "sweep-grid: --min, --max, and --count go together");
  }
  if (args.count < 1) {
    throw std::invalid_argument("sweep-grid: --count must be >= 1");
  }
  if (args.count == 1) return {args.lo};
  std::vector<double> grid(args.count);
  if (args.log_spacing) {
    if (!(args.lo > 0.0) || !(args.hi > 0.0)) {
      throw std::invalid_argument(
          "sweep-grid: --log needs positive --min and --max");
    }
    const double step = std::log(args.hi / args.lo) / (args.count - 1);
    for (int k = 0; k < args.count; ++k)
      grid[k] = args.lo * std::exp(step * k);
  } else {
    const double step = (args.hi - args.lo) / (args.count - 1);
    for (int k = 0; k < args.count; ++k) grid[k] = args.lo + step * k;
  }
  return grid;
}

int run_sweep_cmd(const CLI::App* cmd, const SweepArgs& args) {
  const tgv::GridImage f = tgv::load_png(args.input);
  const tgv::GridImage ref = tgv::load_png(args.reference);
  const tgv::ModelSpec tmpl = spec_from_flags(cmd, args.flags, f.channels);
  const std::vector<double> grid = sweep_grid(cmd, args);
  const int threads = thread_count_from_env();

  const tgv::SweepResult result = tgv::sweep(f, ref, tmpl, grid, threads);

  json j;
  j["schema"] = "tgv-sweep/1";
  j["tool_version"] = tgv::tool_version();
  j["model"] = tgv::model_kind_name(tmpl.model);
  j["input_digest"] = tgv::image_digest(f);
  j["reference_digest"] = tgv::image_digest(ref);
  j["iters"] = tmpl.iters;
  j["alpha_ratio"] = tmpl.alpha_ratio;
  json points = json::array();
  for (const tgv::SweepPoint& pt : result.points) {
    json p;
    p["value"] = pt.value;
    p["valid"] = pt.valid;
    if (pt.valid) {
      p["metric"] = metric_json(pt.metric);
    } else {
      p["error"] = pt.error;
    }
    points.push_back(p);
  }
  j["points"] = points;
  j["argmax"] = result.argmax;
  j["best"] = {{"value", result.points[result.argmax].value},
               {"metric", metric_json(result.best)}};
  j["argmax_on_boundary"] = result.argmax_on_boundary;
  if (result.argmax_on_boundary) {
    j["warnings"] = json::array({"argmax-on-boundary"});
    std::cerr << "warning: best value sits on the grid boundary; "
                 "widen the range\n";
  }
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!args.report_path.empty()) write_text_atomic(args.report_path, text);
  return 0;
}

struct PhantomArgs {
  std::string kind, output;
  int n1 = 0, n2 = 0, square = 8, bit_depth = 16;
};

int run_phantom_cmd(const PhantomArgs& args) {
  tgv::PhantomKind kind;
  if (args.kind == "checkerboard") {
    kind = tgv::PhantomKind::Checkerboard;
  } else if (args.kind == "piecewise-smooth") {
    kind = tgv::PhantomKind::PiecewiseSmooth;
  } else if (args.kind == "piecewise-affine") {
    kind = tgv::PhantomKind::PiecewiseAffine;
  } else {
    throw std::invalid_argument(
        "phantom-params: kind must be checkerboard, piecewise-smooth, or "
        "piecewise-affine, got '" +
        args.kind + "'");
  }
  const tgv::GridImage u = tgv::make_phantom(kind, args.n1, args.n2,
                                             args.square);
  tgv::save_png(u, args.output, args.bit_depth);
  json j;
  j["schema"] = "tgv-phantom/1";
  j["kind"] = args.kind;
  j["n1"] = args.n1;
  j["n2"] = args.n2;
  j["square"] = args.square;
  j["output"] = args.output;
  j["digest"] = tgv::image_digest(u);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_metrics_cmd(const std::string& input, const std::string& reference) {
  const tgv::GridImage u = tgv::load_png(input);
  const tgv::GridImage ref = tgv::load_png(reference);
  const tgv::MetricPair m = tgv::metrics(u, ref);
  json j;
  j["schema"] = "tgv-metrics/1";
  j["input_digest"] = tgv::image_digest(u);
  j["reference_digest"] = tgv::image_digest(ref);
  j["psnr"] = encode_double(m.psnr);
  j["ssim"] = encode_double(m.ssim);
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Staggered-grid TV/TGV denoising, functional values, and rotation "
      "checks"};
  app.set_version_flag("--version", tgv::tool_version());
  app.require_subcommand(1);

  DenoiseArgs dn;
  CLI::App* denoise = app.add_subcommand(
      "denoise", "Denoise a PNG and write the result plus a JSON report");
  add_model_flags(denoise, dn.flags, true);
  denoise->add_option("--input", dn.input, "Input PNG")->required();
  denoise->add_option("--output", dn.output, "Output PNG")->required();
  denoise->add_option("--reference", dn.reference,
                      "Clean PNG to score the result against");
  denoise->add_option("--noise-sigma", dn.noise_sigma,
                      "Add Gaussian noise of this level before solving");
  denoise->add_option("--seed", dn.seed, "Noise seed (default 0)");
  denoise->add_option("--report", dn.report_path,
                      "Also write the JSON report to this file");
  denoise->add_option("--bit-depth", dn.bit_depth,
                      "Output PNG bit depth, 8 or 16 (default 16)");

  ValueArgs tv;
  CLI::App* value = app.add_subcommand(
      "tgv-value", "Evaluate the second-order functionals on an image");
  value->add_option("--input", tv.input, "Input PNG")->required();
  value->add_option("--alpha0", tv.alpha0, "Second-order weight")->required();
  value->add_option("--alpha1", tv.alpha1, "First-order weight")->required();
  value->add_option("--which", tv.which,
                    "Which discretization: classic, new, or both (default)");
  value->add_option("--iters", tv.flags.iters,
                    "Iteration budget (default 1000)");
  add_step_size_flags(value, tv.flags);
  value->add_option("--report", tv.report_path,
                    "Also write the JSON report to this file");

  RotCheckArgs rc;
  CLI::App* rot = app.add_subcommand(
      "rot-check",
      "Compare both functionals on an image and its quarter rotation");
  rot->add_option("--input", rc.input, "Input PNG")->required();
  rot->add_option("--alpha0", rc.alpha0, "Second-order weight")->required();
  rot->add_option("--alpha1", rc.alpha1, "First-order weight")->required();
  rot->add_option("--iters", rc.flags.iters,
                  "Iteration budget (default 1000)");
  add_step_size_flags(rot, rc.flags);
  rot->add_option("--report", rc.report_path,
                  "Also write the JSON report to this file");

  SweepArgs sw;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Score a parameter grid against a reference image");
  add_model_flags(sweep_cmd, sw.flags, false);
  sweep_cmd->add_option("--input", sw.input, "Noisy input PNG")->required();
  sweep_cmd->add_option("--reference", sw.reference, "Clean reference PNG")
      ->required();
  sweep_cmd->add_option("--values", sw.values,
                        "Comma-separated parameter values")
      ->delimiter(',');
  sweep_cmd->add_option("--min", sw.lo, "Grid start");
  sweep_cmd->add_option("--max", sw.hi, "Grid end");
  sweep_cmd->add_option("--count", sw.count, "Grid size");
  sweep_cmd->add_flag("--log", sw.log_spacing, "Geometric spacing");
  sweep_cmd->add_option("--report", sw.report_path,
                        "Also write the JSON result to this file");

  PhantomArgs ph;
  CLI::App* phantom = app.add_subcommand(
      "phantom", "Write a deterministic synthetic test image");
  phantom->add_option("--kind", ph.kind,
                      "checkerboard, piecewise-smooth, or piecewise-affine")
      ->required();
  phantom->add_option("--n1", ph.n1, "Rows")->required();
  phantom->add_option("--n2", ph.n2, "Columns")->required();
  phantom->add_option("--square", ph.square,
                      "Checkerboard square size (default 8)");
  phantom->add_option("--output", ph.output, "Output PNG")->required();
  phantom->add_option("--bit-depth", ph.bit_depth,
                      "Output PNG bit depth, 8 or 16 (default 16)");

  std::string m_input, m_reference;
  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "PSNR/SSIM between two PNG files");
  metrics_cmd->add_option("--input", m_input, "Image to score")->required();
  metrics_cmd->add_option("--reference", m_reference, "Reference image")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << app.help() << std::flush;
    emit_error("usage", e.what());
    return 2;
  }

  try {
    if (denoise->parsed()) return run_denoise_cmd(denoise, dn);
    if (value->parsed()) return run_value_cmd(value, tv);
    if (rot->parsed()) return run_rot_check_cmd(rot, rc);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_cmd, sw);
    if (phantom->parsed()) return run_phantom_cmd(ph);
    if (metrics_cmd->parsed()) return run_metrics_cmd(m_input, m_reference);
    emit_error("usage", "no command given");
    return 2;
  } catch (const std::invalid_argument& e) {
    emit_error("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("runtime", e.what());
    return 1;
  }
}
