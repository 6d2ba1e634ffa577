#include "tgv/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace tgv {

namespace {

using nlohmann::json;

// PSNR of identical images is +infinity, which JSON numbers cannot carry;
// non-finite values travel as strings and come back intact.
json encode_double(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "+inf" : "-inf";
}

double decode_double(const json& j, const char* where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument(std::string("report-parse: bad number in ") +
                              where);
}

json spec_to_json(const ModelSpec& spec) {
  json j;
  j["name"] = model_kind_name(spec.model);
  if (spec.lambda) j["lambda"] = *spec.lambda;
  if (spec.alpha0) j["alpha0"] = *spec.alpha0;
  if (spec.alpha1) j["alpha1"] = *spec.alpha1;
  j["alpha_ratio"] = spec.alpha_ratio;
  j["iters"] = spec.iters;
  if (spec.sigma) j["sigma"] = *spec.sigma;
  if (spec.tau) j["tau"] = *spec.tau;
  if (spec.seed) j["seed"] = *spec.seed;
  return j;
}

ModelSpec spec_from_json(const json& j) {
  ModelSpec spec;
  const auto kind = parse_model_kind(j.at("name").get<std::string>());
  if (!kind) {
    throw std::invalid_argument("report-parse: unknown model '" +
                                j.at("name").get<std::string>() + "'");
  }
  spec.model = *kind;
  if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
  if (j.contains("alpha0")) spec.alpha0 = j.at("alpha0").get<double>();
  if (j.contains("alpha1")) spec.alpha1 = j.at("alpha1").get<double>();
  spec.alpha_ratio = j.at("alpha_ratio").get<double>();
  spec.iters = j.at("iters").get<int>();
  if (j.contains("sigma")) spec.sigma = j.at("sigma").get<double>();
  if (j.contains("tau")) spec.tau = j.at("tau").get<double>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

}  // namespace

const char* tool_version() {
#ifdef TGV_TOOL_VERSION
  return TGV_TOOL_VERSION;
#else
  return "0.0.0";
#endif
}

const char* report_schema() { return "tgv-report/1"; }

RunReport make_report(const std::string& command, const ModelSpec& spec) {
  RunReport r;
  r.schema = report_schema();
  r.tool_version = tool_version();
  r.command = command;
  r.spec = spec;
  const PdConfig cfg = config_for(spec);
  r.sigma_used = cfg.sigma;
  r.tau_used = cfg.tau;
  if (is_first_order(spec.model)) {
    r.lambda_used = effective_weights(spec).first;
  } else {
    const auto [a0, a1] = effective_weights(spec);
    r.alpha0_used = a0;
    r.alpha1_used = a1;
  }
  r.iterations = spec.iters;
  return r;
}

std::string report_to_json(const RunReport& report, int indent) {
  json j;
  j["schema"] = report.schema;
  j["tool_version"] = report.tool_version;
  j["command"] = report.command;
  j["input_digest"] = report.input_digest;
  j["model"] = spec_to_json(report.spec);

  json eff;
  eff["sigma"] = report.sigma_used;
  eff["tau"] = report.tau_used;
  if (report.lambda_used) eff["lambda"] = *report.lambda_used;
  if (report.alpha0_used) eff["alpha0"] = *report.alpha0_used;
  if (report.alpha1_used) eff["alpha1"] = *report.alpha1_used;
  j["effective"] = eff;

  json noise;
  noise["applied"] = report.noise.applied;
  noise["sigma"] = report.noise.sigma;
  noise["seed"] = report.noise.seed;
  j["noise"] = noise;

  if (report.metric) {
    j["metric"] = {{"psnr", encode_double(report.metric->psnr)},
                   {"ssim", encode_double(report.metric->ssim)}};
  }

  j["energy"] = {{"final", report.final_energy},
                 {"trace", report.energy_trace}};
  if (report.value_classic) j["values"]["classic"] = *report.value_classic;
  if (report.value_new) j["values"]["new"] = *report.value_new;
  j["iterations"] = report.iterations;
  j["wall_seconds"] = report.wall_seconds;
  return j.dump(indent) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report-parse: ") + e.what());
  }
  try {
    RunReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != report_schema()) {
      throw std::invalid_argument("report-schema: unknown schema '" +
                                  r.schema + "'");
    }
    r.tool_version = j.at("tool_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.spec = spec_from_json(j.at("model"));

    const json& eff = j.at("effective");
    r.sigma_used = eff.at("sigma").get<double>();
    r.tau_used = eff.at("tau").get<double>();
    if (eff.contains("lambda")) r.lambda_used = eff.at("lambda").get<double>();
    if (eff.contains("alpha0")) r.alpha0_used = eff.at("alpha0").get<double>();
    if (eff.contains("alpha1")) r.alpha1_used = eff.at("alpha1").get<double>();

    const json& noise = j.at("noise");
    r.noise.applied = noise.at("applied").get<bool>();
    r.noise.sigma = noise.at("sigma").get<double>();
    r.noise.seed = noise.at("seed").get<std::uint64_t>();

    if (j.contains("metric")) {
      MetricPair m;
      m.psnr = decode_double(j.at("metric").at("psnr"), "metric.psnr");
      m.ssim = decode_double(j.at("metric").at("ssim"), "metric.ssim");
      r.metric = m;
    }
    r.final_energy = j.at("energy").at("final").get<double>();
    r.energy_trace = j.at("energy").at("trace").get<std::vector<double>>();
    if (j.contains("values")) {
      const json& values = j.at("values");
      if (values.contains("classic"))
        r.value_classic = values.at("classic").get<double>();
      if (values.contains("new")) r.value_new = values.at("new").get<double>();
    }
    r.iterations = j.at("iterations").get<int>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report-parse: ") + e.what());
  }
}

}  // namespace tgv
