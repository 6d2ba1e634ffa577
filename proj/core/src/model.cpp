#include "tgv/model.hpp"

#include <stdexcept>

namespace tgv {

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Tv: return "tv";
    case ModelKind::TvCentral: return "tv-central";
    case ModelKind::TvCondat: return "tv-condat";
    case ModelKind::Tgv: return "tgv";
    case ModelKind::TgvNew: return "tgv-new";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(const std::string& name) {
  if (name == "tv") return ModelKind::Tv;
  if (name == "tv-central") return ModelKind::TvCentral;
  if (name == "tv-condat") return ModelKind::TvCondat;
  if (name == "tgv") return ModelKind::Tgv;
  if (name == "tgv-new") return ModelKind::TgvNew;
  return std::nullopt;
}

bool is_first_order(ModelKind kind) {
  return kind == ModelKind::Tv || kind == ModelKind::TvCentral ||
         kind == ModelKind::TvCondat;
}

void validate_model_spec(const ModelSpec& spec) {
  const std::string who = model_kind_name(spec.model);
  if (spec.iters < 1) {
    throw std::invalid_argument("model-spec: " + who +
                                " needs iters >= 1, got " +
                                std::to_string(spec.iters));
  }
  if (is_first_order(spec.model)) {
    if (!spec.lambda || spec.alpha0 || spec.alpha1) {
      throw std::invalid_argument("model-spec: " + who +
                                  " takes lambda and no alpha pair");
    }
  } else {
    if (spec.lambda || !spec.alpha1) {
      throw std::invalid_argument("model-spec: " + who +
                                  " takes alpha1 (alpha0 optional) and no "
                                  "lambda");
    }
    if (!spec.alpha0 && !(spec.alpha_ratio > 0.0)) {
      throw std::invalid_argument("model-spec: " + who +
                                  " needs alpha_ratio > 0 when alpha0 is "
                                  "derived");
    }
  }
}

std::pair<double, double> effective_weights(const ModelSpec& spec) {
  validate_model_spec(spec);
  if (is_first_order(spec.model)) return {*spec.lambda, 0.0};
  const double a1 = *spec.alpha1;
  const double a0 = spec.alpha0 ? *spec.alpha0 : spec.alpha_ratio * a1;
  return {a0, a1};
}

PdConfig config_for(const ModelSpec& spec) {
  validate_model_spec(spec);
  PdConfig cfg = is_first_order(spec.model) ? tv_default_config()
                                            : tgv_default_config();
  cfg.max_iters = spec.iters;
  if (spec.sigma) cfg.sigma = *spec.sigma;
  if (spec.tau) cfg.tau = *spec.tau;
  return cfg;
}

std::pair<GridImage, SolveReport> run_denoise(const GridImage& f,
                                              const ModelSpec& spec) {
  const PdConfig cfg = config_for(spec);

  switch (spec.model) {
    case ModelKind::Tv:
      return denoise_tv(f, *spec.lambda, cfg);
    case ModelKind::TvCentral:
      return denoise_tv_central(f, *spec.lambda, cfg);
    case ModelKind::TvCondat:
      return denoise_condat(f, *spec.lambda, cfg);
    case ModelKind::Tgv: {
      auto [a0, a1] = effective_weights(spec);
      return denoise_tgv(f, a0, a1, cfg);
    }
    case ModelKind::TgvNew: {
      auto [a0, a1] = effective_weights(spec);
      return denoise_tgv_new(f, a0, a1, cfg);
    }
  }
  throw std::invalid_argument("model-spec: unknown model");
}

}  // namespace tgv
