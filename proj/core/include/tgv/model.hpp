#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "tgv/grid.hpp"
#include "tgv/solver.hpp"

namespace tgv {

// The five denoising models the library ships.
enum class ModelKind { Tv, TvCentral, TvCondat, Tgv, TgvNew };

const char* model_kind_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(const std::string& name);

// True for the models regularized by a single weight lambda.
bool is_first_order(ModelKind kind);

// One fully described solver run.  Exactly one of lambda or the alpha pair
// must be populated, matching the model family; alpha0 may be left empty
// for the second-order family, in which case alpha0 = alpha_ratio * alpha1.
struct ModelSpec {
  ModelKind model = ModelKind::Tv;
  std::optional<double> lambda;
  std::optional<double> alpha0;
  std::optional<double> alpha1;
  double alpha_ratio = 2.0;
  int iters = 500;
  std::optional<double> sigma;
  std::optional<double> tau;
  std::optional<std::uint64_t> seed;  // for callers that add noise

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Throws invalid_argument ("model-spec: ...") unless the spec satisfies the
// family rules above and iters >= 1.
void validate_model_spec(const ModelSpec& spec);

// The regularization weights a run of this spec would use; for the
// second-order family the pair is (alpha0 or ratio*alpha1, alpha1).
std::pair<double, double> effective_weights(const ModelSpec& spec);

// The solver configuration a run of this spec would use: the family's
// reference step sizes unless the spec overrides them, and the spec's
// iteration budget.
PdConfig config_for(const ModelSpec& spec);

// Dispatches to the matching denoiser with the family's reference step
// sizes unless the spec overrides them.
std::pair<GridImage, SolveReport> run_denoise(const GridImage& f,
                                              const ModelSpec& spec);

}  // namespace tgv
