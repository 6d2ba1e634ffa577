#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "tgv/grid.hpp"
#include "tgv/ops_classic.hpp"
#include "tgv/ops_convert.hpp"

namespace tgv {

// Pointwise soft thresholding, the proximal map of threshold * ||.||_1 for
// the joint magnitudes of the functionals module:
//   (1 - threshold / max(|w|, threshold)) * w
// applied per pixel, with the tensor overload measuring |v| with the
// doubled off-diagonal term.  threshold = 0 is the identity.
CenterVec shrink(const CenterVec& w, double threshold);
CenteredVec shrink(const CenteredVec& w, double threshold);
CenterTensor shrink(const CenterTensor& v, double threshold);

// Proximal map of tau/2 * ||. - f||^2: elementwise (u + tau f) / (1 + tau).
GridImage prox_data(const GridImage& u, const GridImage& f, double tau);

// A solver variable: an ordered list of grid images.  Operators map blocks
// to blocks; proximal maps modify a block in place and receive the step
// size they were scaled by (sigma for dual maps, tau for primal ones).
using Block = std::vector<GridImage>;
using BlockOp = std::function<Block(const Block&)>;
using BlockProx = std::function<void(Block&, double)>;

struct PdConfig {
  double sigma = 0.0;
  double tau = 0.0;
  int max_iters = 0;
  // Energy is recorded every check_every iterations (the trace has
  // floor(iterations / check_every) entries).
  int check_every = 50;
  // 0 runs the full budget; a positive value stops once the relative
  // energy change between consecutive checks drops below it.
  double tol = 0.0;
};

// Paper defaults: first-order models run sigma = 0.99/3, tau = 0.99/8;
// both second-order models run sigma = tau = 5/37; denoising budgets are
// 500 iterations and value computations 1000.
PdConfig tv_default_config();
PdConfig tgv_default_config();
PdConfig value_default_config();

// Power-iteration estimate of an operator norm, run on the self-adjoint
// composition apply_adjoint(apply(.)) from a deterministic all-ones start.
// `estimate` is the converged Rayleigh-quotient root; `bound` adds a 5%
// safety inflation and is what the solvers check their step sizes against.
// If the Rayleigh quotient has not settled to 1e-6 relative within `iters`
// applications, the last value is returned with converged = false.
// `domain_weights` (one factor per block entry, default all ones) select
// the inner product; pass 2 on off-diagonal tensor components so the
// estimate matches the norm used by the proximal maps.
struct OpNormEstimate {
  double estimate = 0.0;
  double bound = 0.0;
  int iterations = 0;
  bool converged = false;
};

OpNormEstimate estimate_opnorm(const BlockOp& apply,
                               const BlockOp& apply_adjoint,
                               const Block& domain, int iters,
                               const std::vector<double>& domain_weights = {});

// One saddle-point problem: min_z F(A z) + G(z), handed to the iteration
// as the operator pair and the two proximal maps.
struct PdOps {
  BlockOp apply;          // A
  BlockOp apply_adjoint;  // A*
  BlockProx prox_dual;    // prox of sigma F*, in place
  BlockProx prox_primal;  // prox of tau G, in place
};

struct SolveReport {
  int iterations = 0;
  double final_energy = 0.0;
  // Max-norm defects of the instance's coupling constraints at the final
  // iterate (zero for models without constraints).
  std::pair<double, double> residuals{0.0, 0.0};
  double wall_seconds = 0.0;
  std::vector<double> energy_trace;
  OpNormEstimate opnorm;
};

using EnergyFn = std::function<double(const Block&)>;

struct PdResult {
  Block z;
  Block y;
  SolveReport report;
};

// The plain primal-dual iteration:
//   y   <- prox_dual(y + sigma A z~)
//   z'  <- prox_primal(z - tau A* y)
//   z~  <- 2 z' - z,  z <- z'
// run for cfg.max_iters iterations (or until the energy stalls when
// cfg.tol > 0).  `energy` may be empty; it is evaluated on z every
// cfg.check_every iterations and once at the end.
PdResult pd_solve(const PdOps& ops, Block z, Block y, const PdConfig& cfg,
                  const EnergyFn& energy);

// Denoising instances: minimize 1/2 ||u - f||^2 + regularizer(u), each in
// its constraint-split saddle form.  All of them start from u = f with
// every auxiliary and dual variable zero, which keeps runs reproducible
// and makes the quarter-turn equivariance of the staggered model exact.
// Each call verifies sigma * tau * bound^2 < 1 with a fresh power
// iteration before iterating.
std::pair<GridImage, SolveReport> denoise_tv(const GridImage& f,
                                             double lambda,
                                             const PdConfig& cfg =
                                                 tv_default_config());
std::pair<GridImage, SolveReport> denoise_tv_central(const GridImage& f,
                                                     double lambda,
                                                     const PdConfig& cfg =
                                                         tv_default_config());
std::pair<GridImage, SolveReport> denoise_condat(const GridImage& f,
                                                 double lambda,
                                                 const PdConfig& cfg =
                                                     tv_default_config());
std::pair<GridImage, SolveReport> denoise_tgv(const GridImage& f,
                                              double alpha0, double alpha1,
                                              const PdConfig& cfg =
                                                  tgv_default_config());
std::pair<GridImage, SolveReport> denoise_tgv_new(const GridImage& f,
                                                  double alpha0,
                                                  double alpha1,
                                                  const PdConfig& cfg =
                                                      tgv_default_config());

// Regularizer values at a fixed image, computed by solving the
// constrained-decomposition problems; the reported value is the
// energy of the final primal iterate.
std::pair<double, SolveReport> tgv_value_new(const GridImage& u,
                                             double alpha0, double alpha1,
                                             const PdConfig& cfg =
                                                 value_default_config());
std::pair<double, SolveReport> tgv_value_classic(const GridImage& u,
                                                 double alpha0, double alpha1,
                                                 const PdConfig& cfg =
                                                     value_default_config());

}  // namespace tgv
