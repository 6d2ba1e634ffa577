#include "tgv/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "tgv/functionals.hpp"
#include "tgv/ops_staggered.hpp"

namespace tgv {

namespace {

void require_center(const GridImage& u, const char* who) {
  if (u.kind != GridKind::Center) {
    throw std::invalid_argument(std::string("unsupported-kind: ") + who +
                                " expects a Center image, got " +
                                grid_kind_name(u.kind));
  }
}

void require_positive(double value, const char* what, const char* who) {
  if (!(value > 0.0)) {
    throw std::invalid_argument(std::string("nonpositive-") + what + ": " +
                                who + " needs " + what + " > 0, got " +
                                std::to_string(value));
  }
}

// Scale both components of a two-image pair at one pixel by the shrink
// factor of the joint magnitude.
template <typename Pair>
Pair shrink_pair(const Pair& w, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument(
        "negative-threshold: shrink needs threshold >= 0, got " +
        std::to_string(threshold));
  }
  if (!w.c1.same_shape(w.c2)) {
    throw std::invalid_argument("shape-mismatch: components of shrink");
  }
  Pair out = w;
  const int rows = w.c1.rows();
  const int cols = w.c1.cols();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int c = 0; c < w.c1.channels; ++c) {
        s += w.c1.at(i, j, c) * w.c1.at(i, j, c) +
             w.c2.at(i, j, c) * w.c2.at(i, j, c);
      }
      double m = std::sqrt(s);
      double d = std::max(m, threshold);
      double factor = d > 0.0 ? 1.0 - threshold / d : 0.0;
      for (int c = 0; c < w.c1.channels; ++c) {
        out.c1.at(i, j, c) = factor * w.c1.at(i, j, c);
        out.c2.at(i, j, c) = factor * w.c2.at(i, j, c);
      }
    }
  }
  return out;
}

double squared_distance(const GridImage& a, const GridImage& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    double d = a.data[k] - b.data[k];
    s += d * d;
  }
  return s;
}

double max_abs(const GridImage& a) {
  double m = 0.0;
  for (double x : a.data) m = std::max(m, std::abs(x));
  return m;
}

GridImage zeros_like(const GridImage& a) {
  return new_image(a.kind, a.n1, a.n2, a.channels);
}

void validate_config(const PdConfig& cfg, const char* who) {
  if (!(cfg.sigma > 0.0) || !(cfg.tau > 0.0)) {
    throw std::invalid_argument(std::string("step-size: ") + who +
                                " needs sigma > 0 and tau > 0");
  }
  if (cfg.max_iters < 1 || cfg.check_every < 1) {
    throw std::invalid_argument(std::string("solver-config: ") + who +
                                " needs max_iters >= 1 and check_every >= 1");
  }
  if (cfg.tol < 0.0) {
    throw std::invalid_argument(std::string("solver-config: ") + who +
                                " needs tol >= 0");
  }
}

// Confirm sigma*tau*||A||^2 < 1 against the safety-inflated power-iteration
// bound before any iterations run.
OpNormEstimate verify_step_sizes(const BlockOp& apply,
                                 const BlockOp& apply_adjoint,
                                 const Block& domain,
                                 const std::vector<double>& weights,
                                 const PdConfig& cfg, const char* who) {
  OpNormEstimate est =
      estimate_opnorm(apply, apply_adjoint, domain, 500, weights);
  double product = cfg.sigma * cfg.tau * est.bound * est.bound;
  if (!(product < 1.0)) {
    throw std::invalid_argument(
        std::string("step-size: ") + who +
        " needs sigma*tau*||A||^2 < 1, got " + std::to_string(product) +
        " with the power-iteration bound " + std::to_string(est.bound));
  }
  return est;
}

}  // namespace

CenterVec shrink(const CenterVec& w, double threshold) {
  return shrink_pair(w, threshold);
}

CenteredVec shrink(const CenteredVec& w, double threshold) {
  return shrink_pair(w, threshold);
}

CenterTensor shrink(const CenterTensor& v, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument(
        "negative-threshold: shrink needs threshold >= 0, got " +
        std::to_string(threshold));
  }
  if (!v.t1.same_shape(v.t2) || !v.t1.same_shape(v.t3)) {
    throw std::invalid_argument("shape-mismatch: components of shrink");
  }
  CenterTensor out = v;
  const int rows = v.t1.rows();
  const int cols = v.t1.cols();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int c = 0; c < v.t1.channels; ++c) {
        s += v.t1.at(i, j, c) * v.t1.at(i, j, c) +
             v.t2.at(i, j, c) * v.t2.at(i, j, c) +
             2.0 * v.t3.at(i, j, c) * v.t3.at(i, j, c);
      }
      double m = std::sqrt(s);
      double d = std::max(m, threshold);
      double factor = d > 0.0 ? 1.0 - threshold / d : 0.0;
      for (int c = 0; c < v.t1.channels; ++c) {
        out.t1.at(i, j, c) = factor * v.t1.at(i, j, c);
        out.t2.at(i, j, c) = factor * v.t2.at(i, j, c);
        out.t3.at(i, j, c) = factor * v.t3.at(i, j, c);
      }
    }
  }
  return out;
}

GridImage prox_data(const GridImage& u, const GridImage& f, double tau) {
  require_positive(tau, "tau", "prox_data");
  if (!u.same_shape(f)) {
    throw std::invalid_argument("shape-mismatch: prox_data arguments");
  }
  GridImage out = u;
  for (std::size_t k = 0; k < u.data.size(); ++k) {
    out.data[k] = (u.data[k] + tau * f.data[k]) / (1.0 + tau);
  }
  return out;
}

PdConfig tv_default_config() {
  return PdConfig{0.99 / 3.0, 0.99 / 8.0, 500, 50, 0.0};
}

PdConfig tgv_default_config() {
  return PdConfig{5.0 / 37.0, 5.0 / 37.0, 500, 50, 0.0};
}

PdConfig value_default_config() {
  return PdConfig{5.0 / 37.0, 5.0 / 37.0, 1000, 50, 0.0};
}

OpNormEstimate estimate_opnorm(const BlockOp& apply,
                               const BlockOp& apply_adjoint,
                               const Block& domain, int iters,
                               const std::vector<double>& domain_weights) {
  if (iters < 1) {
    throw std::invalid_argument("solver-config: estimate_opnorm needs "
                                "iters >= 1");
  }
  if (domain.empty()) {
    throw std::invalid_argument(
        "shape-mismatch: estimate_opnorm needs a nonempty domain block");
  }
  std::vector<double> w = domain_weights;
  if (w.empty()) w.assign(domain.size(), 1.0);
  if (w.size() != domain.size()) {
    throw std::invalid_argument(
        "shape-mismatch: estimate_opnorm weights must match the domain");
  }

  auto weighted_dot = [&w](const Block& a, const Block& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * inner(a[i], b[i]);
    return s;
  };

  // Deterministic pseudo-random start: the all-ones field sits in the
  // kernel of every difference operator and would stall the iteration at 0.
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  Block x = domain;
  for (GridImage& img : x) {
    for (double& v : img.data) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      v = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
  }
  double nx = std::sqrt(weighted_dot(x, x));
  for (GridImage& img : x)
    for (double& v : img.data) v /= nx;

  OpNormEstimate result;
  double lambda = 0.0;
  for (int it = 1; it <= iters; ++it) {
    Block tx = apply_adjoint(apply(x));
    double rayleigh = weighted_dot(x, tx);
    result.iterations = it;
    if (it > 1 && std::abs(rayleigh - lambda) <=
                      1e-6 * std::max(std::abs(rayleigh), 1e-300)) {
      lambda = rayleigh;
      result.converged = true;
      break;
    }
    lambda = rayleigh;
    double n = std::sqrt(weighted_dot(tx, tx));
    if (n == 0.0) {
      // The iterate landed in the kernel of A*A; the Rayleigh quotient is
      // already 0 and cannot recover, so report what we have.
      result.converged = lambda == 0.0;
      break;
    }
    for (std::size_t i = 0; i < tx.size(); ++i)
      for (std::size_t k = 0; k < tx[i].data.size(); ++k)
        x[i].data[k] = tx[i].data[k] / n;
  }
  result.estimate = std::sqrt(std::max(lambda, 0.0));
  result.bound = 1.05 * result.estimate;
  return result;
}

PdResult pd_solve(const PdOps& ops, Block z, Block y, const PdConfig& cfg,
                  const EnergyFn& energy) {
  validate_config(cfg, "pd_solve");
  auto start = std::chrono::steady_clock::now();

  SolveReport report;
  Block ztilde = z;
  double previous_energy = 0.0;
  bool have_previous = false;
  int k = 0;
  while (k < cfg.max_iters) {
    Block az = ops.apply(ztilde);
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (std::size_t m = 0; m < y[i].data.size(); ++m) {
        y[i].data[m] = y[i].data[m] + cfg.sigma * az[i].data[m];
      }
    }
    ops.prox_dual(y, cfg.sigma);

    Block znew = ops.apply_adjoint(y);
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (std::size_t m = 0; m < z[i].data.size(); ++m) {
        znew[i].data[m] = z[i].data[m] - cfg.tau * znew[i].data[m];
      }
    }
    ops.prox_primal(znew, cfg.tau);

    for (std::size_t i = 0; i < z.size(); ++i) {
      for (std::size_t m = 0; m < z[i].data.size(); ++m) {
        ztilde[i].data[m] = 2.0 * znew[i].data[m] - z[i].data[m];
      }
    }
    z = std::move(znew);
    ++k;

    if (k % cfg.check_every == 0 && energy) {
      double e = energy(z);
      report.energy_trace.push_back(e);
      if (cfg.tol > 0.0 && have_previous &&
          std::abs(e - previous_energy) <
              cfg.tol * std::max(std::abs(previous_energy), 1e-300)) {
        break;
      }
      previous_energy = e;
      have_previous = true;
    }
  }

  report.iterations = k;
  report.final_energy = energy ? energy(z) : 0.0;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return PdResult{std::move(z), std::move(y), std::move(report)};
}

// ---------------------------------------------------------------------------
// First-order denoising instances.

namespace {

// Projection of a two-component field onto the pointwise ball of the given
// radius: w = radius * p / max(|p|, radius), with the joint channel norm.
void project_ball(GridImage& c1, GridImage& c2, double radius) {
  const int rows = c1.rows();
  const int cols = c1.cols();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int c = 0; c < c1.channels; ++c) {
        s += c1.at(i, j, c) * c1.at(i, j, c) +
             c2.at(i, j, c) * c2.at(i, j, c);
      }
      double m = std::sqrt(s);
      double factor = radius / std::max(m, radius);
      for (int c = 0; c < c1.channels; ++c) {
        c1.at(i, j, c) = factor * c1.at(i, j, c);
        c2.at(i, j, c) = factor * c2.at(i, j, c);
      }
    }
  }
}

std::pair<GridImage, SolveReport> denoise_first_order(
    const GridImage& f, double lambda, const PdConfig& cfg, bool central,
    const char* who) {
  require_center(f, who);
  require_positive(lambda, "lambda", who);
  validate_config(cfg, who);

  PdOps ops;
  ops.apply = [central](const Block& z) {
    CenterVec g = central ? grad_central(z[0]) : grad(z[0]);
    return Block{std::move(g.c1), std::move(g.c2)};
  };
  ops.apply_adjoint = [central](const Block& y) {
    CenterVec p{y[0], y[1]};
    GridImage d = central ? div_central(p) : div_vec(p);
    for (double& x : d.data) x = -x;
    return Block{std::move(d)};
  };
  ops.prox_dual = [lambda](Block& y, double) {
    project_ball(y[0], y[1], lambda);
  };
  ops.prox_primal = [&f](Block& z, double tau) {
    z[0] = prox_data(z[0], f, tau);
  };

  OpNormEstimate est = verify_step_sizes(
      ops.apply, ops.apply_adjoint, Block{zeros_like(f)}, {}, cfg, who);

  EnergyFn energy = [&f, lambda, central](const Block& z) {
    double tv = central ? tv_central(z[0]) : tv_iso(z[0]);
    return 0.5 * squared_distance(z[0], f) + lambda * tv;
  };

  PdResult r = pd_solve(ops, Block{f},
                        Block{zeros_like(f), zeros_like(f)}, cfg, energy);
  r.report.opnorm = est;
  return {std::move(r.z[0]), std::move(r.report)};
}

}  // namespace

std::pair<GridImage, SolveReport> denoise_tv(const GridImage& f,
                                             double lambda,
                                             const PdConfig& cfg) {
  return denoise_first_order(f, lambda, cfg, false, "denoise_tv");
}

std::pair<GridImage, SolveReport> denoise_tv_central(const GridImage& f,
                                                     double lambda,
                                                     const PdConfig& cfg) {
  return denoise_first_order(f, lambda, cfg, true, "denoise_tv_central");
}

std::pair<GridImage, SolveReport> denoise_condat(const GridImage& f,
                                                 double lambda,
                                                 const PdConfig& cfg) {
  const char* who = "denoise_condat";
  require_center(f, who);
  require_positive(lambda, "lambda", who);
  validate_config(cfg, who);

  // Primal block: (w_dot, w_lr, w_ud, u) as pairs of Center images plus the
  // image; dual block: the two-component multiplier of the constraint
  // L_dot* w_dot + L_lr* w_lr + L_ud* w_ud = grad(u).
  PdOps ops;
  ops.apply = [](const Block& z) {
    CenterVec a = condat_adj_L_dot(CenterVec{z[0], z[1]});
    CenterVec b = condat_adj_L_lr(CenterVec{z[2], z[3]});
    CenterVec c = condat_adj_L_ud(CenterVec{z[4], z[5]});
    CenterVec g = grad(z[6]);
    for (std::size_t k = 0; k < a.c1.data.size(); ++k) {
      a.c1.data[k] = a.c1.data[k] + b.c1.data[k] + c.c1.data[k] -
                     g.c1.data[k];
      a.c2.data[k] = a.c2.data[k] + b.c2.data[k] + c.c2.data[k] -
                     g.c2.data[k];
    }
    return Block{std::move(a.c1), std::move(a.c2)};
  };
  ops.apply_adjoint = [](const Block& y) {
    CenterVec p{y[0], y[1]};
    CenterVec a = condat_L_dot(p);
    CenterVec b = condat_L_lr(p);
    CenterVec c = condat_L_ud(p);
    GridImage d = div_vec(p);
    return Block{std::move(a.c1), std::move(a.c2), std::move(b.c1),
                 std::move(b.c2), std::move(c.c1), std::move(c.c2),
                 std::move(d)};
  };
  ops.prox_dual = [](Block&, double) {};
  ops.prox_primal = [&f, lambda](Block& z, double tau) {
    CenterVec wd = shrink(CenterVec{z[0], z[1]}, lambda * tau);
    CenterVec wl = shrink(CenterVec{z[2], z[3]}, lambda * tau);
    CenterVec wu = shrink(CenterVec{z[4], z[5]}, lambda * tau);
    z[0] = std::move(wd.c1);
    z[1] = std::move(wd.c2);
    z[2] = std::move(wl.c1);
    z[3] = std::move(wl.c2);
    z[4] = std::move(wu.c1);
    z[5] = std::move(wu.c2);
    z[6] = prox_data(z[6], f, tau);
  };

  GridImage zero = zeros_like(f);
  Block domain{zero, zero, zero, zero, zero, zero, zero};
  OpNormEstimate est =
      verify_step_sizes(ops.apply, ops.apply_adjoint, domain, {}, cfg, who);

  EnergyFn energy = [&f, lambda](const Block& z) {
    double reg = one_norm(CenterVec{z[0], z[1]}) +
                 one_norm(CenterVec{z[2], z[3]}) +
                 one_norm(CenterVec{z[4], z[5]});
    return 0.5 * squared_distance(z[6], f) + lambda * reg;
  };

  Block z0{zero, zero, zero, zero, zero, zero, f};
  Block y0{zero, zero};
  PdResult r = pd_solve(ops, std::move(z0), std::move(y0), cfg, energy);

  // Constraint defect of the final iterate (conversion consistency).
  {
    Block az = ops.apply(r.z);
    r.report.residuals = {std::max(max_abs(az[0]), max_abs(az[1])), 0.0};
  }
  r.report.opnorm = est;
  return {std::move(r.z[6]), std::move(r.report)};
}

std::pair<GridImage, SolveReport> denoise_tgv(const GridImage& f,
                                              double alpha0, double alpha1,
                                              const PdConfig& cfg) {
  const char* who = "denoise_tgv";
  require_center(f, who);
  require_positive(alpha0, "alpha0", who);
  require_positive(alpha1, "alpha1", who);
  validate_config(cfg, who);

  // Primal block: (v, w, u, omega) with the tensor first; dual block:
  // multipliers of v = sym_grad(omega) and w = grad(u) - omega.
  PdOps ops;
  ops.apply = [](const Block& z) {
    CenterTensor e = sym_grad(CenterVec{z[6], z[7]});
    Block out{z[0], z[1], z[2], z[3], z[4]};
    for (std::size_t k = 0; k < out[0].data.size(); ++k) {
      out[0].data[k] -= e.t1.data[k];
      out[1].data[k] -= e.t2.data[k];
      out[2].data[k] -= e.t3.data[k];
    }
    CenterVec g = grad(z[5]);
    for (std::size_t k = 0; k < out[3].data.size(); ++k) {
      out[3].data[k] = out[3].data[k] - g.c1.data[k] + z[6].data[k];
      out[4].data[k] = out[4].data[k] - g.c2.data[k] + z[7].data[k];
    }
    return out;
  };
  ops.apply_adjoint = [](const Block& y) {
    CenterVec wbar{y[3], y[4]};
    GridImage du = div_vec(wbar);
    CenterVec dt = div_tensor(CenterTensor{y[0], y[1], y[2]});
    for (std::size_t k = 0; k < dt.c1.data.size(); ++k) {
      dt.c1.data[k] = dt.c1.data[k] + y[3].data[k];
      dt.c2.data[k] = dt.c2.data[k] + y[4].data[k];
    }
    return Block{y[0],          y[1],          y[2],         y[3], y[4],
                 std::move(du), std::move(dt.c1), std::move(dt.c2)};
  };
  ops.prox_dual = [](Block&, double) {};
  ops.prox_primal = [&f, alpha0, alpha1](Block& z, double tau) {
    CenterTensor v = shrink(CenterTensor{z[0], z[1], z[2]}, alpha0 * tau);
    CenterVec w = shrink(CenterVec{z[3], z[4]}, alpha1 * tau);
    z[0] = std::move(v.t1);
    z[1] = std::move(v.t2);
    z[2] = std::move(v.t3);
    z[3] = std::move(w.c1);
    z[4] = std::move(w.c2);
    z[5] = prox_data(z[5], f, tau);
  };

  GridImage zero = zeros_like(f);
  std::vector<double> dual_weights{1.0, 1.0, 2.0, 1.0, 1.0};
  Block dual_domain{zero, zero, zero, zero, zero};
  OpNormEstimate est =
      verify_step_sizes(ops.apply_adjoint, ops.apply, dual_domain,
                        dual_weights, cfg, who);

  EnergyFn energy = [&f, alpha0, alpha1](const Block& z) {
    CenterVec omega{z[6], z[7]};
    return 0.5 * squared_distance(z[5], f) +
           tgv_classic_energy(z[5], omega, alpha0, alpha1);
  };

  Block z0{zero, zero, zero, zero, zero, f, zero, zero};
  Block y0{zero, zero, zero, zero, zero};
  PdResult r = pd_solve(ops, std::move(z0), std::move(y0), cfg, energy);

  {
    Block az = ops.apply(r.z);
    double rv = std::max({max_abs(az[0]), max_abs(az[1]), max_abs(az[2])});
    double rw = std::max(max_abs(az[3]), max_abs(az[4]));
    r.report.residuals = {rw, rv};
  }
  r.report.opnorm = est;
  return {std::move(r.z[5]), std::move(r.report)};
}

// ---------------------------------------------------------------------------
// The staggered second-order model.

namespace {

PrimalBundle bundle_from_block(const Block& z) {
  PrimalBundle b;
  b.v_dot = CenterTensor{z[0], z[1], z[2]};
  b.w_dot = CenteredVec{z[3], z[4]};
  b.w_lr = CenteredVec{z[5], z[6]};
  b.w_ud = CenteredVec{z[7], z[8]};
  b.u = z[9];
  b.omega = VecField{z[10], z[11]};
  return b;
}

Block block_from_bundle(PrimalBundle b) {
  return Block{std::move(b.v_dot.t1), std::move(b.v_dot.t2),
               std::move(b.v_dot.t3), std::move(b.w_dot.c1),
               std::move(b.w_dot.c2), std::move(b.w_lr.c1),
               std::move(b.w_lr.c2),  std::move(b.w_ud.c1),
               std::move(b.w_ud.c2),  std::move(b.u),
               std::move(b.omega.w1), std::move(b.omega.w2)};
}

Block block_from_dual(DualBundle d) {
  return Block{std::move(d.v.v1), std::move(d.v.v2), std::move(d.v.v3),
               std::move(d.w.w1), std::move(d.w.w2)};
}

DualBundle dual_from_block(const Block& y) {
  DualBundle d;
  d.v = TensorField{y[0], y[1], y[2]};
  d.w = VecField{y[3], y[4]};
  return d;
}

// Shrink every regularized slot of the staggered primal block in place.
void shrink_bundle_slots(Block& z, double alpha0, double alpha1,
                         double tau) {
  CenterTensor v = shrink(CenterTensor{z[0], z[1], z[2]}, alpha0 * tau);
  CenteredVec wd = shrink(CenteredVec{z[3], z[4]}, alpha1 * tau);
  CenteredVec wl = shrink(CenteredVec{z[5], z[6]}, alpha1 * tau);
  CenteredVec wu = shrink(CenteredVec{z[7], z[8]}, alpha1 * tau);
  z[0] = std::move(v.t1);
  z[1] = std::move(v.t2);
  z[2] = std::move(v.t3);
  z[3] = std::move(wd.c1);
  z[4] = std::move(wd.c2);
  z[5] = std::move(wl.c1);
  z[6] = std::move(wl.c2);
  z[7] = std::move(wu.c1);
  z[8] = std::move(wu.c2);
}

const std::vector<double> kDualWeights{1.0, 1.0, 2.0, 1.0, 1.0};

}  // namespace

std::pair<GridImage, SolveReport> denoise_tgv_new(const GridImage& f,
                                                  double alpha0,
                                                  double alpha1,
                                                  const PdConfig& cfg) {
  const char* who = "denoise_tgv_new";
  require_center(f, who);
  require_positive(alpha0, "alpha0", who);
  require_positive(alpha1, "alpha1", who);
  validate_config(cfg, who);

  PdOps ops;
  ops.apply = [](const Block& z) {
    return block_from_dual(apply_Lbar_star(bundle_from_block(z)));
  };
  ops.apply_adjoint = [](const Block& y) {
    return block_from_bundle(apply_Lbar(dual_from_block(y)));
  };
  ops.prox_dual = [](Block&, double) {};
  ops.prox_primal = [&f, alpha0, alpha1](Block& z, double tau) {
    shrink_bundle_slots(z, alpha0, alpha1, tau);
    z[9] = prox_data(z[9], f, tau);
  };

  Block dual_domain = block_from_dual(new_dual_bundle(f.n1, f.n2,
                                                      f.channels));
  OpNormEstimate est = verify_step_sizes(
      ops.apply_adjoint, ops.apply, dual_domain, kDualWeights, cfg, who);

  EnergyFn energy = [&f, alpha0, alpha1](const Block& z) {
    return 0.5 * squared_distance(z[9], f) +
           tgv_new_energy(bundle_from_block(z), alpha0, alpha1);
  };

  PrimalBundle start = new_primal_bundle(f.n1, f.n2, f.channels);
  start.u = f;
  PdResult r = pd_solve(ops, block_from_bundle(std::move(start)),
                        block_from_dual(new_dual_bundle(f.n1, f.n2,
                                                        f.channels)),
                        cfg, energy);

  r.report.residuals = constraint_residuals(bundle_from_block(r.z));
  r.report.opnorm = est;
  return {std::move(r.z[9]), std::move(r.report)};
}

std::pair<double, SolveReport> tgv_value_new(const GridImage& u,
                                             double alpha0, double alpha1,
                                             const PdConfig& cfg) {
  const char* who = "tgv_value_new";
  require_center(u, who);
  require_positive(alpha0, "alpha0", who);
  require_positive(alpha1, "alpha1", who);
  validate_config(cfg, who);

  // The image is data here, not a variable: the primal block drops the u
  // slot and the fixed gradient enters through the dual proximal map.
  const VecField du = grad_new(u);
  const GridImage zero_u = zeros_like(u);

  auto insert_u = [&zero_u](const Block& z) {
    Block full{z[0], z[1], z[2], z[3], z[4], z[5], z[6], z[7], z[8],
               zero_u, z[9], z[10]};
    return full;
  };
  auto drop_u = [](Block full) {
    Block out;
    out.reserve(11);
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (i == 9) continue;
      out.push_back(std::move(full[i]));
    }
    return out;
  };

  PdOps ops;
  ops.apply = [&insert_u](const Block& z) {
    return block_from_dual(apply_Lbar_star(bundle_from_block(insert_u(z))));
  };
  ops.apply_adjoint = [&drop_u](const Block& y) {
    return drop_u(block_from_bundle(apply_Lbar(dual_from_block(y))));
  };
  ops.prox_dual = [&du](Block& y, double sigma) {
    for (std::size_t k = 0; k < y[3].data.size(); ++k) {
      y[3].data[k] = y[3].data[k] - sigma * du.w1.data[k];
    }
    for (std::size_t k = 0; k < y[4].data.size(); ++k) {
      y[4].data[k] = y[4].data[k] - sigma * du.w2.data[k];
    }
  };
  ops.prox_primal = [alpha0, alpha1](Block& z, double tau) {
    shrink_bundle_slots(z, alpha0, alpha1, tau);
  };

  Block dual_domain = block_from_dual(new_dual_bundle(u.n1, u.n2,
                                                      u.channels));
  OpNormEstimate est = verify_step_sizes(
      ops.apply_adjoint, ops.apply, dual_domain, kDualWeights, cfg, who);

  EnergyFn energy = [alpha0, alpha1, &insert_u](const Block& z) {
    return tgv_new_energy(bundle_from_block(insert_u(z)), alpha0, alpha1);
  };

  Block z0 = drop_u(block_from_bundle(new_primal_bundle(u.n1, u.n2,
                                                        u.channels)));
  PdResult r = pd_solve(ops, std::move(z0),
                        block_from_dual(new_dual_bundle(u.n1, u.n2,
                                                        u.channels)),
                        cfg, energy);

  PrimalBundle final_bundle = bundle_from_block(insert_u(r.z));
  final_bundle.u = u;
  r.report.residuals = constraint_residuals(final_bundle);
  r.report.opnorm = est;
  return {r.report.final_energy, std::move(r.report)};
}

std::pair<double, SolveReport> tgv_value_classic(const GridImage& u,
                                                 double alpha0,
                                                 double alpha1,
                                                 const PdConfig& cfg) {
  const char* who = "tgv_value_classic";
  require_center(u, who);
  require_positive(alpha0, "alpha0", who);
  require_positive(alpha1, "alpha1", who);
  validate_config(cfg, who);

  const CenterVec du = grad(u);

  // Primal block: (v, w, omega); constraints v = sym_grad(omega) and
  // w + omega = grad(u), the latter entering through the dual prox.
  PdOps ops;
  ops.apply = [](const Block& z) {
    CenterTensor e = sym_grad(CenterVec{z[5], z[6]});
    Block out{z[0], z[1], z[2], z[3], z[4]};
    for (std::size_t k = 0; k < out[0].data.size(); ++k) {
      out[0].data[k] -= e.t1.data[k];
      out[1].data[k] -= e.t2.data[k];
      out[2].data[k] -= e.t3.data[k];
    }
    for (std::size_t k = 0; k < out[3].data.size(); ++k) {
      out[3].data[k] = out[3].data[k] + z[5].data[k];
      out[4].data[k] = out[4].data[k] + z[6].data[k];
    }
    return out;
  };
  ops.apply_adjoint = [](const Block& y) {
    CenterVec dt = div_tensor(CenterTensor{y[0], y[1], y[2]});
    for (std::size_t k = 0; k < dt.c1.data.size(); ++k) {
      dt.c1.data[k] = dt.c1.data[k] + y[3].data[k];
      dt.c2.data[k] = dt.c2.data[k] + y[4].data[k];
    }
    return Block{y[0], y[1], y[2], y[3], y[4], std::move(dt.c1),
                 std::move(dt.c2)};
  };
  ops.prox_dual = [&du](Block& y, double sigma) {
    for (std::size_t k = 0; k < y[3].data.size(); ++k) {
      y[3].data[k] = y[3].data[k] - sigma * du.c1.data[k];
      y[4].data[k] = y[4].data[k] - sigma * du.c2.data[k];
    }
  };
  ops.prox_primal = [alpha0, alpha1](Block& z, double tau) {
    CenterTensor v = shrink(CenterTensor{z[0], z[1], z[2]}, alpha0 * tau);
    CenterVec w = shrink(CenterVec{z[3], z[4]}, alpha1 * tau);
    z[0] = std::move(v.t1);
    z[1] = std::move(v.t2);
    z[2] = std::move(v.t3);
    z[3] = std::move(w.c1);
    z[4] = std::move(w.c2);
  };

  GridImage zero = zeros_like(u);
  Block dual_domain{zero, zero, zero, zero, zero};
  OpNormEstimate est =
      verify_step_sizes(ops.apply_adjoint, ops.apply, dual_domain,
                        kDualWeights, cfg, who);

  EnergyFn energy = [alpha0, alpha1](const Block& z) {
    return alpha0 * one_norm(CenterTensor{z[0], z[1], z[2]}) +
           alpha1 * one_norm(CenterVec{z[3], z[4]});
  };

  Block z0{zero, zero, zero, zero, zero, zero, zero};
  Block y0{zero, zero, zero, zero, zero};
  PdResult r = pd_solve(ops, std::move(z0), std::move(y0), cfg, energy);

  {
    // Defects of w + omega = grad(u) and v = sym_grad(omega).
    CenterTensor e = sym_grad(CenterVec{r.z[5], r.z[6]});
    double rv = 0.0;
    for (std::size_t k = 0; k < e.t1.data.size(); ++k) {
      rv = std::max(rv, std::abs(r.z[0].data[k] - e.t1.data[k]));
      rv = std::max(rv, std::abs(r.z[1].data[k] - e.t2.data[k]));
      rv = std::max(rv, std::abs(r.z[2].data[k] - e.t3.data[k]));
    }
    double rw = 0.0;
    for (std::size_t k = 0; k < du.c1.data.size(); ++k) {
      rw = std::max(rw, std::abs(r.z[3].data[k] + r.z[5].data[k] -
                                 du.c1.data[k]));
      rw = std::max(rw, std::abs(r.z[4].data[k] + r.z[6].data[k] -
                                 du.c2.data[k]));
    }
    r.report.residuals = {rw, rv};
  }
  r.report.opnorm = est;
  return {r.report.final_energy, std::move(r.report)};
}

}  // namespace tgv
