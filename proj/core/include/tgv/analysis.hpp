#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tgv/grid.hpp"
#include "tgv/model.hpp"
#include "tgv/solver.hpp"

namespace tgv {

// Image-quality metrics, parameter search, rotation-invariance reporting,
// and deterministic synthetic test images.

struct MetricPair {
  double psnr = 0.0;
  double ssim = 0.0;
  friend bool operator==(const MetricPair&, const MetricPair&) = default;
};

// Peak signal-to-noise ratio 10*log10(1/MSE) with peak intensity 1; the MSE
// runs over all pixels and channels.  Identical inputs return +infinity.
double psnr(const GridImage& u, const GridImage& ref);

// Mean local structural similarity over every fully contained 8x8 window
// (uniform weights, population moments), with C1 = 0.01^2 and C2 = 0.03^2
// for dynamic range 1.  Channels are averaged.  Window choice and constants
// are echoed into reports so numbers stay comparable across tools.
double ssim(const GridImage& u, const GridImage& ref);

MetricPair metrics(const GridImage& u, const GridImage& ref);

// One evaluated grid point of a parameter sweep.  Solver failures are
// recorded per point rather than aborting the whole search.
struct SweepPoint {
  double value = 0.0;
  bool valid = false;
  std::string error;
  MetricPair metric;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::size_t argmax = 0;  // index of the PSNR-best valid point
  MetricPair best;
  bool argmax_on_boundary = false;
};

// Exhaustive search over the supplied grid: each value is run through the
// template spec (as lambda for the first-order family, as alpha1 with
// alpha0 = alpha_ratio * alpha1 for the second-order family) and scored
// against the reference by PSNR.  Throws if the grid is empty or every
// point fails.  Grid points are independent, so more than one thread may
// evaluate them; the result is identical for any thread count.
SweepResult sweep(const GridImage& f, const GridImage& ref,
                  const ModelSpec& tmpl, const std::vector<double>& grid,
                  int threads = 1);

enum class PhantomKind { Checkerboard, PiecewiseSmooth, PiecewiseAffine };

// Deterministic synthetic test images with values in [0,1]; no RNG is
// involved, so repeated calls are bitwise identical.  The checkerboard
// alternates {0,1} squares of the given size (needs n1, n2 >= 4); the
// piecewise kinds compose affine/quadratic patches separated by jump
// interfaces (need n1, n2 >= 16; square is ignored).
GridImage make_phantom(PhantomKind kind, int n1, int n2, int square = 8);

// Functional values of both second-order discretizations on u and on its
// quarter rotation, with the discrepancy each model shows.
struct InvarianceReport {
  double classic_value = 0.0;
  double classic_rotated = 0.0;
  double classic_abs = 0.0;
  double classic_rel = 0.0;
  double new_value = 0.0;
  double new_rotated = 0.0;
  double new_abs = 0.0;
  double new_rel = 0.0;
};

InvarianceReport invariance_report(const GridImage& u, double alpha0,
                                   double alpha1,
                                   const PdConfig& cfg = value_default_config());

}  // namespace tgv
