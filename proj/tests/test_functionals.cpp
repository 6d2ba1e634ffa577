#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tgv/functionals.hpp"
#include "tgv/grid.hpp"
#include "tgv/ops_classic.hpp"
#include "tgv/ops_convert.hpp"
#include "tgv/rotation.hpp"

using namespace tgv;

namespace {

void randomize(GridImage& img, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& x : img.data) x = dist(rng);
}

// Forward difference along rows with the zero-on-last-row closure, as a
// plain scalar expression (reference only).
double fwd_x(const GridImage& u, int i, int j, int c) {
  return i + 1 < u.rows() ? u.at(i + 1, j, c) - u.at(i, j, c) : 0.0;
}

double fwd_y(const GridImage& u, int i, int j, int c) {
  return j + 1 < u.cols() ? u.at(i, j + 1, c) - u.at(i, j, c) : 0.0;
}

CenteredVec rotate_pair(const CenteredVec& p) {
  CenteredVec out{rotate_any(p.c2), rotate_any(p.c1)};
  for (double& x : out.c1.data) x = -x;
  return out;
}

}  // namespace

TEST_CASE("magnitude folds components and channels into one norm") {
  CenterVec w = new_center_vec(3, 4, 2);
  w.c1.at(1, 2, 0) = 3.0;
  w.c2.at(1, 2, 1) = 4.0;
  GridImage m = magnitude(w);
  CHECK(m.channels == 1);
  CHECK(m.at(1, 2) == 5.0);
  CHECK(m.at(0, 0) == 0.0);
  CHECK(one_norm(w) == 5.0);

  CenteredVec p = new_centered_vec(GridKind::HorizEdge, 3, 4);
  p.c1.at(2, 1) = -3.0;
  p.c2.at(2, 1) = 4.0;
  CHECK(magnitude(p).at(2, 1) == 5.0);
}

TEST_CASE("tensor magnitude is the Frobenius norm of the symmetric matrix") {
  std::mt19937_64 rng(401);
  CenterTensor v = new_center_tensor(5, 6);
  randomize(v.t1, rng);
  randomize(v.t2, rng);
  randomize(v.t3, rng);
  GridImage m = magnitude(v);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 6; ++j) {
      Eigen::Matrix2d s;
      s << v.t1.at(i, j), v.t3.at(i, j), v.t3.at(i, j), v.t2.at(i, j);
      CHECK(m.at(i, j) == doctest::Approx(s.norm()).epsilon(1e-14));
    }
  }
}

TEST_CASE("isotropic TV of the 2x2 delta and of its quarter turn") {
  GridImage u = new_image(GridKind::Center, 2, 2);
  u.at(0, 0) = 1.0;
  CHECK(std::abs(tv_iso(u) - std::sqrt(2.0)) <= 1e-15);

  GridImage r = rotate90(u);
  CHECK(std::abs(tv_iso(r) - 2.0) <= 1e-15);
}

TEST_CASE("isotropic TV matches a scalar reference") {
  std::mt19937_64 rng(402);
  GridImage u = new_image(GridKind::Center, 7, 6, 3);
  randomize(u, rng);
  double ref = 0.0;
  for (int i = 0; i < u.rows(); ++i) {
    for (int j = 0; j < u.cols(); ++j) {
      double s = 0.0;
      for (int c = 0; c < u.channels; ++c) {
        double dx = fwd_x(u, i, j, c);
        double dy = fwd_y(u, i, j, c);
        s += dx * dx + dy * dy;
      }
      ref += std::sqrt(s);
    }
  }
  CHECK(tv_iso(u) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("TV vanishes exactly on constants and scales linearly") {
  GridImage u = new_image(GridKind::Center, 6, 5, 2);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 5; ++j) {
      u.at(i, j, 0) = 0.3;
      u.at(i, j, 1) = -1.7;
    }
  CHECK(tv_iso(u) == 0.0);
  CHECK(tv_central(u) == 0.0);

  u.at(3, 2, 1) += 0.25;
  CHECK(tv_iso(u) > 0.0);

  std::mt19937_64 rng(403);
  GridImage v = new_image(GridKind::Center, 8, 9, 2);
  randomize(v, rng);
  GridImage v3 = v;
  for (double& x : v3.data) x *= 3.0;
  CHECK(tv_iso(v3) == doctest::Approx(3.0 * tv_iso(v)).epsilon(1e-12));
  CHECK(tv_central(v3) == doctest::Approx(3.0 * tv_central(v)).epsilon(1e-12));
}

TEST_CASE("central TV is blind to checkerboards away from the boundary") {
  GridImage u = new_image(GridKind::Center, 8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) u.at(i, j) = ((i + j) % 2 == 0) ? 1.0 : 0.0;

  CenterVec g = grad_central(u);
  for (int i = 1; i < 7; ++i)
    for (int j = 0; j < 8; ++j) CHECK(g.c1.at(i, j) == 0.0);
  for (int i = 0; i < 8; ++i)
    for (int j = 1; j < 7; ++j) CHECK(g.c2.at(i, j) == 0.0);

  // Forward differences see every cell edge of the pattern; central
  // differences only see the mirrored boundary layers.
  CHECK(tv_central(u) < 0.25 * tv_iso(u));
}

TEST_CASE("central TV matches a scalar reference") {
  std::mt19937_64 rng(404);
  GridImage u = new_image(GridKind::Center, 6, 9, 2);
  randomize(u, rng);
  auto clamp_x = [&](int i) { return std::min(std::max(i, 0), u.rows() - 1); };
  auto clamp_y = [&](int j) { return std::min(std::max(j, 0), u.cols() - 1); };
  double ref = 0.0;
  for (int i = 0; i < u.rows(); ++i) {
    for (int j = 0; j < u.cols(); ++j) {
      double s = 0.0;
      for (int c = 0; c < u.channels; ++c) {
        double dx =
            0.5 * (u.at(clamp_x(i + 1), j, c) - u.at(clamp_x(i - 1), j, c));
        double dy =
            0.5 * (u.at(i, clamp_y(j + 1), c) - u.at(i, clamp_y(j - 1), c));
        s += dx * dx + dy * dy;
      }
      ref += std::sqrt(s);
    }
  }
  CHECK(tv_central(u) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("classic second-order energy matches a scalar reference") {
  std::mt19937_64 rng(405);
  GridImage u = new_image(GridKind::Center, 5, 7, 2);
  CenterVec omega = new_center_vec(5, 7, 2);
  randomize(u, rng);
  randomize(omega.c1, rng);
  randomize(omega.c2, rng);
  const double a0 = 0.14, a1 = 0.07;

  double first = 0.0, second = 0.0;
  for (int i = 0; i < u.rows(); ++i) {
    for (int j = 0; j < u.cols(); ++j) {
      double s1 = 0.0, s2 = 0.0;
      for (int c = 0; c < u.channels; ++c) {
        double r1 = fwd_x(u, i, j, c) - omega.c1.at(i, j, c);
        double r2 = fwd_y(u, i, j, c) - omega.c2.at(i, j, c);
        s1 += r1 * r1 + r2 * r2;
        double e11 = fwd_x(omega.c1, i, j, c);
        double e22 = fwd_y(omega.c2, i, j, c);
        double e12 = 0.5 * (fwd_y(omega.c1, i, j, c) + fwd_x(omega.c2, i, j, c));
        s2 += e11 * e11 + e22 * e22 + 2.0 * e12 * e12;
      }
      first += std::sqrt(s1);
      second += std::sqrt(s2);
    }
  }
  double ref = a1 * first + a0 * second;
  CHECK(tgv_classic_energy(u, omega, a0, a1) ==
        doctest::Approx(ref).epsilon(1e-13));

  CHECK_THROWS_AS(tgv_classic_energy(u, omega, 0.0, a1),
                  std::invalid_argument);
  CHECK_THROWS_AS(tgv_classic_energy(u, omega, a0, -1.0),
                  std::invalid_argument);
}

TEST_CASE("staggered second-order energy on one-pixel bundles") {
  PrimalBundle z = new_primal_bundle(4, 4);
  z.w_dot.c1.at(1, 2) = 3.0;
  z.w_dot.c2.at(1, 2) = 4.0;
  CHECK(tgv_new_energy(z, 0.5, 0.25) == 0.25 * 5.0);

  PrimalBundle zt = new_primal_bundle(4, 4);
  zt.v_dot.t3.at(2, 1) = 1.0;
  CHECK(std::abs(tgv_new_energy(zt, 0.5, 0.25) - 0.5 * std::sqrt(2.0)) <=
        1e-15);

  CHECK_THROWS_AS(tgv_new_energy(z, -0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(tgv_new_energy(z, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("staggered energy is invariant under the joint quarter turn") {
  std::mt19937_64 rng(406);
  PrimalBundle z = new_primal_bundle(9, 7, 2);
  randomize(z.v_dot.t1, rng);
  randomize(z.v_dot.t2, rng);
  randomize(z.v_dot.t3, rng);
  randomize(z.w_dot.c1, rng);
  randomize(z.w_dot.c2, rng);
  randomize(z.w_lr.c1, rng);
  randomize(z.w_lr.c2, rng);
  randomize(z.w_ud.c1, rng);
  randomize(z.w_ud.c2, rng);
  randomize(z.u, rng);
  randomize(z.omega.w1, rng);
  randomize(z.omega.w2, rng);

  // The rotated bundle substitutes the pushforward of every block; the two
  // edge-collocated fields trade places because the lattices swap.
  PrimalBundle zr;
  zr.v_dot = rotate_tensor(z.v_dot);
  zr.w_dot = rotate_pair(z.w_dot);
  zr.w_lr = rotate_pair(z.w_ud);
  zr.w_ud = rotate_pair(z.w_lr);
  zr.u = rotate90(z.u);
  zr.omega = rotate_vec(z.omega);

  const double a0 = 0.14, a1 = 0.07;
  CHECK(tgv_new_energy(zr, a0, a1) ==
        doctest::Approx(tgv_new_energy(z, a0, a1)).epsilon(1e-12));

  // The constraint defects are pushed forward as well, so their max norms
  // agree up to the rounding introduced by re-ordered four-point averages.
  auto [r1, r2] = constraint_residuals(z);
  auto [s1, s2] = constraint_residuals(zr);
  CHECK(std::abs(r1 - s1) <= 1e-14);
  CHECK(std::abs(r2 - s2) <= 1e-14);
}

TEST_CASE("constraint residuals are zero on the trivial bundle and detect "
          "perturbations") {
  PrimalBundle z = new_primal_bundle(6, 5);
  auto [r1, r2] = constraint_residuals(z);
  CHECK(r1 == 0.0);
  CHECK(r2 == 0.0);

  const double eps = 1e-3;
  z.w_dot.c1.at(2, 3) = eps;
  auto [p1, p2] = constraint_residuals(z);
  CHECK(p1 >= eps / 4.0);
  CHECK(p2 == 0.0);

  PrimalBundle zv = new_primal_bundle(6, 5);
  zv.v_dot.t3.at(1, 1) = eps;
  auto [q1, q2] = constraint_residuals(zv);
  CHECK(q1 == 0.0);
  CHECK(q2 >= eps / 4.0);
}
