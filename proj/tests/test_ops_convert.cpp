#include "doctest.h"

#include <cmath>
#include <random>

#include "support/dense.hpp"
#include "support/stencil_oracle.hpp"
#include "tgv/grid.hpp"
#include "tgv/ops_convert.hpp"
#include "tgv/ops_staggered.hpp"
#include "tgv/rotation.hpp"

using namespace tgv;
using tgvtest::assemble;
using tgvtest::Block;

namespace {

void randomize(GridImage& img, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& x : img.data) x = dist(rng);
}

VecField random_vec(int n1, int n2, std::mt19937_64& rng) {
  VecField w = new_vec_field(n1, n2);
  randomize(w.w1, rng);
  randomize(w.w2, rng);
  return w;
}

double max_abs(const GridImage& a) {
  double m = 0.0;
  for (double x : a.data) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const GridImage& a, const GridImage& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k)
    m = std::max(m, std::abs(a.data[k] - b.data[k]));
  return m;
}

// Pushforward of a converted (same-kind) pair under the quarter turn:
// the same rule as for staggered vector fields.
CenteredVec rotate_pair(const CenteredVec& p) {
  CenteredVec out{rotate_any(p.c2), rotate_any(p.c1)};
  for (double& x : out.c1.data) x = -x;
  return out;
}

Block primal_block(const PrimalBundle& z) {
  return Block{z.v_dot.t1, z.v_dot.t2, z.v_dot.t3, z.w_dot.c1, z.w_dot.c2,
               z.w_lr.c1,  z.w_lr.c2,  z.w_ud.c1,  z.w_ud.c2,  z.u,
               z.omega.w1, z.omega.w2};
}

PrimalBundle primal_from_block(const Block& b) {
  PrimalBundle z;
  z.v_dot = CenterTensor{b[0], b[1], b[2]};
  z.w_dot = CenteredVec{b[3], b[4]};
  z.w_lr = CenteredVec{b[5], b[6]};
  z.w_ud = CenteredVec{b[7], b[8]};
  z.u = b[9];
  z.omega = VecField{b[10], b[11]};
  return z;
}

Block dual_block(const DualBundle& y) {
  return Block{y.v.v1, y.v.v2, y.v.v3, y.w.w1, y.w.w2};
}

DualBundle dual_from_block(const Block& b) {
  return DualBundle{TensorField{b[0], b[1], b[2]}, VecField{b[3], b[4]}};
}

}  // namespace

TEST_CASE("center conversion of a constant field is the same constant") {
  VecField w = new_vec_field(4, 5);
  for (double& x : w.w1.data) x = 1.0;
  CenteredVec p = L_dot_vec(w);
  for (double x : p.c1.data) CHECK(x == 1.0);
  for (double x : p.c2.data) CHECK(x == 0.0);
}

TEST_CASE("the four conversion maps equal their independent dense assemblies") {
  for (auto [n1, n2] : {std::pair{5, 4}, std::pair{3, 3}, std::pair{2, 5}}) {
    Block vec{new_image(GridKind::HorizEdge, n1, n2),
              new_image(GridKind::VertEdge, n1, n2)};
    Block ten{new_image(GridKind::CenterExtX, n1, n2),
              new_image(GridKind::CenterExtY, n1, n2),
              new_image(GridKind::Corner, n1, n2)};
    Eigen::MatrixXd Mdot = assemble(
        [](const Block& b) {
          CenteredVec p = L_dot_vec(VecField{b[0], b[1]});
          return Block{p.c1, p.c2};
        },
        vec);
    CHECK((Mdot - tgvtest::stencil::L_dot_vec_matrix(n1, n2)).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd Mlr = assemble(
        [](const Block& b) {
          CenteredVec p = L_lr(VecField{b[0], b[1]});
          return Block{p.c1, p.c2};
        },
        vec);
    CHECK((Mlr - tgvtest::stencil::L_lr_matrix(n1, n2)).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd Mud = assemble(
        [](const Block& b) {
          CenteredVec p = L_ud(VecField{b[0], b[1]});
          return Block{p.c1, p.c2};
        },
        vec);
    CHECK((Mud - tgvtest::stencil::L_ud_matrix(n1, n2)).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd Mt = assemble(
        [](const Block& b) {
          CenterTensor t = L_dot_tensor(TensorField{b[0], b[1], b[2]});
          return Block{t.t1, t.t2, t.t3};
        },
        ten);
    CHECK((Mt - tgvtest::stencil::L_dot_tensor_matrix(n1, n2)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("edge conversion weights collapse on the boundary rows") {
  VecField w = new_vec_field(4, 5);
  for (double& x : w.w2.data) x = 1.0;
  CenteredVec p = L_lr(w);
  for (int j = 0; j < 5; ++j) {
    CHECK(p.c2.at(0, j) == 0.5);   // two samples instead of four
    CHECK(p.c2.at(4, j) == 0.5);
    for (int i = 1; i < 4; ++i) CHECK(p.c2.at(i, j) == 1.0);
  }
}

TEST_CASE("tensor conversion keeps a constant off-diagonal constant") {
  TensorField v = new_tensor_field(3, 4);
  for (double& x : v.v3.data) x = 1.0;
  CenterTensor t = L_dot_tensor(v);
  for (double x : t.t3.data) CHECK(x == 1.0);
  for (double x : t.t1.data) CHECK(x == 0.0);
}

TEST_CASE("adjoint conversions are the exact transposes of the forward maps") {
  for (auto [n1, n2] : {std::pair{5, 4}, std::pair{3, 6}}) {
    Block cpair{new_image(GridKind::Center, n1, n2), new_image(GridKind::Center, n1, n2)};
    Block hpair{new_image(GridKind::HorizEdge, n1, n2), new_image(GridKind::HorizEdge, n1, n2)};
    Block vpair{new_image(GridKind::VertEdge, n1, n2), new_image(GridKind::VertEdge, n1, n2)};
    Block cten{new_image(GridKind::Center, n1, n2), new_image(GridKind::Center, n1, n2),
               new_image(GridKind::Center, n1, n2)};
    Eigen::MatrixXd A = assemble(
        [](const Block& b) {
          VecField w = adj_L_dot_vec(CenteredVec{b[0], b[1]});
          return Block{w.w1, w.w2};
        },
        cpair);
    CHECK((A - tgvtest::stencil::L_dot_vec_matrix(n1, n2).transpose()).cwiseAbs().maxCoeff() == 0.0);
    A = assemble(
        [](const Block& b) {
          VecField w = adj_L_lr(CenteredVec{b[0], b[1]});
          return Block{w.w1, w.w2};
        },
        hpair);
    CHECK((A - tgvtest::stencil::L_lr_matrix(n1, n2).transpose()).cwiseAbs().maxCoeff() == 0.0);
    A = assemble(
        [](const Block& b) {
          VecField w = adj_L_ud(CenteredVec{b[0], b[1]});
          return Block{w.w1, w.w2};
        },
        vpair);
    CHECK((A - tgvtest::stencil::L_ud_matrix(n1, n2).transpose()).cwiseAbs().maxCoeff() == 0.0);
    A = assemble(
        [](const Block& b) {
          TensorField v = adj_L_dot_tensor(CenterTensor{b[0], b[1], b[2]});
          return Block{v.v1, v.v2, v.v3};
        },
        cten);
    CHECK((A - tgvtest::stencil::L_dot_tensor_matrix(n1, n2).transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("inner-product adjointness of the conversion pairs on random fields") {
  std::mt19937_64 rng(909);
  VecField w = random_vec(5, 4, rng);
  CenteredVec pc = new_centered_vec(GridKind::Center, 5, 4);
  randomize(pc.c1, rng);
  randomize(pc.c2, rng);
  CHECK(inner(L_dot_vec(w), pc) ==
        doctest::Approx(inner(w, adj_L_dot_vec(pc))).epsilon(1e-12));
  CenteredVec ph = new_centered_vec(GridKind::HorizEdge, 5, 4);
  randomize(ph.c1, rng);
  randomize(ph.c2, rng);
  CHECK(inner(L_lr(w), ph) == doctest::Approx(inner(w, adj_L_lr(ph))).epsilon(1e-12));
  CenteredVec pv = new_centered_vec(GridKind::VertEdge, 5, 4);
  randomize(pv.c1, rng);
  randomize(pv.c2, rng);
  CHECK(inner(L_ud(w), pv) == doctest::Approx(inner(w, adj_L_ud(pv))).epsilon(1e-12));
}

TEST_CASE("adjoint tensor conversion spreads ones with boundary-degraded weights") {
  CenterTensor t = new_center_tensor(3, 3);
  for (double& x : t.t3.data) x = 1.0;
  TensorField v = adj_L_dot_tensor(t);
  // Each corner receives a quarter from every adjacent center: 4 in the
  // interior, 2 along edges, 1 at the four extreme corners.
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      int touch = ((i == 0 || i == 3) ? 1 : 2) * ((j == 0 || j == 3) ? 1 : 2);
      CHECK(v.v3.at(i, j) == 0.25 * touch);
    }
  for (double x : v.v1.data) CHECK(x == 0.0);
  for (double x : v.v2.data) CHECK(x == 0.0);
}

TEST_CASE("conversions never expand the max norm") {
  std::mt19937_64 rng(77);
  VecField w = random_vec(6, 5, rng);
  double m = std::max(max_abs(w.w1), max_abs(w.w2));
  for (const CenteredVec& p : {L_dot_vec(w), L_lr(w), L_ud(w)}) {
    CHECK(max_abs(p.c1) <= m + 1e-15);
    CHECK(max_abs(p.c2) <= m + 1e-15);
  }
}

TEST_CASE("block operator: an image-only bundle maps to its negated gradient") {
  std::mt19937_64 rng(31);
  PrimalBundle z = new_primal_bundle(4, 5);
  randomize(z.u, rng);
  DualBundle y = apply_Lbar_star(z);
  VecField g = grad_new(z.u);
  for (std::size_t k = 0; k < g.w1.data.size(); ++k)
    CHECK(y.w.w1.data[k] == -g.w1.data[k]);
  for (std::size_t k = 0; k < g.w2.data.size(); ++k)
    CHECK(y.w.w2.data[k] == -g.w2.data[k]);
  CHECK(max_abs(y.v.v1) == 0.0);
  CHECK(max_abs(y.v.v2) == 0.0);
  CHECK(max_abs(y.v.v3) == 0.0);
}

TEST_CASE("block operator pair is adjoint under the doubled off-diagonal pairing") {
  const int n1 = 3, n2 = 4;
  Block pb = primal_block(new_primal_bundle(n1, n2));
  Block db = dual_block(new_dual_bundle(n1, n2));
  Eigen::MatrixXd A = assemble(
      [](const Block& b) { return dual_block(apply_Lbar_star(primal_from_block(b))); },
      pb);
  Eigen::MatrixXd B = assemble(
      [](const Block& b) { return primal_block(apply_Lbar(dual_from_block(b))); },
      db);
  // v_dot.t3 carries weight 2 on the primal side, v.v3 on the dual side.
  Eigen::VectorXd wp = tgvtest::weight_vector(pb, {1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  Eigen::VectorXd wd = tgvtest::weight_vector(db, {1, 1, 2, 1, 1});
  CHECK(tgvtest::adjoint_mismatch(A, B, wd, wp) <= 1e-15);
}

TEST_CASE("rotation intertwining of the adjoint conversions") {
  std::mt19937_64 rng(4711);
  const int n1 = 5, n2 = 4;

  CenteredVec pc = new_centered_vec(GridKind::Center, n1, n2);
  randomize(pc.c1, rng);
  randomize(pc.c2, rng);
  VecField lhs = adj_L_dot_vec(rotate_pair(pc));
  VecField rhs = rotate_vec(adj_L_dot_vec(pc));
  CHECK(max_abs_diff(lhs.w1, rhs.w1) == 0.0);
  CHECK(max_abs_diff(lhs.w2, rhs.w2) == 0.0);

  // The four-point averages accumulate in a different order on the two
  // sides of the identity, so agreement is up to rounding, not bitwise.
  CenteredVec ph = new_centered_vec(GridKind::HorizEdge, n1, n2);
  randomize(ph.c1, rng);
  randomize(ph.c2, rng);
  lhs = adj_L_ud(rotate_pair(ph));  // a rotated horizontal pair lives on vertical edges
  rhs = rotate_vec(adj_L_lr(ph));
  CHECK(max_abs_diff(lhs.w1, rhs.w1) <= 1e-15);
  CHECK(max_abs_diff(lhs.w2, rhs.w2) <= 1e-15);

  CenteredVec pv = new_centered_vec(GridKind::VertEdge, n1, n2);
  randomize(pv.c1, rng);
  randomize(pv.c2, rng);
  lhs = adj_L_lr(rotate_pair(pv));
  rhs = rotate_vec(adj_L_ud(pv));
  CHECK(max_abs_diff(lhs.w1, rhs.w1) <= 1e-15);
  CHECK(max_abs_diff(lhs.w2, rhs.w2) <= 1e-15);

  CenterTensor tc = new_center_tensor(n1, n2);
  randomize(tc.t1, rng);
  randomize(tc.t2, rng);
  randomize(tc.t3, rng);
  TensorField tl = adj_L_dot_tensor(rotate_tensor(tc));
  TensorField tr = rotate_tensor(adj_L_dot_tensor(tc));
  CHECK(max_abs_diff(tl.v1, tr.v1) == 0.0);
  CHECK(max_abs_diff(tl.v2, tr.v2) == 0.0);
  CHECK(max_abs_diff(tl.v3, tr.v3) == 0.0);
}

TEST_CASE("masked center conversions: constant dual field") {
  CenterVec v = new_center_vec(5, 5);
  for (double& x : v.c1.data) x = 1.0;
  CenterVec p = condat_L_dot(v);
  // The stored last row reads as zero, so both outermost rows average a
  // single sample.
  for (int j = 0; j < 5; ++j) {
    CHECK(p.c1.at(0, j) == 0.5);
    for (int i = 1; i < 4; ++i) CHECK(p.c1.at(i, j) == 1.0);
    CHECK(p.c1.at(4, j) == 0.5);
  }
  for (double x : p.c2.data) CHECK(x == 0.0);
}

TEST_CASE("masked conversions force their designated zero rows") {
  std::mt19937_64 rng(88);
  CenterVec v = new_center_vec(6, 6);
  randomize(v.c1, rng);
  randomize(v.c2, rng);
  CenterVec lr = condat_L_lr(v);
  for (int j = 0; j < 6; ++j) {
    CHECK(lr.c1.at(5, j) == 0.0);
    CHECK(lr.c2.at(5, j) == 0.0);
  }
  CenterVec ud = condat_L_ud(v);
  for (int i = 0; i < 6; ++i) {
    CHECK(ud.c1.at(i, 5) == 0.0);
    CHECK(ud.c2.at(i, 5) == 0.0);
  }
}

TEST_CASE("masked conversion adjoints pass the transpose test") {
  Block pair{new_image(GridKind::Center, 6, 6), new_image(GridKind::Center, 6, 6)};
  auto fwd_adj = [&](auto fwd, auto adj) {
    Eigen::MatrixXd F = assemble(
        [&fwd](const Block& b) {
          CenterVec out = fwd(CenterVec{b[0], b[1]});
          return Block{out.c1, out.c2};
        },
        pair);
    Eigen::MatrixXd A = assemble(
        [&adj](const Block& b) {
          CenterVec out = adj(CenterVec{b[0], b[1]});
          return Block{out.c1, out.c2};
        },
        pair);
    CHECK((F.transpose() - A).cwiseAbs().maxCoeff() == 0.0);
  };
  fwd_adj([](const CenterVec& v) { return condat_L_dot(v); },
          [](const CenterVec& p) { return condat_adj_L_dot(p); });
  fwd_adj([](const CenterVec& v) { return condat_L_lr(v); },
          [](const CenterVec& p) { return condat_adj_L_lr(p); });
  fwd_adj([](const CenterVec& v) { return condat_L_ud(v); },
          [](const CenterVec& p) { return condat_adj_L_ud(p); });
}

TEST_CASE("masked conversion adjointness on random 6x6 fields") {
  std::mt19937_64 rng(313);
  CenterVec v = new_center_vec(6, 6);
  CenterVec p = new_center_vec(6, 6);
  randomize(v.c1, rng);
  randomize(v.c2, rng);
  randomize(p.c1, rng);
  randomize(p.c2, rng);
  CHECK(inner(condat_L_dot(v), p) ==
        doctest::Approx(inner(v, condat_adj_L_dot(p))).epsilon(1e-12));
  CHECK(inner(condat_L_lr(v), p) ==
        doctest::Approx(inner(v, condat_adj_L_lr(p))).epsilon(1e-12));
  CHECK(inner(condat_L_ud(v), p) ==
        doctest::Approx(inner(v, condat_adj_L_ud(p))).epsilon(1e-12));
}

TEST_CASE("masked conversions keep each component exact on its own edge family") {
  std::mt19937_64 rng(414);
  CenterVec v = new_center_vec(6, 6);
  randomize(v.c1, rng);
  randomize(v.c2, rng);
  CenterVec lr = condat_L_lr(v);
  CenterVec ud = condat_L_ud(v);
  // First component on horizontal edges: an identity read away from the
  // masked row; the second is the four-point average of its neighbours.
  for (int i = 0; i + 1 < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      CHECK(lr.c1.at(i, j) == v.c1.at(i, j));
      if (j >= 1 && j + 1 < 5) {
        CHECK(lr.c2.at(i, j) ==
              doctest::Approx(0.25 * (v.c2.at(i, j) + v.c2.at(i, j - 1) +
                                      v.c2.at(i + 1, j) +
                                      v.c2.at(i + 1, j - 1)))
                  .epsilon(1e-15));
      }
    }
  }
  // Mirror roles on vertical edges.
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j + 1 < 6; ++j) {
      CHECK(ud.c2.at(i, j) == v.c2.at(i, j));
      if (i >= 1 && i + 1 < 5) {
        CHECK(ud.c1.at(i, j) ==
              doctest::Approx(0.25 * (v.c1.at(i, j) + v.c1.at(i - 1, j) +
                                      v.c1.at(i, j + 1) +
                                      v.c1.at(i - 1, j + 1)))
                  .epsilon(1e-15));
      }
    }
  }
}
