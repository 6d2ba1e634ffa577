#include "tgv/functionals.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tgv/ops_staggered.hpp"

namespace tgv {

namespace {

void require_pair_shape(const GridImage& a, const GridImage& b,
                        const char* who) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string("shape-mismatch: components of ") +
                                who);
  }
}

void require_positive_alphas(double alpha0, double alpha1, const char* who) {
  if (!(alpha0 > 0.0) || !(alpha1 > 0.0)) {
    throw std::invalid_argument(
        std::string("nonpositive-alpha: ") + who + " needs alpha0 > 0 and " +
        "alpha1 > 0, got (" + std::to_string(alpha0) + ", " +
        std::to_string(alpha1) + ")");
  }
}

// Shared two-component magnitude: channels and components folded into one
// pointwise Euclidean norm.
GridImage pair_magnitude(const GridImage& c1, const GridImage& c2,
                         const char* who) {
  require_pair_shape(c1, c2, who);
  GridImage m = new_image(c1.kind, c1.n1, c1.n2, 1);
  const int rows = c1.rows();
  const int cols = c1.cols();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int c = 0; c < c1.channels; ++c) {
        s += c1.at(i, j, c) * c1.at(i, j, c) + c2.at(i, j, c) * c2.at(i, j, c);
      }
      m.at(i, j) = std::sqrt(s);
    }
  }
  return m;
}

double image_sum(const GridImage& m) {
  double s = 0.0;
  for (double x : m.data) s += x;
  return s;
}

double max_abs_diff(const GridImage& a, const GridImage& b, const char* who) {
  require_pair_shape(a, b, who);
  double m = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    m = std::max(m, std::abs(a.data[k] - b.data[k]));
  }
  return m;
}

}  // namespace

GridImage magnitude(const CenterVec& w) {
  return pair_magnitude(w.c1, w.c2, "magnitude");
}

GridImage magnitude(const CenteredVec& w) {
  return pair_magnitude(w.c1, w.c2, "magnitude");
}

GridImage magnitude(const CenterTensor& v) {
  require_pair_shape(v.t1, v.t2, "magnitude");
  require_pair_shape(v.t1, v.t3, "magnitude");
  GridImage m = new_image(v.t1.kind, v.t1.n1, v.t1.n2, 1);
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
      m.at(i, j) = std::sqrt(s);
    }
  }
  return m;
}

double one_norm(const CenterVec& w) { return image_sum(magnitude(w)); }

double one_norm(const CenteredVec& w) { return image_sum(magnitude(w)); }

double one_norm(const CenterTensor& v) { return image_sum(magnitude(v)); }

double tv_iso(const GridImage& u) { return one_norm(grad(u)); }

double tv_central(const GridImage& u) { return one_norm(grad_central(u)); }

double tgv_classic_energy(const GridImage& u, const CenterVec& omega,
                          double alpha0, double alpha1) {
  require_positive_alphas(alpha0, alpha1, "tgv_classic_energy");
  CenterVec r = grad(u);
  require_pair_shape(r.c1, omega.c1, "tgv_classic_energy");
  for (std::size_t k = 0; k < r.c1.data.size(); ++k) {
    r.c1.data[k] -= omega.c1.data[k];
    r.c2.data[k] -= omega.c2.data[k];
  }
  return alpha1 * one_norm(r) + alpha0 * one_norm(sym_grad(omega));
}

double tgv_new_energy(const PrimalBundle& z, double alpha0, double alpha1) {
  require_positive_alphas(alpha0, alpha1, "tgv_new_energy");
  return alpha0 * one_norm(z.v_dot) +
         alpha1 * (one_norm(z.w_dot) + one_norm(z.w_lr) + one_norm(z.w_ud));
}

std::pair<double, double> constraint_residuals(const PrimalBundle& z) {
  VecField lhs1 = grad_new(z.u);
  VecField a = adj_L_dot_vec(z.w_dot);
  VecField b = adj_L_lr(z.w_lr);
  VecField c = adj_L_ud(z.w_ud);
  for (std::size_t k = 0; k < lhs1.w1.data.size(); ++k) {
    lhs1.w1.data[k] -= z.omega.w1.data[k] + a.w1.data[k] + b.w1.data[k] +
                       c.w1.data[k];
  }
  for (std::size_t k = 0; k < lhs1.w2.data.size(); ++k) {
    lhs1.w2.data[k] -= z.omega.w2.data[k] + a.w2.data[k] + b.w2.data[k] +
                       c.w2.data[k];
  }
  GridImage zero1 = new_image(lhs1.w1.kind, lhs1.w1.n1, lhs1.w1.n2,
                              lhs1.w1.channels);
  GridImage zero2 = new_image(lhs1.w2.kind, lhs1.w2.n1, lhs1.w2.n2,
                              lhs1.w2.channels);
  double r1 = std::max(max_abs_diff(lhs1.w1, zero1, "constraint_residuals"),
                       max_abs_diff(lhs1.w2, zero2, "constraint_residuals"));

  TensorField lhs2 = sym_grad_new(z.omega);
  TensorField d = adj_L_dot_tensor(z.v_dot);
  double r2 = std::max(
      {max_abs_diff(lhs2.v1, d.v1, "constraint_residuals"),
       max_abs_diff(lhs2.v2, d.v2, "constraint_residuals"),
       max_abs_diff(lhs2.v3, d.v3, "constraint_residuals")});
  return {r1, r2};
}

}  // namespace tgv
