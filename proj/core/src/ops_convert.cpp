#include "tgv/ops_convert.hpp"

#include <stdexcept>
#include <string>

#include "tgv/ops_staggered.hpp"

namespace tgv {

namespace {

void require_kind(const GridImage& img, GridKind kind, const char* who) {
  if (img.kind != kind) {
    throw std::invalid_argument(std::string("unsupported-kind: ") + who +
                                " expects " + grid_kind_name(kind) + ", got " +
                                grid_kind_name(img.kind));
  }
}

void require_field(const VecField& w, const char* who) {
  require_kind(w.w1, GridKind::HorizEdge, who);
  require_kind(w.w2, GridKind::VertEdge, who);
  if (w.w2.n1 != w.w1.n1 || w.w2.n2 != w.w1.n2 || w.w2.channels != w.w1.channels)
    throw std::invalid_argument(std::string("shape-mismatch: components of ") + who);
}

void require_tensor(const TensorField& v, const char* who) {
  require_kind(v.v1, GridKind::CenterExtX, who);
  require_kind(v.v2, GridKind::CenterExtY, who);
  require_kind(v.v3, GridKind::Corner, who);
  if (v.v2.n1 != v.v1.n1 || v.v2.n2 != v.v1.n2 || v.v3.n1 != v.v1.n1 ||
      v.v3.n2 != v.v1.n2 || v.v2.channels != v.v1.channels ||
      v.v3.channels != v.v1.channels)
    throw std::invalid_argument(std::string("shape-mismatch: components of ") + who);
}

}  // namespace

CenteredVec new_centered_vec(GridKind kind, int n1, int n2, int channels) {
  return CenteredVec{new_image(kind, n1, n2, channels),
                     new_image(kind, n1, n2, channels)};
}

double inner(const CenteredVec& a, const CenteredVec& b) {
  return inner(a.c1, b.c1) + inner(a.c2, b.c2);
}

CenteredVec L_dot_vec(const VecField& w) {
  require_field(w, "L_dot_vec");
  const int N1 = w.w1.n1, N2 = w.w1.n2, C = w.w1.channels;
  CenteredVec out = new_centered_vec(GridKind::Center, N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        out.c1.at(i, j, c) = 0.5 * (w.w1.at(i + 1, j, c) + w.w1.at(i, j, c));
        out.c2.at(i, j, c) = 0.5 * (w.w2.at(i, j + 1, c) + w.w2.at(i, j, c));
      }
  return out;
}

CenteredVec L_lr(const VecField& w) {
  require_field(w, "L_lr");
  const int N1 = w.w1.n1, N2 = w.w1.n2, C = w.w1.channels;
  CenteredVec out = new_centered_vec(GridKind::HorizEdge, N1, N2, C);
  out.c1 = w.w1;
  for (int c = 0; c < C; ++c)
    for (int i = 0; i <= N1; ++i)
      for (int j = 0; j < N2; ++j) {
        // Average the four vertical-edge samples around the horizontal
        // edge; rows outside collapse to the two nearest samples.
        const int ilo = (i == 0) ? 0 : i - 1;
        const int ihi = (i == N1) ? N1 - 1 : i;
        double s = 0.0;
        for (int ii = ilo; ii <= ihi; ++ii)
          s += w.w2.at(ii, j, c) + w.w2.at(ii, j + 1, c);
        out.c2.at(i, j, c) = 0.25 * s;
      }
  return out;
}

CenteredVec L_ud(const VecField& w) {
  require_field(w, "L_ud");
  const int N1 = w.w1.n1, N2 = w.w1.n2, C = w.w1.channels;
  CenteredVec out = new_centered_vec(GridKind::VertEdge, N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j <= N2; ++j) {
        const int jlo = (j == 0) ? 0 : j - 1;
        const int jhi = (j == N2) ? N2 - 1 : j;
        double s = 0.0;
        for (int jj = jlo; jj <= jhi; ++jj)
          s += w.w1.at(i, jj, c) + w.w1.at(i + 1, jj, c);
        out.c1.at(i, j, c) = 0.25 * s;
      }
  out.c2 = w.w2;
  return out;
}

CenterTensor L_dot_tensor(const TensorField& v) {
  require_tensor(v, "L_dot_tensor");
  const int N1 = v.v1.n1, N2 = v.v1.n2, C = v.v1.channels;
  CenterTensor out = new_center_tensor(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        out.t1.at(i, j, c) = v.v1.at(i + 1, j, c);
        out.t2.at(i, j, c) = v.v2.at(i, j + 1, c);
        out.t3.at(i, j, c) = 0.25 * (v.v3.at(i, j, c) + v.v3.at(i + 1, j, c) +
                                     v.v3.at(i, j + 1, c) + v.v3.at(i + 1, j + 1, c));
      }
  return out;
}

VecField adj_L_dot_vec(const CenteredVec& p) {
  require_kind(p.c1, GridKind::Center, "adj_L_dot_vec");
  require_kind(p.c2, GridKind::Center, "adj_L_dot_vec");
  const int N1 = p.c1.n1, N2 = p.c1.n2, C = p.c1.channels;
  VecField out = new_vec_field(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        const double h1 = 0.5 * p.c1.at(i, j, c);
        out.w1.at(i + 1, j, c) += h1;
        out.w1.at(i, j, c) += h1;
        const double h2 = 0.5 * p.c2.at(i, j, c);
        out.w2.at(i, j + 1, c) += h2;
        out.w2.at(i, j, c) += h2;
      }
  return out;
}

VecField adj_L_lr(const CenteredVec& p) {
  require_kind(p.c1, GridKind::HorizEdge, "adj_L_lr");
  require_kind(p.c2, GridKind::HorizEdge, "adj_L_lr");
  const int N1 = p.c1.n1, N2 = p.c1.n2, C = p.c1.channels;
  VecField out = new_vec_field(N1, N2, C);
  out.w1 = p.c1;
  for (int c = 0; c < C; ++c)
    for (int i = 0; i <= N1; ++i)
      for (int j = 0; j < N2; ++j) {
        const double q = 0.25 * p.c2.at(i, j, c);
        const int ilo = (i == 0) ? 0 : i - 1;
        const int ihi = (i == N1) ? N1 - 1 : i;
        for (int ii = ilo; ii <= ihi; ++ii) {
          out.w2.at(ii, j, c) += q;
          out.w2.at(ii, j + 1, c) += q;
        }
      }
  return out;
}

VecField adj_L_ud(const CenteredVec& p) {
  require_kind(p.c1, GridKind::VertEdge, "adj_L_ud");
  require_kind(p.c2, GridKind::VertEdge, "adj_L_ud");
  const int N1 = p.c1.n1, N2 = p.c1.n2, C = p.c1.channels;
  VecField out = new_vec_field(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j <= N2; ++j) {
        const double q = 0.25 * p.c1.at(i, j, c);
        const int jlo = (j == 0) ? 0 : j - 1;
        const int jhi = (j == N2) ? N2 - 1 : j;
        for (int jj = jlo; jj <= jhi; ++jj) {
          out.w1.at(i, jj, c) += q;
          out.w1.at(i + 1, jj, c) += q;
        }
      }
  out.w2 = p.c2;
  return out;
}

TensorField adj_L_dot_tensor(const CenterTensor& t) {
  require_kind(t.t1, GridKind::Center, "adj_L_dot_tensor");
  const int N1 = t.t1.n1, N2 = t.t1.n2, C = t.t1.channels;
  TensorField out = new_tensor_field(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        out.v1.at(i + 1, j, c) += t.t1.at(i, j, c);
        out.v2.at(i, j + 1, c) += t.t2.at(i, j, c);
        const double q = 0.25 * t.t3.at(i, j, c);
        out.v3.at(i, j, c) += q;
        out.v3.at(i + 1, j, c) += q;
        out.v3.at(i, j + 1, c) += q;
        out.v3.at(i + 1, j + 1, c) += q;
      }
  return out;
}

PrimalBundle new_primal_bundle(int n1, int n2, int channels) {
  return PrimalBundle{new_center_tensor(n1, n2, channels),
                      new_centered_vec(GridKind::Center, n1, n2, channels),
                      new_centered_vec(GridKind::HorizEdge, n1, n2, channels),
                      new_centered_vec(GridKind::VertEdge, n1, n2, channels),
                      new_image(GridKind::Center, n1, n2, channels),
                      new_vec_field(n1, n2, channels)};
}

DualBundle new_dual_bundle(int n1, int n2, int channels) {
  return DualBundle{new_tensor_field(n1, n2, channels),
                    new_vec_field(n1, n2, channels)};
}

DualBundle apply_Lbar_star(const PrimalBundle& z) {
  DualBundle y;
  y.v = adj_L_dot_tensor(z.v_dot);
  TensorField eo = sym_grad_new(z.omega);
  for (std::size_t k = 0; k < y.v.v1.data.size(); ++k) y.v.v1.data[k] -= eo.v1.data[k];
  for (std::size_t k = 0; k < y.v.v2.data.size(); ++k) y.v.v2.data[k] -= eo.v2.data[k];
  for (std::size_t k = 0; k < y.v.v3.data.size(); ++k) y.v.v3.data[k] -= eo.v3.data[k];

  y.w = adj_L_dot_vec(z.w_dot);
  VecField lr = adj_L_lr(z.w_lr);
  VecField ud = adj_L_ud(z.w_ud);
  VecField gu = grad_new(z.u);
  for (std::size_t k = 0; k < y.w.w1.data.size(); ++k)
    y.w.w1.data[k] += lr.w1.data[k] + ud.w1.data[k] - gu.w1.data[k] + z.omega.w1.data[k];
  for (std::size_t k = 0; k < y.w.w2.data.size(); ++k)
    y.w.w2.data[k] += lr.w2.data[k] + ud.w2.data[k] - gu.w2.data[k] + z.omega.w2.data[k];
  return y;
}

PrimalBundle apply_Lbar(const DualBundle& y) {
  PrimalBundle z;
  z.v_dot = L_dot_tensor(y.v);
  z.w_dot = L_dot_vec(y.w);
  z.w_lr = L_lr(y.w);
  z.w_ud = L_ud(y.w);
  z.u = div_new_vec(y.w);
  z.omega = div_new_tensor(y.v);
  for (std::size_t k = 0; k < z.omega.w1.data.size(); ++k)
    z.omega.w1.data[k] += y.w.w1.data[k];
  for (std::size_t k = 0; k < z.omega.w2.data.size(); ++k)
    z.omega.w2.data[k] += y.w.w2.data[k];
  return z;
}

namespace {

// Reads of the Condat dual field: component 1 carries zero boundary values
// on its outermost rows (the stored last row is part of the constraint and
// reads as zero), component 2 likewise in the second axis.
inline double masked1(const GridImage& v1, int i, int j, int c) {
  if (i < 0 || i >= v1.n1 - 1 || j < 0 || j >= v1.n2) return 0.0;
  return v1.at(i, j, c);
}

inline double masked2(const GridImage& v2, int i, int j, int c) {
  if (i < 0 || i >= v2.n1 || j < 0 || j >= v2.n2 - 1) return 0.0;
  return v2.at(i, j, c);
}

void require_center_pair(const CenterVec& v, const char* who) {
  if (v.c1.kind != GridKind::Center || v.c2.kind != GridKind::Center ||
      !v.c1.same_shape(v.c2))
    throw std::invalid_argument(std::string("shape-mismatch: ") + who +
                                " expects two matching Center components");
}

}  // namespace

CenterVec condat_L_dot(const CenterVec& v) {
  require_center_pair(v, "condat_L_dot");
  const int N1 = v.c1.n1, N2 = v.c1.n2, C = v.c1.channels;
  CenterVec out = new_center_vec(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        out.c1.at(i, j, c) =
            0.5 * (masked1(v.c1, i, j, c) + masked1(v.c1, i - 1, j, c));
        out.c2.at(i, j, c) =
            0.5 * (masked2(v.c2, i, j, c) + masked2(v.c2, i, j - 1, c));
      }
  return out;
}

CenterVec condat_L_lr(const CenterVec& v) {
  require_center_pair(v, "condat_L_lr");
  const int N1 = v.c1.n1, N2 = v.c1.n2, C = v.c1.channels;
  CenterVec out = new_center_vec(N1, N2, C);
  // Horizontal-edge evaluation: the first component already lives on these
  // edges, the second is gathered from its four neighbours.  The output
  // row that would sit on the edge beyond the image stays zero.
  for (int c = 0; c < C; ++c)
    for (int i = 0; i + 1 < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        out.c1.at(i, j, c) = masked1(v.c1, i, j, c);
        out.c2.at(i, j, c) =
            0.25 * (masked2(v.c2, i, j, c) + masked2(v.c2, i, j - 1, c) +
                    masked2(v.c2, i + 1, j, c) + masked2(v.c2, i + 1, j - 1, c));
      }
  return out;
}

CenterVec condat_L_ud(const CenterVec& v) {
  require_center_pair(v, "condat_L_ud");
  const int N1 = v.c1.n1, N2 = v.c1.n2, C = v.c1.channels;
  CenterVec out = new_center_vec(N1, N2, C);
  // Vertical-edge evaluation, mirror of condat_L_lr: second component
  // exact, first averaged; the last output column stays zero.
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j + 1 < N2; ++j) {
        out.c1.at(i, j, c) =
            0.25 * (masked1(v.c1, i, j, c) + masked1(v.c1, i - 1, j, c) +
                    masked1(v.c1, i, j + 1, c) + masked1(v.c1, i - 1, j + 1, c));
        out.c2.at(i, j, c) = masked2(v.c2, i, j, c);
      }
  return out;
}

namespace {

inline void scatter1(GridImage& v1, int i, int j, int c, double val) {
  if (i < 0 || i >= v1.n1 - 1 || j < 0 || j >= v1.n2) return;
  v1.at(i, j, c) += val;
}

inline void scatter2(GridImage& v2, int i, int j, int c, double val) {
  if (i < 0 || i >= v2.n1 || j < 0 || j >= v2.n2 - 1) return;
  v2.at(i, j, c) += val;
}

}  // namespace

CenterVec condat_adj_L_dot(const CenterVec& p) {
  require_center_pair(p, "condat_adj_L_dot");
  const int N1 = p.c1.n1, N2 = p.c1.n2, C = p.c1.channels;
  CenterVec out = new_center_vec(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        const double h1 = 0.5 * p.c1.at(i, j, c);
        scatter1(out.c1, i, j, c, h1);
        scatter1(out.c1, i - 1, j, c, h1);
        const double h2 = 0.5 * p.c2.at(i, j, c);
        scatter2(out.c2, i, j, c, h2);
        scatter2(out.c2, i, j - 1, c, h2);
      }
  return out;
}

CenterVec condat_adj_L_lr(const CenterVec& p) {
  require_center_pair(p, "condat_adj_L_lr");
  const int N1 = p.c1.n1, N2 = p.c1.n2, C = p.c1.channels;
  CenterVec out = new_center_vec(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i + 1 < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        scatter1(out.c1, i, j, c, p.c1.at(i, j, c));
        const double q = 0.25 * p.c2.at(i, j, c);
        scatter2(out.c2, i, j, c, q);
        scatter2(out.c2, i, j - 1, c, q);
        scatter2(out.c2, i + 1, j, c, q);
        scatter2(out.c2, i + 1, j - 1, c, q);
      }
  return out;
}

CenterVec condat_adj_L_ud(const CenterVec& p) {
  require_center_pair(p, "condat_adj_L_ud");
  const int N1 = p.c1.n1, N2 = p.c1.n2, C = p.c1.channels;
  CenterVec out = new_center_vec(N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j + 1 < N2; ++j) {
        const double q = 0.25 * p.c1.at(i, j, c);
        scatter1(out.c1, i, j, c, q);
        scatter1(out.c1, i - 1, j, c, q);
        scatter1(out.c1, i, j + 1, c, q);
        scatter1(out.c1, i - 1, j + 1, c, q);
        scatter2(out.c2, i, j, c, p.c2.at(i, j, c));
      }
  return out;
}

}  // namespace tgv
