#include "tgv/ops_staggered.hpp"

#include <stdexcept>
#include <string>

namespace tgv {

namespace {

void require_kind(const GridImage& img, GridKind kind, const char* who) {
  if (img.kind != kind) {
    throw std::invalid_argument(std::string("unsupported-kind: ") + who +
                                " expects " + grid_kind_name(kind) + ", got " +
                                grid_kind_name(img.kind));
  }
}

}  // namespace

VecField grad_new(const GridImage& u) {
  require_kind(u, GridKind::Center, "grad_new");
  const int N1 = u.n1, N2 = u.n2, C = u.channels;
  VecField out = new_vec_field(N1, N2, C);
  for (int c = 0; c < C; ++c) {
    for (int i = 1; i < N1; ++i)  // rows 0 and N1 stay zero
      for (int j = 0; j < N2; ++j)
        out.w1.at(i, j, c) = u.at(i, j, c) - u.at(i - 1, j, c);
    for (int i = 0; i < N1; ++i)
      for (int j = 1; j < N2; ++j)
        out.w2.at(i, j, c) = u.at(i, j, c) - u.at(i, j - 1, c);
  }
  return out;
}

TensorField sym_grad_new(const VecField& w) {
  require_kind(w.w1, GridKind::HorizEdge, "sym_grad_new");
  require_kind(w.w2, GridKind::VertEdge, "sym_grad_new");
  const int N1 = w.w1.n1, N2 = w.w1.n2, C = w.w1.channels;
  if (w.w2.n1 != N1 || w.w2.n2 != N2 || w.w2.channels != C) {
    throw std::invalid_argument("shape-mismatch: components of sym_grad_new disagree");
  }
  TensorField out = new_tensor_field(N1, N2, C);
  for (int c = 0; c < C; ++c) {
    // d/dx of w1, landing on the extended center rows 1..N1.
    for (int a = 1; a <= N1; ++a)
      for (int j = 0; j < N2; ++j)
        out.v1.at(a, j, c) = w.w1.at(a, j, c) - w.w1.at(a - 1, j, c);
    // d/dy of w2, landing on the extended center columns 1..N2.
    for (int i = 0; i < N1; ++i)
      for (int b = 1; b <= N2; ++b)
        out.v2.at(i, b, c) = w.w2.at(i, b, c) - w.w2.at(i, b - 1, c);
    // Off-diagonal component on the corner lattice: each cross difference
    // is alive only away from the respective boundary layers.
    for (int i = 0; i <= N1; ++i)
      for (int j = 0; j <= N2; ++j) {
        double dyw1 = 0.0, dxw2 = 0.0;
        if (j >= 1 && j <= N2 - 1)
          dyw1 = w.w1.at(i, j, c) - w.w1.at(i, j - 1, c);
        if (i >= 1 && i <= N1 - 1)
          dxw2 = w.w2.at(i, j, c) - w.w2.at(i - 1, j, c);
        out.v3.at(i, j, c) = 0.5 * (dyw1 + dxw2);
      }
  }
  return out;
}

TensorField grad2_new(const GridImage& u) { return sym_grad_new(grad_new(u)); }

GridImage div_new_vec(const VecField& v) {
  require_kind(v.w1, GridKind::HorizEdge, "div_new_vec");
  require_kind(v.w2, GridKind::VertEdge, "div_new_vec");
  const int N1 = v.w1.n1, N2 = v.w1.n2, C = v.w1.channels;
  if (v.w2.n1 != N1 || v.w2.n2 != N2 || v.w2.channels != C) {
    throw std::invalid_argument("shape-mismatch: components of div_new_vec disagree");
  }
  GridImage out = new_image(GridKind::Center, N1, N2, C);
  for (int c = 0; c < C; ++c)
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j < N2; ++j) {
        double sx;
        if (i == 0)
          sx = v.w1.at(1, j, c);
        else if (i == N1 - 1)
          sx = -v.w1.at(N1 - 1, j, c);
        else
          sx = v.w1.at(i + 1, j, c) - v.w1.at(i, j, c);
        double sy;
        if (j == 0)
          sy = v.w2.at(i, 1, c);
        else if (j == N2 - 1)
          sy = -v.w2.at(i, N2 - 1, c);
        else
          sy = v.w2.at(i, j + 1, c) - v.w2.at(i, j, c);
        out.at(i, j, c) = sx + sy;
      }
  return out;
}

VecField div_new_tensor(const TensorField& v) {
  require_kind(v.v1, GridKind::CenterExtX, "div_new_tensor");
  require_kind(v.v2, GridKind::CenterExtY, "div_new_tensor");
  require_kind(v.v3, GridKind::Corner, "div_new_tensor");
  const int N1 = v.v1.n1, N2 = v.v1.n2, C = v.v1.channels;
  if (v.v2.n1 != N1 || v.v2.n2 != N2 || v.v2.channels != C ||
      v.v3.n1 != N1 || v.v3.n2 != N2 || v.v3.channels != C) {
    throw std::invalid_argument("shape-mismatch: components of div_new_tensor disagree");
  }
  VecField out = new_vec_field(N1, N2, C);
  for (int c = 0; c < C; ++c) {
    // First component, on the horizontal-edge lattice (rows 0..N1).
    // The extension rows 0 and N1+1 of v1 never enter: the difference uses
    // interior rows only, with single-sample boundary rows.
    for (int i = 0; i <= N1; ++i)
      for (int j = 0; j < N2; ++j) {
        double sx;
        if (i == 0)
          sx = v.v1.at(1, j, c);
        else if (i == N1)
          sx = -v.v1.at(N1, j, c);
        else
          sx = v.v1.at(i + 1, j, c) - v.v1.at(i, j, c);
        double sy;
        if (j == 0)
          sy = v.v3.at(i, 1, c);
        else if (j == N2 - 1)
          sy = -v.v3.at(i, N2 - 1, c);
        else
          sy = v.v3.at(i, j + 1, c) - v.v3.at(i, j, c);
        out.w1.at(i, j, c) = sx + sy;
      }
    // Second component, on the vertical-edge lattice (columns 0..N2).
    for (int i = 0; i < N1; ++i)
      for (int j = 0; j <= N2; ++j) {
        double sy;
        if (j == 0)
          sy = v.v2.at(i, 1, c);
        else if (j == N2)
          sy = -v.v2.at(i, N2, c);
        else
          sy = v.v2.at(i, j + 1, c) - v.v2.at(i, j, c);
        double sx;
        if (i == 0)
          sx = v.v3.at(1, j, c);
        else if (i == N1 - 1)
          sx = -v.v3.at(N1 - 1, j, c);
        else
          sx = v.v3.at(i + 1, j, c) - v.v3.at(i, j, c);
        out.w2.at(i, j, c) = sy + sx;
      }
  }
  return out;
}

GridImage div2_new(const TensorField& v) { return div_new_vec(div_new_tensor(v)); }

}  // namespace tgv
