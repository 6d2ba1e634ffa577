#include "tgv/ops_classic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tgv {

namespace {

void require_center(const GridImage& u, const char* who) {
  if (u.kind != GridKind::Center) {
    throw std::invalid_argument(std::string("unsupported-kind: ") + who +
                                " expects Center images, got " +
                                grid_kind_name(u.kind));
  }
}

void require_pair(const GridImage& a, const GridImage& b, const char* who) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string("shape-mismatch: components of ") +
                                who + " disagree");
  }
}

}  // namespace

CenterVec new_center_vec(int n1, int n2, int channels) {
  return CenterVec{new_image(GridKind::Center, n1, n2, channels),
                   new_image(GridKind::Center, n1, n2, channels)};
}

CenterTensor new_center_tensor(int n1, int n2, int channels) {
  return CenterTensor{new_image(GridKind::Center, n1, n2, channels),
                      new_image(GridKind::Center, n1, n2, channels),
                      new_image(GridKind::Center, n1, n2, channels)};
}

double inner(const CenterVec& a, const CenterVec& b) {
  return inner(a.c1, b.c1) + inner(a.c2, b.c2);
}

double inner(const CenterTensor& a, const CenterTensor& b) {
  return inner(a.t1, b.t1) + inner(a.t2, b.t2) + inner(a.t3, b.t3);
}

GridImage dx_plus(const GridImage& u) {
  require_center(u, "dx_plus");
  GridImage out = new_image(GridKind::Center, u.n1, u.n2, u.channels);
  const int R = u.rows(), C = u.cols();
  for (int c = 0; c < u.channels; ++c)
    for (int i = 0; i + 1 < R; ++i)
      for (int j = 0; j < C; ++j)
        out.at(i, j, c) = u.at(i + 1, j, c) - u.at(i, j, c);
  return out;
}

GridImage dy_plus(const GridImage& u) {
  require_center(u, "dy_plus");
  GridImage out = new_image(GridKind::Center, u.n1, u.n2, u.channels);
  const int R = u.rows(), C = u.cols();
  for (int c = 0; c < u.channels; ++c)
    for (int i = 0; i < R; ++i)
      for (int j = 0; j + 1 < C; ++j)
        out.at(i, j, c) = u.at(i, j + 1, c) - u.at(i, j, c);
  return out;
}

GridImage dx_minus(const GridImage& w) {
  require_center(w, "dx_minus");
  GridImage out = new_image(GridKind::Center, w.n1, w.n2, w.channels);
  const int R = w.rows(), C = w.cols();
  for (int c = 0; c < w.channels; ++c)
    for (int j = 0; j < C; ++j) {
      out.at(0, j, c) = w.at(0, j, c);
      for (int i = 1; i + 1 < R; ++i)
        out.at(i, j, c) = w.at(i, j, c) - w.at(i - 1, j, c);
      if (R >= 2) out.at(R - 1, j, c) = -w.at(R - 2, j, c);
    }
  return out;
}

GridImage dy_minus(const GridImage& w) {
  require_center(w, "dy_minus");
  GridImage out = new_image(GridKind::Center, w.n1, w.n2, w.channels);
  const int R = w.rows(), C = w.cols();
  for (int c = 0; c < w.channels; ++c)
    for (int i = 0; i < R; ++i) {
      out.at(i, 0, c) = w.at(i, 0, c);
      for (int j = 1; j + 1 < C; ++j)
        out.at(i, j, c) = w.at(i, j, c) - w.at(i, j - 1, c);
      if (C >= 2) out.at(i, C - 1, c) = -w.at(i, C - 2, c);
    }
  return out;
}

CenterVec grad(const GridImage& u) { return CenterVec{dx_plus(u), dy_plus(u)}; }

GridImage div_vec(const CenterVec& v) {
  require_pair(v.c1, v.c2, "div_vec");
  GridImage out = dx_minus(v.c1);
  GridImage dy = dy_minus(v.c2);
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] += dy.data[k];
  return out;
}

CenterTensor sym_grad(const CenterVec& w) {
  require_pair(w.c1, w.c2, "sym_grad");
  CenterTensor out{dx_plus(w.c1), dy_plus(w.c2), dy_plus(w.c1)};
  GridImage cross = dx_plus(w.c2);
  for (std::size_t k = 0; k < out.t3.data.size(); ++k)
    out.t3.data[k] = 0.5 * (out.t3.data[k] + cross.data[k]);
  return out;
}

CenterVec div_tensor(const CenterTensor& v) {
  require_pair(v.t1, v.t2, "div_tensor");
  require_pair(v.t1, v.t3, "div_tensor");
  GridImage a = dx_minus(v.t1);
  GridImage b = dy_minus(v.t3);
  for (std::size_t k = 0; k < a.data.size(); ++k) a.data[k] += b.data[k];
  GridImage c = dx_minus(v.t3);
  GridImage d = dy_minus(v.t2);
  for (std::size_t k = 0; k < c.data.size(); ++k) c.data[k] += d.data[k];
  return CenterVec{std::move(a), std::move(c)};
}

GridImage div2(const CenterTensor& v) { return div_vec(div_tensor(v)); }

CenterTensor grad2(const GridImage& u) { return sym_grad(grad(u)); }

CenterVec grad_central(const GridImage& u) {
  require_center(u, "grad_central");
  CenterVec out = new_center_vec(u.n1, u.n2, u.channels);
  const int R = u.rows(), C = u.cols();
  for (int c = 0; c < u.channels; ++c)
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j) {
        out.c1.at(i, j, c) = 0.5 * (u.at(std::min(i + 1, R - 1), j, c) -
                                    u.at(std::max(i - 1, 0), j, c));
        out.c2.at(i, j, c) = 0.5 * (u.at(i, std::min(j + 1, C - 1), c) -
                                    u.at(i, std::max(j - 1, 0), c));
      }
  return out;
}

GridImage div_central(const CenterVec& v) {
  require_pair(v.c1, v.c2, "div_central");
  require_center(v.c1, "div_central");
  const GridImage& p = v.c1;
  const GridImage& q = v.c2;
  GridImage out = new_image(GridKind::Center, p.n1, p.n2, p.channels);
  const int R = p.rows(), C = p.cols();
  for (int c = 0; c < p.channels; ++c)
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j) {
        double sx;
        if (i == 0)
          sx = 0.5 * (p.at(0, j, c) + p.at(1, j, c));
        else if (i == R - 1)
          sx = -0.5 * (p.at(R - 2, j, c) + p.at(R - 1, j, c));
        else
          sx = 0.5 * (p.at(i + 1, j, c) - p.at(i - 1, j, c));
        double sy;
        if (j == 0)
          sy = 0.5 * (q.at(i, 0, c) + q.at(i, 1, c));
        else if (j == C - 1)
          sy = -0.5 * (q.at(i, C - 2, c) + q.at(i, C - 1, c));
        else
          sy = 0.5 * (q.at(i, j + 1, c) - q.at(i, j - 1, c));
        out.at(i, j, c) = sx + sy;
      }
  return out;
}

}  // namespace tgv
