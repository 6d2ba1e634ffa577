#include "tgv/rotation.hpp"

namespace tgv {

GridKind rotated_kind(GridKind kind) {
  switch (kind) {
    case GridKind::Center: return GridKind::Center;
    case GridKind::HorizEdge: return GridKind::VertEdge;
    case GridKind::VertEdge: return GridKind::HorizEdge;
    case GridKind::CenterExtX: return GridKind::CenterExtY;
    case GridKind::CenterExtY: return GridKind::CenterExtX;
    case GridKind::Corner: return GridKind::Corner;
  }
  return kind;
}

GridImage rotate_any(const GridImage& a) {
  GridImage out = new_image(rotated_kind(a.kind), a.n2, a.n1, a.channels);
  // In storage indices the coordinate map collapses to the same rule for
  // every lattice: new (i, j) reads old (j, cols - 1 - i).
  const int R = out.rows(), C = out.cols(), ac = a.cols();
  for (int c = 0; c < a.channels; ++c)
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j) out.at(i, j, c) = a.at(j, ac - 1 - i, c);
  return out;
}

VecField rotate_vec(const VecField& w) {
  VecField out{rotate_any(w.w2), rotate_any(w.w1)};
  for (double& x : out.w1.data) x = -x;
  return out;
}

CenterVec rotate_vec(const CenterVec& w) {
  CenterVec out{rotate_any(w.c2), rotate_any(w.c1)};
  for (double& x : out.c1.data) x = -x;
  return out;
}

TensorField rotate_tensor(const TensorField& v) {
  TensorField out{rotate_any(v.v2), rotate_any(v.v1), rotate_any(v.v3)};
  for (double& x : out.v3.data) x = -x;
  return out;
}

CenterTensor rotate_tensor(const CenterTensor& v) {
  CenterTensor out{rotate_any(v.t2), rotate_any(v.t1), rotate_any(v.t3)};
  for (double& x : out.t3.data) x = -x;
  return out;
}

}  // namespace tgv
