#pragma once

#include "tgv/grid.hpp"
#include "tgv/ops_classic.hpp"

namespace tgv {

// Quarter-turn maps for staggered fields.
//
// The counter-clockwise rotation (n1, n2) -> (n2, N2 - n1 + 1) carries each
// lattice onto a lattice of the rotated (n2 x n1) base grid:
//   Center -> Center        HorizEdge -> VertEdge    VertEdge -> HorizEdge
//   CenterExtX -> CenterExtY    CenterExtY -> CenterExtX    Corner -> Corner
GridKind rotated_kind(GridKind kind);

// Scalar rotation on any lattice: output(n1, n2) = input(n2, N2 - n1 + 1)
// in grid coordinates, applied channelwise.
GridImage rotate_any(const GridImage& a);

// Pushforward of a vector field under the rotation: the x-component of the
// rotated field is the negated (rotated) y-component of the original,
//   (w1, w2) -> (-R w2, R w1).
VecField rotate_vec(const VecField& w);
CenterVec rotate_vec(const CenterVec& w);

// Pushforward of a symmetric tensor field:
//   (v1, v2, v3) -> (R v2, R v1, -R v3).
TensorField rotate_tensor(const TensorField& v);
CenterTensor rotate_tensor(const CenterTensor& v);

}  // namespace tgv
