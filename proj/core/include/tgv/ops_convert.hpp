#pragma once

#include "tgv/grid.hpp"
#include "tgv/ops_classic.hpp"

namespace tgv {

// Grid-conversion (interpolation) operators.  Staggered fields have their
// components on different lattices; these maps resample both components of
// a field onto one common lattice by averaging the nearest neighbors, so
// pointwise vector norms become meaningful.  Each output entry is a convex
// combination of inputs; samples that would fall outside a lattice are
// treated as zeros, which halves the averaging weights on boundary rows.

// Two same-kind components: the result of converting a staggered field.
struct CenteredVec {
  GridImage c1;
  GridImage c2;
};

CenteredVec new_centered_vec(GridKind kind, int n1, int n2, int channels = 1);
double inner(const CenteredVec& a, const CenteredVec& b);

// Both components averaged onto the centers (two-point averages).
CenteredVec L_dot_vec(const VecField& w);
// Both components on the horizontal-edge lattice: first by identity,
// second by a four-point average (two-point on the outermost rows).
CenteredVec L_lr(const VecField& w);
// Both components on the vertical-edge lattice, mirror construction.
CenteredVec L_ud(const VecField& w);
// Tensor components on the centers: diagonals by restriction (the
// extension rows are dropped), off-diagonal by the four-corner average.
CenterTensor L_dot_tensor(const TensorField& v);

// Exact adjoints of the four maps above under the plain pairing (which,
// for the tensor pair, coincides with the adjoint under the doubled
// off-diagonal pairing on both sides).
VecField adj_L_dot_vec(const CenteredVec& p);
VecField adj_L_lr(const CenteredVec& p);
VecField adj_L_ud(const CenteredVec& p);
TensorField adj_L_dot_tensor(const CenterTensor& t);

// The full primal and dual variable stacks of the rotation-invariant
// second-order model, and the block operator connecting them.
struct PrimalBundle {
  CenterTensor v_dot;  // tensor converted to centers
  CenteredVec w_dot;   // vector converted to centers
  CenteredVec w_lr;    // vector converted to horizontal edges
  CenteredVec w_ud;    // vector converted to vertical edges
  GridImage u;         // image
  VecField omega;      // vector field (the second-order split variable)
};

struct DualBundle {
  TensorField v;
  VecField w;
};

PrimalBundle new_primal_bundle(int n1, int n2, int channels = 1);
DualBundle new_dual_bundle(int n1, int n2, int channels = 1);

// Block operator row view:
//   v-part = adj_L_dot_tensor(v_dot) - sym_grad_new(omega)
//   w-part = adj_L_dot_vec(w_dot) + adj_L_lr(w_lr) + adj_L_ud(w_ud)
//            - grad_new(u) + omega
DualBundle apply_Lbar_star(const PrimalBundle& z);

// Adjoint of apply_Lbar_star under the pairing that doubles the
// off-diagonal tensor components on both sides:
//   (L_dot_tensor(v), L_dot_vec(w), L_lr(w), L_ud(w),
//    div_new_vec(w), div_new_tensor(v) + w)
PrimalBundle apply_Lbar(const DualBundle& y);

// Conversion operators for the center-valued dual field of Condat's
// total-variation discretization.  The dual components are constrained by
// zero boundary conditions — v1 vanishes on its last row, v2 on its last
// column — which the operators enforce by masking reads; the edge-lattice
// conversions additionally force their last row/column to zero.
CenterVec condat_L_dot(const CenterVec& v);
CenterVec condat_L_lr(const CenterVec& v);
CenterVec condat_L_ud(const CenterVec& v);
CenterVec condat_adj_L_dot(const CenterVec& p);
CenterVec condat_adj_L_lr(const CenterVec& p);
CenterVec condat_adj_L_ud(const CenterVec& p);

}  // namespace tgv
