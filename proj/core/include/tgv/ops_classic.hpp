#pragma once

#include "tgv/grid.hpp"

namespace tgv {

// Vector and symmetric-tensor fields whose components all live on the
// Center lattice (the classic, non-staggered discretization).
struct CenterVec {
  GridImage c1;
  GridImage c2;
};

struct CenterTensor {
  GridImage t1;  // xx
  GridImage t2;  // yy
  GridImage t3;  // xy = yx
};

CenterVec new_center_vec(int n1, int n2, int channels = 1);
CenterTensor new_center_tensor(int n1, int n2, int channels = 1);

double inner(const CenterVec& a, const CenterVec& b);
double inner(const CenterTensor& a, const CenterTensor& b);

// Forward differences with homogeneous Neumann closure: the difference is
// zero on the last row (column).
GridImage dx_plus(const GridImage& u);
GridImage dy_plus(const GridImage& u);

// Backward differences, defined so that <dx_plus(u), w> = <u, -dx_minus(w)>
// holds exactly (and likewise in y).  On the boundary:
//   (dx_minus w)(1, n2)  =  w(1, n2)
//   (dx_minus w)(N1, n2) = -w(N1-1, n2)
// The y-direction operator is the same construction applied to columns;
// its interior formula is w(n1, n2) - w(n1, n2-1).
GridImage dx_minus(const GridImage& w);
GridImage dy_minus(const GridImage& w);

// First-order pair: grad = (dx_plus, dy_plus) and its negative adjoint
// div_vec = dx_minus + dy_minus, so that <grad u, v> = -<u, div_vec v>.
CenterVec grad(const GridImage& u);
GridImage div_vec(const CenterVec& v);

// Symmetrized gradient of a vector field and its negative adjoint under
// the tensor pairing that counts the off-diagonal component twice:
//   sym_grad(w) = (dx_plus w1, dy_plus w2, (dy_plus w1 + dx_plus w2)/2)
//   div_tensor(v) = (dx_minus v1 + dy_minus v3, dx_minus v3 + dy_minus v2)
CenterTensor sym_grad(const CenterVec& w);
CenterVec div_tensor(const CenterTensor& v);

// Second-order compositions: div2 = div_vec(div_tensor(.)) and
// grad2 = sym_grad(grad(.)), adjoint to each other: <u, div2 v> = <grad2 u, v>
// with the doubled off-diagonal pairing.
GridImage div2(const CenterTensor& v);
CenterTensor grad2(const GridImage& u);

// Central differences with mirror-reflected boundary samples,
// (1/2)(u(n1+1, n2) - u(n1-1, n2)) with u(0,.) := u(1,.) and
// u(N1+1,.) := u(N1,.); used by the total-variation variant that exhibits
// checkerboard blindness.
CenterVec grad_central(const GridImage& u);
// Negative adjoint of grad_central: <grad_central u, v> = -<u, div_central v>.
GridImage div_central(const CenterVec& v);

}  // namespace tgv
