#pragma once

#include "tgv/grid.hpp"

namespace tgv {

// Staggered first- and second-order operators.  Gradients place their
// outputs between the input samples (edge midpoints, then extended centers
// and corners); values at lattice points outside the stated difference
// ranges are stored as zeros so every adjoint is a plain transpose.
//
// The binding contract is the discrete Gauss-Green chain
//   <u, div2_new v> = -<grad_new u, div_new_tensor v> = <grad2_new u, v>,
// where tensor pairings count the off-diagonal component twice in the
// norms but the divergences below are exact negative adjoints under the
// plain pairing for vectors and the doubled-v3 pairing for tensors.

// Centers -> edge midpoints: component 1 at (n1 +- 1/2, n2) differences
// vertically adjacent centers, zero on the outermost edge layers.
VecField grad_new(const GridImage& u);

// Edge midpoints -> (extended centers, corners):
//   t1 = d/dx of w1 (back onto integer rows, extended by zero),
//   t2 = d/dy of w2,
//   t3 = (d/dy of w1 + d/dx of w2) / 2 on the corner lattice.
TensorField sym_grad_new(const VecField& w);

// Composition sym_grad_new(grad_new(u)).
TensorField grad2_new(const GridImage& u);

// Negative adjoint of grad_new: <grad_new u, v> = -<u, div_new_vec v>.
GridImage div_new_vec(const VecField& v);

// Negative adjoint of sym_grad_new under the doubled-v3 pairing:
// <sym_grad_new w, v> + 2-weighted v3 term = -<w, div_new_tensor v>.
VecField div_new_tensor(const TensorField& v);

// Composition div_new_vec(div_new_tensor(v)).
GridImage div2_new(const TensorField& v);

}  // namespace tgv
