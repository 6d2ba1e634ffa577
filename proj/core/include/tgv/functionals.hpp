#pragma once

#include <utility>

#include "tgv/grid.hpp"
#include "tgv/ops_classic.hpp"
#include "tgv/ops_convert.hpp"

namespace tgv {

// Pointwise magnitude of a multi-component field: one output channel on the
// same lattice, each pixel the Euclidean norm taken jointly over every
// component and every channel.  For the tensor triple this is the Frobenius
// norm of the symmetric matrix [[t1, t3], [t3, t2]], i.e.
// sqrt(t1^2 + t2^2 + 2 t3^2).
GridImage magnitude(const CenterVec& w);
GridImage magnitude(const CenteredVec& w);
GridImage magnitude(const CenterTensor& v);

// l1 norms built on the magnitudes above: the plain sum of the pointwise
// magnitudes in storage order, so repeated evaluations are bit-identical.
double one_norm(const CenterVec& w);
double one_norm(const CenteredVec& w);
double one_norm(const CenterTensor& v);

// Isotropic discrete total variation on forward differences with Neumann
// closure: sum over pixels of sqrt((dx_plus u)^2 + (dy_plus u)^2), channels
// folded into the pointwise norm.  Not invariant under quarter turns: the
// 2x2 delta image has value sqrt(2) while its rotation has value 2.
double tv_iso(const GridImage& u);

// The same construction on central differences with mirrored boundary
// samples.  Central differences skip over nearest neighbors, so strict
// checkerboard patterns contribute nothing away from the boundary.
double tv_central(const GridImage& u);

// Second-order energy of the classic discretization at a fixed pair
// (u, omega):
//   alpha1 * || grad(u) - omega ||_1  +  alpha0 * || sym_grad(omega) ||_1.
// Both alphas must be positive.
double tgv_classic_energy(const GridImage& u, const CenterVec& omega,
                          double alpha0, double alpha1);

// Second-order energy of the rotation-invariant discretization at a fixed
// primal bundle, evaluated on the converted (collocated) fields:
//   alpha0 * ||v_dot||_1
//     + alpha1 * (||w_dot||_1 + ||w_lr||_1 + ||w_ud||_1).
// Both alphas must be positive.
double tgv_new_energy(const PrimalBundle& z, double alpha0, double alpha1);

// Max-norm defects of the two coupling constraints the bundle is meant to
// satisfy,
//   grad_new(u) - omega = adj_L_dot_vec(w_dot) + adj_L_lr(w_lr)
//                           + adj_L_ud(w_ud)
//   sym_grad_new(omega) = adj_L_dot_tensor(v_dot),
// returned in that order.  Zero for a feasible bundle.
std::pair<double, double> constraint_residuals(const PrimalBundle& z);

}  // namespace tgv
