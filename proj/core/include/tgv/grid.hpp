#pragma once

#include <string>
#include <vector>

namespace tgv {

// The six staggered lattices used to discretize an n1 x n2 image.
//
// Orientation: the first coordinate n1 walks down the stored rows, the
// second coordinate n2 walks across the stored columns:
//
//        n2 = 1   n2 = 2   ...
//   n1=1  u(1,1)   u(1,2)
//   n1=2  u(2,1)   u(2,2)
//   ...
//
// Center     holds values at integer points (1..n1) x (1..n2).
// HorizEdge  holds values at (1/2, 3/2, .., n1+1/2) x (1..n2), i.e. the
//            midpoints between vertically adjacent centers (and one layer
//            outside the image at each end).
// VertEdge   is the transposed analogue: (1..n1) x (1/2 .. n2+1/2).
// CenterExtX holds integer points (0..n1+1) x (1..n2).
// CenterExtY holds integer points (1..n1) x (0..n2+1).
// Corner     holds the cell corners (1/2 .. n1+1/2) x (1/2 .. n2+1/2).
//
// Half-integer coordinates are never stored.  Each kind maps its logical
// coordinates to 0-based storage indices by a fixed offset:
//   Center      (i, j) <-> (n1, n2) = (i+1,   j+1)
//   HorizEdge   (i, j) <-> (i+1/2,  j+1)
//   VertEdge    (i, j) <-> (i+1,    j+1/2)
//   CenterExtX  (i, j) <-> (i,      j+1)
//   CenterExtY  (i, j) <-> (i+1,    j)
//   Corner      (i, j) <-> (i+1/2,  j+1/2)
enum class GridKind {
  Center,
  HorizEdge,
  VertEdge,
  CenterExtX,
  CenterExtY,
  Corner,
};

const char* grid_kind_name(GridKind kind);

// Stored rows/columns of a lattice over an n1 x n2 base grid.
int grid_rows(GridKind kind, int n1);
int grid_cols(GridKind kind, int n2);

// A multichannel scalar field sampled on one staggered lattice.
// Storage is planar row-major: data[(c * rows + i) * cols + j].
struct GridImage {
  GridKind kind = GridKind::Center;
  int n1 = 0;
  int n2 = 0;
  int channels = 1;
  std::vector<double> data;

  int rows() const { return grid_rows(kind, n1); }
  int cols() const { return grid_cols(kind, n2); }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols());
  }

  double& at(int i, int j, int c = 0) {
    return data[(static_cast<std::size_t>(c) * rows() + i) * cols() + j];
  }
  double at(int i, int j, int c = 0) const {
    return data[(static_cast<std::size_t>(c) * rows() + i) * cols() + j];
  }

  bool same_shape(const GridImage& other) const {
    return kind == other.kind && n1 == other.n1 && n2 == other.n2 &&
           channels == other.channels;
  }
};

// Vector field (w1, w2) on edge midpoints; houses gradients and the
// vector-valued dual variables.
struct VecField {
  GridImage w1;  // HorizEdge
  GridImage w2;  // VertEdge
};

// Symmetric 2x2 tensor field identified with (v1, v2, v3) = [[v1,v3],[v3,v2]];
// diagonal entries live on the extended center grids, the off-diagonal entry
// on the cell corners.
struct TensorField {
  GridImage v1;  // CenterExtX
  GridImage v2;  // CenterExtY
  GridImage v3;  // Corner
};

GridImage new_image(GridKind kind, int n1, int n2, int channels = 1,
                    double fill = 0.0);
VecField new_vec_field(int n1, int n2, int channels = 1);
TensorField new_tensor_field(int n1, int n2, int channels = 1);

// Euclidean pairing: plain sum of elementwise products over every stored
// entry.  (Weights attached to off-diagonal tensor entries belong to the
// norms, not to this pairing.)
double inner(const GridImage& a, const GridImage& b);
double inner(const VecField& a, const VecField& b);
double inner(const TensorField& a, const TensorField& b);

// Counter-clockwise quarter rotation of a Center image:
// output(n1, n2) = u(n2, N2 - n1 + 1), so an N1 x N2 input becomes an
// N2 x N1 output.  Applied channelwise.  Only Center images are accepted.
GridImage rotate90(const GridImage& u);

}  // namespace tgv
