#include "tgv/grid.hpp"

#include <stdexcept>
#include <string>

namespace tgv {

const char* grid_kind_name(GridKind kind) {
  switch (kind) {
    case GridKind::Center: return "Center";
    case GridKind::HorizEdge: return "HorizEdge";
    case GridKind::VertEdge: return "VertEdge";
    case GridKind::CenterExtX: return "CenterExtX";
    case GridKind::CenterExtY: return "CenterExtY";
    case GridKind::Corner: return "Corner";
  }
  return "?";
}

int grid_rows(GridKind kind, int n1) {
  switch (kind) {
    case GridKind::Center: return n1;
    case GridKind::HorizEdge: return n1 + 1;
    case GridKind::VertEdge: return n1;
    case GridKind::CenterExtX: return n1 + 2;
    case GridKind::CenterExtY: return n1;
    case GridKind::Corner: return n1 + 1;
  }
  return 0;
}

int grid_cols(GridKind kind, int n2) {
  switch (kind) {
    case GridKind::Center: return n2;
    case GridKind::HorizEdge: return n2;
    case GridKind::VertEdge: return n2 + 1;
    case GridKind::CenterExtX: return n2;
    case GridKind::CenterExtY: return n2 + 2;
    case GridKind::Corner: return n2 + 1;
  }
  return 0;
}

GridImage new_image(GridKind kind, int n1, int n2, int channels, double fill) {
  if (n1 < 2 || n2 < 2) {
    throw std::invalid_argument("dimension-too-small: grid needs n1 >= 2 and n2 >= 2, got " +
                                std::to_string(n1) + "x" + std::to_string(n2));
  }
  if (channels < 1) {
    throw std::invalid_argument("dimension-too-small: channels must be >= 1, got " +
                                std::to_string(channels));
  }
  GridImage img;
  img.kind = kind;
  img.n1 = n1;
  img.n2 = n2;
  img.channels = channels;
  img.data.assign(img.plane_size() * static_cast<std::size_t>(channels), fill);
  return img;
}

VecField new_vec_field(int n1, int n2, int channels) {
  return VecField{new_image(GridKind::HorizEdge, n1, n2, channels),
                  new_image(GridKind::VertEdge, n1, n2, channels)};
}

TensorField new_tensor_field(int n1, int n2, int channels) {
  return TensorField{new_image(GridKind::CenterExtX, n1, n2, channels),
                     new_image(GridKind::CenterExtY, n1, n2, channels),
                     new_image(GridKind::Corner, n1, n2, channels)};
}

static void require_same_shape(const GridImage& a, const GridImage& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(
        std::string("shape-mismatch: ") + grid_kind_name(a.kind) + " " +
        std::to_string(a.n1) + "x" + std::to_string(a.n2) + "x" +
        std::to_string(a.channels) + " vs " + grid_kind_name(b.kind) + " " +
        std::to_string(b.n1) + "x" + std::to_string(b.n2) + "x" +
        std::to_string(b.channels));
  }
}

double inner(const GridImage& a, const GridImage& b) {
  require_same_shape(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) s += a.data[k] * b.data[k];
  return s;
}

double inner(const VecField& a, const VecField& b) {
  return inner(a.w1, b.w1) + inner(a.w2, b.w2);
}

double inner(const TensorField& a, const TensorField& b) {
  return inner(a.v1, b.v1) + inner(a.v2, b.v2) + inner(a.v3, b.v3);
}

GridImage rotate90(const GridImage& u) {
  if (u.kind != GridKind::Center) {
    throw std::invalid_argument(std::string("unsupported-kind: rotate90 expects a Center image, got ") +
                                grid_kind_name(u.kind));
  }
  GridImage out = new_image(GridKind::Center, u.n2, u.n1, u.channels);
  const int R = out.rows(), C = out.cols();
  for (int c = 0; c < u.channels; ++c)
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < C; ++j)
        out.at(i, j, c) = u.at(j, u.cols() - 1 - i, c);
  return out;
}

}  // namespace tgv
