#include "doctest.h"

#include <random>
#include <stdexcept>

#include "tgv/grid.hpp"

using namespace tgv;

namespace {

GridImage random_image(GridKind kind, int n1, int n2, int channels,
                       std::mt19937_64& rng) {
  GridImage img = new_image(kind, n1, n2, channels);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& x : img.data) x = dist(rng);
  return img;
}

}  // namespace

TEST_CASE("storage shapes for all six lattices over a 3x4 base grid") {
  CHECK(grid_rows(GridKind::Center, 3) == 3);
  CHECK(grid_cols(GridKind::Center, 4) == 4);
  CHECK(grid_rows(GridKind::HorizEdge, 3) == 4);
  CHECK(grid_cols(GridKind::HorizEdge, 4) == 4);
  CHECK(grid_rows(GridKind::VertEdge, 3) == 3);
  CHECK(grid_cols(GridKind::VertEdge, 4) == 5);
  CHECK(grid_rows(GridKind::CenterExtX, 3) == 5);
  CHECK(grid_cols(GridKind::CenterExtX, 4) == 4);
  CHECK(grid_rows(GridKind::CenterExtY, 3) == 3);
  CHECK(grid_cols(GridKind::CenterExtY, 4) == 6);
  CHECK(grid_rows(GridKind::Corner, 3) == 4);
  CHECK(grid_cols(GridKind::Corner, 4) == 5);
}

TEST_CASE("new_image fills and validates") {
  GridImage z = new_image(GridKind::Center, 3, 3);
  CHECK(z.data.size() == 9);
  for (double x : z.data) CHECK(x == 0.0);

  GridImage h = new_image(GridKind::HorizEdge, 3, 3);
  CHECK(h.rows() == 4);
  CHECK(h.cols() == 3);

  GridImage ones = new_image(GridKind::Corner, 2, 2, 1, 1.0);
  CHECK(ones.rows() == 3);
  CHECK(ones.cols() == 3);
  for (double x : ones.data) CHECK(x == 1.0);

  CHECK_THROWS_WITH_AS(new_image(GridKind::Center, 1, 5),
                       doctest::Contains("dimension-too-small"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(new_image(GridKind::Center, 5, 1),
                       doctest::Contains("dimension-too-small"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(new_image(GridKind::Center, 5, 5, 0),
                       doctest::Contains("dimension-too-small"),
                       std::invalid_argument);
}

TEST_CASE("inner of trivial fields") {
  GridImage z = new_image(GridKind::Center, 4, 4);
  GridImage o = new_image(GridKind::Center, 4, 4, 1, 1.0);
  CHECK(inner(z, o) == 0.0);

  GridImage a = new_image(GridKind::Center, 2, 2, 1, 1.0);
  CHECK(inner(a, a) == 4.0);
}

TEST_CASE("inner matches a scalar-loop oracle on a random 5x4 pair") {
  std::mt19937_64 rng(7);
  GridImage a = random_image(GridKind::Center, 5, 4, 2, rng);
  GridImage b = random_image(GridKind::Center, 5, 4, 2, rng);
  double expect = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 4; ++j) expect += a.at(i, j, c) * b.at(i, j, c);
  CHECK(inner(a, b) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("inner is symmetric and bilinear") {
  std::mt19937_64 rng(11);
  GridImage a = random_image(GridKind::Corner, 3, 5, 1, rng);
  GridImage b = random_image(GridKind::Corner, 3, 5, 1, rng);
  GridImage c = random_image(GridKind::Corner, 3, 5, 1, rng);
  CHECK(inner(a, b) == inner(b, a));
  GridImage combo = b;
  for (std::size_t k = 0; k < combo.data.size(); ++k)
    combo.data[k] = 2.0 * b.data[k] + 3.0 * c.data[k];
  CHECK(inner(a, combo) ==
        doctest::Approx(2.0 * inner(a, b) + 3.0 * inner(a, c)).epsilon(1e-12));
}

TEST_CASE("inner rejects mismatched shapes") {
  GridImage a = new_image(GridKind::Center, 3, 3);
  GridImage b = new_image(GridKind::Center, 3, 4);
  GridImage c = new_image(GridKind::Corner, 3, 3);
  CHECK_THROWS_WITH_AS(inner(a, b), doctest::Contains("shape-mismatch"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(inner(a, c), doctest::Contains("shape-mismatch"),
                       std::invalid_argument);
}

TEST_CASE("rotate90 moves a 2x2 impulse as the coordinate map dictates") {
  // output(n1, n2) = u(n2, N2 - n1 + 1): the unit mass at u(1,1) must land
  // at output(2, 1).
  GridImage u = new_image(GridKind::Center, 2, 2);
  u.at(0, 0) = 1.0;
  GridImage r = rotate90(u);
  CHECK(r.at(0, 0) == 0.0);
  CHECK(r.at(0, 1) == 0.0);
  CHECK(r.at(1, 0) == 1.0);
  CHECK(r.at(1, 1) == 0.0);
}

TEST_CASE("rotate90 of a constant transposes the dimensions") {
  GridImage u = new_image(GridKind::Center, 3, 5, 2, 0.75);
  GridImage r = rotate90(u);
  CHECK(r.n1 == 5);
  CHECK(r.n2 == 3);
  CHECK(r.channels == 2);
  for (double x : r.data) CHECK(x == 0.75);
}

TEST_CASE("four quarter turns are the identity, exactly") {
  std::mt19937_64 rng(23);
  GridImage u = random_image(GridKind::Center, 3, 5, 2, rng);
  GridImage r = rotate90(rotate90(rotate90(rotate90(u))));
  REQUIRE(r.same_shape(u));
  for (std::size_t k = 0; k < u.data.size(); ++k) CHECK(r.data[k] == u.data[k]);
}

TEST_CASE("rotate90 rejects non-center lattices") {
  GridImage w = new_image(GridKind::HorizEdge, 3, 3);
  CHECK_THROWS_WITH_AS(rotate90(w), doctest::Contains("unsupported-kind"),
                       std::invalid_argument);
}
