#include <gtest/gtest.h>

#include <string>

#include "sigma/shape_io.hpp"

using namespace sigma;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_shape(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ShapeIo, RoundTripsEveryKind) {
  GraphHypersurface graph;
  graph.terms = 4;
  graph.window_lo = -0.75;
  const std::vector<Shape> shapes = {
      Ball{2, {0.25, -1.0 / 3.0, 0.0}, 1.5},
      Ball{3, {1, 2, 3}, 0.1},
      Ellipse{2, {2.0, 0.5, 1.0}},
      Ellipse{3, {2.0, 0.5, 0.25}},
      Box{2, {1.0, 2.0, 1.0}},
      Box{2, {1.0, 2.0, 1.0}}.to_polytope(),
      make_random_polytope(9, 4, 2),
      make_random_polytope(12, 8, 3),
      offset_body(Box{2, {1, 1, 1}}.to_polytope(), 0.5),
      offset_body(make_random_polytope(128, 1, 2), 0.2),
      graph,
  };
  for (const Shape& s : shapes) {
    const std::string text = serialize_shape(s);
    const Shape back = parse_shape(text);
    EXPECT_TRUE(back == s) << text;
    EXPECT_EQ(serialize_shape(back), text);
  }
}

TEST(ShapeIo, RandomPolytopeStoredAsGenerator) {
  const std::string text = serialize_shape(make_random_polytope(64, 7, 2));
  EXPECT_NE(text.find("n_facets = 64"), std::string::npos);
  EXPECT_EQ(text.find("halfspace"), std::string::npos);
}

TEST(ShapeIo, ParsesHandWrittenSquare) {
  const Shape s = parse_shape(
      "# unit square\n"
      "kind = polytope\n"
      "dim = 2\n"
      "halfspace = 1 0 1\n"
      "halfspace = 0 1 1\n"
      "halfspace = -1 0 1\n"
      "halfspace = 0 -1 1\n");
  ASSERT_TRUE(std::holds_alternative<ConvexPolytope>(s));
  EXPECT_NEAR(std::get<ConvexPolytope>(s).inradius(), 1.0, 1e-12);
}

TEST(ShapeIo, ErrorsNameTheLine) {
  EXPECT_NE(error_of("kind = ball\ndim = 2\ncenter = 0 0\nradius = -1\n").find("line 4"), std::string::npos);
  EXPECT_NE(error_of("kind = ball\ndim = 2\ncenter = 0 0\nradius = 1\ncolour = red\n").find("line 5"),
            std::string::npos);
  EXPECT_NE(error_of("kind = ball\ndim = 2\ncenter = 0 0\nradius = 1\nradius = 2\n").find("line 5"),
            std::string::npos);
  EXPECT_NE(error_of("kind = ball\ndim 2\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("kind = ball\ndim = 2\ncenter = 0 x\nradius = 1\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("kind = polytope\ndim = 2\nhalfspace = 1 0 1\nhalfspace = 0 1\n").find("line 4"),
            std::string::npos);
  EXPECT_NE(error_of("kind = blob\ndim = 2\n").find("line 1"), std::string::npos);
  EXPECT_EQ(error_of("kind = ball\ndim = 2\ncenter = 0 0\nradius = 1\n"), "");
}

TEST(ShapeIo, InvalidGeometryRejected) {
  // Unbounded polytope parses but fails validation.
  EXPECT_THROW(parse_shape("kind = polytope\ndim = 2\nhalfspace = 1 0 1\nhalfspace = 0 1 1\nhalfspace = -1 0 1\n"),
               Error);
  EXPECT_THROW(parse_shape("kind = offset\ndim = 2\nepsilon = 0\nbase.kind = box\nbase.extents = 1 1\n"), Error);
  EXPECT_THROW(parse_shape("kind = graph\ndim = 2\nalpha = 1.5\nbase = 4\nterms = 2\nwindow = -1 1\n"), Error);
}
