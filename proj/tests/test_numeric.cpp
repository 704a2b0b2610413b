#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "neighborly/curves.hpp"
#include "neighborly/numeric.hpp"

using namespace neighborly;

namespace {

Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

int code_of(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return static_cast<int>(e.code());
  }
  return -1;
}

}  // namespace

TEST_CASE("orientation of a counterclockwise triangle") {
  std::vector<Point> tri{vec({0, 0}), vec({1, 0}), vec({0, 1})};
  CHECK(orientation(tri) == 1);
  std::swap(tri[1], tri[2]);
  CHECK(orientation(tri) == -1);
  std::vector<Point> line{vec({0, 0}), vec({1, 1}), vec({2, 2})};
  CHECK(orientation(line) == 0);
}

TEST_CASE("orientation of four helix sites matches the high-precision value") {
  // det = 6.2831853071795864769 (50-digit evaluation), positive
  const HelixFamilySpec spec{4, 1};
  std::vector<Point> pts;
  for (int t = 0; t < 4; ++t) pts.push_back(helix_point(spec, t));
  CHECK(orientation(pts) == 1);
  CHECK(orientation(pts, {}, Precision::Extended) == 1);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) m.row(i) = (pts[i + 1] - pts[0]).transpose();
  CHECK(m.determinant() == doctest::Approx(6.2831853071795864769).epsilon(1e-12));
}

TEST_CASE("in_sphere is symmetric under vertex permutation") {
  const HelixFamilySpec spec{8, 1};
  std::vector<Point> pts;
  for (int t = 0; t < 4; ++t) pts.push_back(helix_point(spec, t));
  const Point q = helix_point(spec, 4);
  // |q - c| - r = 0.163003657 > 0: strictly outside
  CHECK(in_sphere(pts, q) == 1);
  std::swap(pts[0], pts[3]);
  CHECK(in_sphere(pts, q) == 1);
  std::swap(pts[1], pts[2]);
  CHECK(in_sphere(pts, q, {}, Precision::Extended) == 1);

  std::vector<Point> square{vec({1, 0}), vec({0, 1}), vec({-1, 0})};
  CHECK(in_sphere(square, vec({0, -1})) == 0);
  CHECK(in_sphere(square, vec({0, 0})) == -1);
  CHECK(in_sphere(square, vec({3, 3})) == 1);
}

TEST_CASE("circumcenter of four helix sites") {
  const HelixFamilySpec spec{4, 1};
  std::vector<Point> pts;
  for (int t : {0, 1, 3, 4}) pts.push_back(helix_point(spec, t));
  const Sphere s = circumcenter(pts);
  // (pi, 3 pi^2 / 8, 0)
  CHECK(s.center[0] == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(s.center[1] == doctest::Approx(3.7011016504085094821).epsilon(1e-12));
  CHECK(std::abs(s.center[2]) < 1e-12);
  for (const auto& p : pts) CHECK((p - s.center).norm() == doctest::Approx(s.radius).epsilon(1e-12));
  const Sphere e = circumcenter(pts, {}, Precision::Extended);
  CHECK((e.center - s.center).norm() < 1e-12);
}

TEST_CASE("circumcenter of a degenerate simplex throws") {
  std::vector<Point> line{vec({0, 0}), vec({1, 1}), vec({2, 2})};
  CHECK(code_of([&] { circumcenter(line); }) == static_cast<int>(ErrorCode::DegenerateSimplex));
}

TEST_CASE("hyperplane bisector") {
  const Hyperplane h = Hyperplane::bisector(vec({0, 0, 0}), vec({2, 0, 0}));
  CHECK(h.normal.norm() == doctest::Approx(1.0));
  CHECK(h.offset == doctest::Approx(1.0));
  CHECK(h.slack(vec({0, 5, 5})) > 0);
  CHECK(h.slack(vec({1, 7, -3})) == doctest::Approx(0.0));
  CHECK(code_of([] { Hyperplane::from(Point::Zero(3), 1.0); }) == static_cast<int>(ErrorCode::DegenerateSimplex));
}

TEST_CASE("reflection through flats of every dimension") {
  const Point p = vec({1, 2, 3});
  const Flat point{vec({0, 0, 0}), {}};
  CHECK((reflect(p, point) + p).norm() < 1e-15);
  const Flat axis{vec({0, 0, 0}), {vec({1, 0, 0})}};
  CHECK((reflect(p, axis) - vec({1, -2, -3})).norm() < 1e-15);
  const Flat plane{vec({0, 0, 1}), {vec({1, 0, 0}), vec({0, 1, 0})}};
  CHECK((reflect(p, plane) - vec({1, 2, -1})).norm() < 1e-15);
  // involution
  CHECK((reflect(reflect(p, plane), plane) - p).norm() < 1e-14);
  const Flat skew{vec({0, 0, 0}), {vec({1, 1, 0})}};
  CHECK(code_of([&] { reflect(p, skew); }) == static_cast<int>(ErrorCode::NonOrthonormalBasis));
  CHECK(code_of([&] { reflect(vec({1, 2}), plane); }) == static_cast<int>(ErrorCode::DimensionMismatch));
}

TEST_CASE("affine rank") {
  std::vector<Point> pts{vec({0, 0, 0}), vec({1, 0, 0}), vec({2, 0, 0})};
  CHECK(affine_rank(pts, 1e-9) == 1);
  pts.push_back(vec({0, 1, 0}));
  CHECK(affine_rank(pts, 1e-9) == 2);
  pts.push_back(vec({0, 0, 1}));
  CHECK(affine_rank(pts, 1e-9) == 3);
  CHECK(affine_rank(std::span<const Point>{}, 1e-9) == -1);
}

TEST_CASE("tolerance policy validation") {
  CHECK_NOTHROW(TolerancePolicy{}.validate());
  CHECK_THROWS_AS((TolerancePolicy{0.0, 1e-12}.validate()), GeometryError);
  CHECK_THROWS_AS((TolerancePolicy{1e-9, -1.0}.validate()), GeometryError);
  CHECK_THROWS_AS((TolerancePolicy{std::nan(""), 0.0}.validate()), GeometryError);
  const TolerancePolicy tol{1e-9, 1e-12};
  CHECK(tol.is_zero(5e-10, 1.0));
  CHECK_FALSE(tol.is_zero(2e-9, 1.0));
}

TEST_CASE("precision tiers") {
  CHECK(parse_precision("standard") == Precision::Standard);
  CHECK(parse_precision("extended") == Precision::Extended);
  CHECK_FALSE(parse_precision("quad").has_value());
  CHECK(to_string(Precision::Extended) == "extended");
  CHECK(unit_roundoff(Precision::Extended) < unit_roundoff(Precision::Standard));

  ::setenv("NEIGHBORLY_PRECISION", "extended", 1);
  CHECK(default_precision() == Precision::Extended);
  ::setenv("NEIGHBORLY_PRECISION", "fast", 1);
  CHECK_THROWS_AS(default_precision(), GeometryError);
  ::unsetenv("NEIGHBORLY_PRECISION");
  CHECK(default_precision() == Precision::Standard);
}

TEST_CASE("extended tier agrees with the standard tier on clear-cut signs") {
  const HelixFamilySpec spec{7, 1};
  for (int a = 0; a < 7; ++a) {
    std::vector<Point> pts;
    for (int t : {a, a + 1, a + 3, a + 4}) pts.push_back(helix_point(spec, t));
    for (int q = -7; q <= 14; ++q) {
      if (q == a || q == a + 1 || q == a + 3 || q == a + 4) continue;
      const Point x = helix_point(spec, q);
      CHECK(in_sphere(pts, x) == in_sphere(pts, x, {}, Precision::Extended));
    }
  }
}
