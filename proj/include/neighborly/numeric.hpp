#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "neighborly/error.hpp"

namespace neighborly {

/// Coordinates in R^d. Sites, Voronoi vertices and directions all use it.
using Point = Eigen::VectorXd;

inline constexpr int kMaxDimension = 16;

/// Arithmetic used to evaluate predicate determinants. Coordinates are
/// always produced in double; `Extended` re-evaluates the determinant in a
/// 113-bit-mantissa software float.
enum class Precision { Standard, Extended };

/// Tier selected by the NEIGHBORLY_PRECISION environment variable
/// ("standard" or "extended"); standard when unset. Other values throw
/// InvalidArgument.
Precision default_precision();

std::optional<Precision> parse_precision(const std::string& name);
std::string to_string(Precision p);

/// Unit roundoff of the given tier.
double unit_roundoff(Precision precision);

/// Sign decisions treat |x| <= eps_abs + eps_rel * scale as zero.
struct TolerancePolicy {
  double eps_rel = 1e-9;
  double eps_abs = 1e-12;

  void validate() const;
  bool is_zero(double value, double scale) const { return std::abs(value) <= band(scale); }
  double band(double scale) const { return eps_abs + eps_rel * scale; }
};

/// Halfspace convention: normal . x <= offset, with |normal| = 1.
struct Hyperplane {
  Point normal;
  double offset = 0.0;

  /// Normalizes (normal, offset); throws DegenerateSimplex on a zero normal.
  static Hyperplane from(const Point& normal, double offset);

  /// Halfspace of points at least as close to `own` as to `other`.
  static Hyperplane bisector(const Point& own, const Point& other);

  double slack(const Point& x) const { return offset - normal.dot(x); }
  int dimension() const { return static_cast<int>(normal.size()); }
};

struct Sphere {
  Point center;
  double radius = 0.0;
};

/// Affine flat: anchor + span(basis). An empty basis is a single point.
struct Flat {
  Point anchor;
  std::vector<Point> basis;
};

/// Sign of det[p_1 - p_0, ..., p_d - p_0]: +1 for a counterclockwise
/// triangle in the plane, 0 inside the tolerance band (Hadamard-scaled).
int orientation(std::span<const Point> pts, const TolerancePolicy& tol = {},
                Precision precision = Precision::Standard);

/// +1 when q is strictly outside the circumsphere of the d+1 points, -1
/// strictly inside, 0 on it. The answer does not depend on point order.
int in_sphere(std::span<const Point> pts, const Point& q, const TolerancePolicy& tol = {},
              Precision precision = Precision::Standard);

Sphere circumcenter(std::span<const Point> pts, const TolerancePolicy& tol = {},
                    Precision precision = Precision::Standard);

/// Reflection through an affine flat (a point, a line, a plane, ...).
Point reflect(const Point& p, const Flat& flat, const TolerancePolicy& tol = {});

/// Orthogonal projection onto the flat.
Point project(const Point& p, const Flat& flat);

/// Number of singular values of the row-difference matrix above
/// `threshold`; the affine dimension of a point cloud (-1 when empty).
int affine_rank(std::span<const Point> pts, double threshold);

}  // namespace neighborly
